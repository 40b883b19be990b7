#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "rca/csv.hpp"
#include "rca/embedded.hpp"
#include "rca/measure.hpp"

namespace rca {

Measure::Measure(std::string id, std::string display, Expr body, std::string source)
    : id_(std::move(id)),
      display_(std::move(display)),
      source_(std::move(source)),
      expr_(std::move(body)) {
  smooth_ = expr_->is_smooth();
}

Measure::Measure(std::string id, std::string display, NativeMeasure body, std::string source)
    : id_(std::move(id)),
      display_(std::move(display)),
      source_(std::move(source)),
      native_(body),
      smooth_(false) {
  if (native_.eval == nullptr || native_.eval_hp == nullptr) {
    throw std::invalid_argument("native measure '" + id_ + "' has no evaluator");
  }
}

std::string Measure::definition() const { return expr_ ? expr_->to_string() : "NATIVE"; }

bool Measure::depends_on(Cell c) const { return expr_ ? expr_->depends_on(c) : true; }

bool Measure::smooth_in(Cell c) const { return expr_ ? expr_->is_smooth_in(c) : false; }

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

}  // namespace

Catalog Catalog::parse(std::string_view text) {
  Catalog cat;
  cat.text_ = std::string(text);
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t bar = line.find('|', start);
      if (bar == std::string::npos) break;
      fields.push_back(trim(std::string_view(line).substr(start, bar - start)));
      start = bar + 1;
    }
    fields.push_back(trim(std::string_view(line).substr(start)));
    if (fields.size() != 4 || fields[0].empty() || fields[2].empty()) {
      throw CsvError(line_no, "catalog rows need 'id | display | definition | source'");
    }
    if (!seen.insert(fields[0]).second) {
      throw CsvError(line_no, "duplicate measure id '" + fields[0] + "'");
    }
    if (fields[2] == "NATIVE") {
      auto native = find_native(fields[0]);
      if (!native) throw CsvError(line_no, "no native evaluator for '" + fields[0] + "'");
      cat.measures_.emplace_back(fields[0], fields[1], *native, fields[3]);
    } else {
      try {
        cat.measures_.emplace_back(fields[0], fields[1], parse_expr(fields[2]), fields[3]);
      } catch (const ParseError& e) {
        throw CsvError(line_no, "measure '" + fields[0] + "': " + e.what());
      }
    }
  }
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = parse(embedded_file("catalog.txt"));
  return cat;
}

const Measure* Catalog::find(std::string_view id) const {
  for (const auto& m : measures_) {
    if (m.id() == id) return &m;
  }
  return nullptr;
}

const Measure& Catalog::at(std::string_view id) const {
  if (const Measure* m = find(id)) return *m;
  throw std::out_of_range("unknown measure '" + std::string(id) + "'");
}

std::size_t Catalog::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    if (measures_[i].id() == id) return i;
  }
  throw std::out_of_range("unknown measure '" + std::string(id) + "'");
}

std::string Catalog::version() const { return content_hash(text_); }

}  // namespace rca
