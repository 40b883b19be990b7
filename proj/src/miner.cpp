#include "rca/miner.hpp"

#include <bit>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "rca/csv.hpp"

namespace rca {

TransactionMatrix::TransactionMatrix(std::vector<std::string> names,
                                     const std::vector<std::vector<int>>& rows)
    : names_(std::move(names)), rows_(rows.size()) {
  if (names_.size() < 2) throw std::invalid_argument("need at least 2 features");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate feature name '" + n + "'");
  }
  if (rows.empty()) throw std::invalid_argument("no transactions");
  const std::size_t words = (rows_ + 63) / 64;
  columns_.assign(names_.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    if (rows[r].size() != names_.size()) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) + " cells, expected " +
                                  std::to_string(names_.size()));
    }
    for (std::size_t j = 0; j < names_.size(); ++j) {
      const int v = rows[r][j];
      if (v != 0 && v != 1) {
        throw std::invalid_argument("row " + std::to_string(r + 1) + ", column '" + names_[j] +
                                    "': value " + std::to_string(v) + " is not 0 or 1");
      }
      if (v) columns_[j][r / 64] |= std::uint64_t{1} << (r % 64);
    }
  }
}

bool TransactionMatrix::at(std::size_t row, std::size_t feature) const {
  if (row >= rows_) throw std::out_of_range("row index out of range");
  return (columns_.at(feature)[row / 64] >> (row % 64)) & 1u;
}

TransactionMatrix read_transactions(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> names = reader.read_header();
  std::vector<std::vector<int>> rows;
  std::vector<std::string> row;
  while (reader.next(row)) {
    std::vector<int> cells(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == "0") {
        cells[j] = 0;
      } else if (row[j] == "1") {
        cells[j] = 1;
      } else {
        throw CsvError(reader.line(),
                       "column '" + names[j] + "': value '" + row[j] + "' is not 0 or 1");
      }
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw CsvError(reader.line(), "no transactions after the header");
  return TransactionMatrix(std::move(names), rows);
}

TransactionMatrix load_transactions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_transactions(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

namespace {

struct PairCounts {
  double f11, f10, f01, f00;
};

PairCounts count_serial(const TransactionMatrix& m, std::size_t a, std::size_t c) {
  PairCounts p{0, 0, 0, 0};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const bool x = m.at(r, a), y = m.at(r, c);
    if (x && y) {
      ++p.f11;
    } else if (x) {
      ++p.f10;
    } else if (y) {
      ++p.f01;
    } else {
      ++p.f00;
    }
  }
  return p;
}

PairCounts count_packed(const TransactionMatrix& m, std::size_t a, std::size_t c,
                        const std::vector<std::size_t>& ones) {
  const auto& ca = m.column(a);
  const auto& cc = m.column(c);
  std::size_t both = 0;
  for (std::size_t w = 0; w < ca.size(); ++w) both += std::popcount(ca[w] & cc[w]);
  const auto n = static_cast<double>(m.rows());
  const auto f11 = static_cast<double>(both);
  const auto f10 = static_cast<double>(ones[a]) - f11;
  const auto f01 = static_cast<double>(ones[c]) - f11;
  return {f11, f10, f01, n - f11 - f10 - f01};
}

bool keep(const PairCounts& p, double n, const MineOptions& opts) {
  if (opts.require_cooccurrence && p.f11 <= 0) return false;
  return p.f11 / n > opts.min_support;
}

}  // namespace

std::vector<Rule> mine_rules(const TransactionMatrix& m, MineOptions opts, Execution exec) {
  if (!(opts.min_support >= 0.0 && opts.min_support < 1.0)) {
    throw std::invalid_argument("min_support must lie in [0, 1)");
  }
  const std::size_t k = m.features();
  const auto n = static_cast<double>(m.rows());
  const auto pairs = static_cast<long>(k * k);
  std::vector<PairCounts> counts(k * k, PairCounts{0, 0, 0, 0});
  if (exec == Execution::parallel) {
    std::vector<std::size_t> ones(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::uint64_t w : m.column(j)) ones[j] += std::popcount(w);
    }
#pragma omp parallel for schedule(static)
    for (long p = 0; p < pairs; ++p) {
      const auto a = static_cast<std::size_t>(p) / k, c = static_cast<std::size_t>(p) % k;
      if (a != c) counts[static_cast<std::size_t>(p)] = count_packed(m, a, c, ones);
    }
  } else {
    for (long p = 0; p < pairs; ++p) {
      const auto a = static_cast<std::size_t>(p) / k, c = static_cast<std::size_t>(p) % k;
      if (a != c) counts[static_cast<std::size_t>(p)] = count_serial(m, a, c);
    }
  }
  std::vector<Rule> rules;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < k; ++c) {
      if (a == c) continue;
      const PairCounts& p = counts[a * k + c];
      if (!keep(p, n, opts)) continue;
      rules.push_back({m.names()[a], m.names()[c], ContingencyTable(p.f11, p.f10, p.f01, p.f00)});
    }
  }
  return rules;
}

std::vector<Rule> filter_sparse(const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  for (const auto& r : rules) {
    if (r.table.f11() < r.table.f00()) out.push_back(r);
  }
  return out;
}

std::vector<Rule> filter_dense(const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  for (const auto& r : rules) {
    if (r.table.f11() > r.table.f00()) out.push_back(r);
  }
  return out;
}

void write_rules_csv(std::ostream& out, const std::vector<Rule>& rules) {
  out << "antecedent,consequent,f11,f10,f01,f00\n";
  for (const auto& r : rules) {
    out << r.antecedent << ',' << r.consequent;
    for (Cell c : kAllCells) out << ',' << format_number(r.table[c]);
    out << '\n';
  }
}

std::vector<Rule> read_rules_csv(std::istream& in) {
  CsvReader reader(in);
  const auto idx = reader.require_header({"antecedent", "consequent", "f11", "f10", "f01", "f00"});
  std::vector<Rule> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    try {
      out.push_back({row[idx[0]], row[idx[1]],
                     ContingencyTable(reader.number(row, idx[2]), reader.number(row, idx[3]),
                                      reader.number(row, idx[4]), reader.number(row, idx[5]))});
    } catch (const CsvError&) {
      throw;
    } catch (const std::exception& e) {
      throw CsvError(reader.line(), e.what());
    }
  }
  return out;
}

std::vector<Rule> rules_from_tables(const std::vector<ContingencyTable>& tables) {
  std::vector<Rule> out;
  out.reserve(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string id = std::to_string(i + 1);
    out.push_back({"x" + id, "y" + id, tables[i]});
  }
  return out;
}

}  // namespace rca
