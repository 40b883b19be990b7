#include "rca/contingency.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "rca/csv.hpp"

namespace rca {

std::string_view cell_name(Cell c) noexcept {
  switch (c) {
    case Cell::f11:
      return "f11";
    case Cell::f10:
      return "f10";
    case Cell::f01:
      return "f01";
    case Cell::f00:
      return "f00";
  }
  return "?";
}

Cell parse_cell(std::string_view name) {
  for (Cell c : kAllCells) {
    if (cell_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown cell '" + std::string(name) +
                              "' (expected f11, f10, f01 or f00)");
}

ContingencyTable::ContingencyTable(double f11, double f10, double f01, double f00)
    : counts_{f11, f10, f01, f00} {
  for (Cell c : kAllCells) {
    const double v = counts_[static_cast<std::size_t>(c)];
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("contingency count " + std::string(cell_name(c)) +
                                  " must be a finite non-negative number, got " +
                                  format_number(v));
    }
  }
  if (!(total() > 0.0)) {
    throw std::invalid_argument("contingency table must have a positive total");
  }
}

std::ostream& operator<<(std::ostream& os, const ContingencyTable& t) {
  return os << '(' << format_number(t.f11()) << ", " << format_number(t.f10()) << ", "
            << format_number(t.f01()) << ", " << format_number(t.f00()) << ')';
}

namespace {

struct TransformName {
  TransformKind kind;
  std::string_view name;
};

constexpr TransformName kTransformNames[] = {
    {TransformKind::swap_variables, "swap-variables"},
    {TransformKind::swap_rows, "swap-rows"},
    {TransformKind::swap_cols, "swap-cols"},
    {TransformKind::invert, "invert"},
    {TransformKind::scale_rows, "scale-rows"},
    {TransformKind::scale_cols, "scale-cols"},
    {TransformKind::add_null, "add-null"},
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be a positive finite number");
  }
}

}  // namespace

TransformKind parse_transform_kind(std::string_view name) {
  for (const auto& entry : kTransformNames) {
    if (entry.name == name) return entry.kind;
  }
  throw std::invalid_argument("unknown transform '" + std::string(name) + "'");
}

std::string_view transform_name(TransformKind kind) noexcept {
  for (const auto& entry : kTransformNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

ContingencyTable transform(const ContingencyTable& t, TransformKind kind,
                           TransformParams params) {
  const double f11 = t.f11(), f10 = t.f10(), f01 = t.f01(), f00 = t.f00();
  switch (kind) {
    case TransformKind::swap_variables:
      return {f11, f01, f10, f00};
    case TransformKind::swap_rows:
      return {f01, f00, f11, f10};
    case TransformKind::swap_cols:
      return {f10, f11, f00, f01};
    case TransformKind::invert:
      return {f00, f01, f10, f11};
    case TransformKind::scale_rows:
      require_positive(params.first, "row scale factor k1");
      require_positive(params.second, "row scale factor k2");
      return {params.first * f11, params.first * f10, params.second * f01,
              params.second * f00};
    case TransformKind::scale_cols:
      require_positive(params.first, "column scale factor l1");
      require_positive(params.second, "column scale factor l2");
      return {params.first * f11, params.second * f10, params.first * f01,
              params.second * f00};
    case TransformKind::add_null:
      if (!(params.first >= 0.0) || !std::isfinite(params.first)) {
        throw std::invalid_argument("null count k must be a finite non-negative number");
      }
      return {f11, f10, f01, f00 + params.first};
  }
  throw std::invalid_argument("unknown transform kind");
}

std::vector<ContingencyTable> read_tables_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.require_header({"f11", "f10", "f01", "f00"});
  std::vector<ContingencyTable> tables;
  std::vector<std::string> row;
  while (reader.next(row)) {
    Counts<double> c{};
    for (std::size_t i = 0; i < 4; ++i) c[i] = reader.number(row, header[i]);
    try {
      tables.emplace_back(c);
    } catch (const std::invalid_argument& e) {
      throw CsvError(reader.line(), e.what());
    }
  }
  return tables;
}

void write_tables_csv(std::ostream& out, const std::vector<ContingencyTable>& tables) {
  out << "f11,f10,f01,f00\n";
  for (const auto& t : tables) {
    out << format_number(t.f11()) << ',' << format_number(t.f10()) << ','
        << format_number(t.f01()) << ',' << format_number(t.f00()) << '\n';
  }
}

ContingencyTable parse_table(std::string_view text) {
  const auto fields = split_fields(text, ',');
  if (fields.size() != 4) {
    throw std::invalid_argument("table must be given as f11,f10,f01,f00; got '" +
                                std::string(text) + "'");
  }
  Counts<double> c{};
  for (std::size_t i = 0; i < 4; ++i) c[i] = parse_number(fields[i]);
  return ContingencyTable(c);
}

}  // namespace rca
