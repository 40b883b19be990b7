#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rca {

/// One of the four frequency counts of a 2x2 contingency table for a rule A -> B.
///
///            B      !B
///     A     f11    f10
///    !A     f01    f00
enum class Cell : std::size_t { f11 = 0, f10 = 1, f01 = 2, f00 = 3 };

inline constexpr std::array<Cell, 4> kAllCells = {Cell::f11, Cell::f10, Cell::f01, Cell::f00};

/// Column order used by the classification tables: f11, f00, f10, f01.
inline constexpr std::array<Cell, 4> kReportCells = {Cell::f11, Cell::f00, Cell::f10, Cell::f01};

[[nodiscard]] std::string_view cell_name(Cell c) noexcept;
/// Parses "f11", "f10", "f01" or "f00"; throws std::invalid_argument otherwise.
[[nodiscard]] Cell parse_cell(std::string_view name);

/// Raw counts in (f11, f10, f01, f00) order, unvalidated. Used by limit probes that
/// need to step through degenerate configurations.
template <class T>
using Counts = std::array<T, 4>;

/// Frequency counts of a rule. Counts are reals so limit probes can evaluate measures at
/// fractional or very large cell values; mined tables are integer-valued.
class ContingencyTable {
 public:
  /// Throws std::invalid_argument unless every count is finite and >= 0 and the total is > 0.
  ContingencyTable(double f11, double f10, double f01, double f00);
  explicit ContingencyTable(const Counts<double>& counts)
      : ContingencyTable(counts[0], counts[1], counts[2], counts[3]) {}

  [[nodiscard]] double f11() const noexcept { return counts_[0]; }
  [[nodiscard]] double f10() const noexcept { return counts_[1]; }
  [[nodiscard]] double f01() const noexcept { return counts_[2]; }
  [[nodiscard]] double f00() const noexcept { return counts_[3]; }
  [[nodiscard]] double operator[](Cell c) const noexcept {
    return counts_[static_cast<std::size_t>(c)];
  }
  [[nodiscard]] const Counts<double>& counts() const noexcept { return counts_; }

  [[nodiscard]] double total() const noexcept {
    return counts_[0] + counts_[1] + counts_[2] + counts_[3];
  }
  [[nodiscard]] double p_a() const noexcept { return (f11() + f10()) / total(); }
  [[nodiscard]] double p_b() const noexcept { return (f11() + f01()) / total(); }
  [[nodiscard]] double p_ab() const noexcept { return f11() / total(); }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  Counts<double> counts_;
};

[[nodiscard]] inline double total(const ContingencyTable& t) noexcept { return t.total(); }

std::ostream& operator<<(std::ostream& os, const ContingencyTable& t);

/// Structural table transforms used by the classic property checks.
enum class TransformKind {
  swap_variables,  // (f11, f01, f10, f00)
  swap_rows,       // (f01, f00, f11, f10)
  swap_cols,       // (f10, f11, f00, f01)
  invert,          // (f00, f01, f10, f11)
  scale_rows,      // (k1 f11, k1 f10, k2 f01, k2 f00)
  scale_cols,      // (l1 f11, l2 f10, l1 f01, l2 f00)
  add_null,        // (f11, f10, f01, f00 + k)
};

struct TransformParams {
  double first = 1.0;   // k1, l1 or the null count k
  double second = 1.0;  // k2, l2
};

/// Parses the kebab-case transform name ("swap-variables", "scale-rows", ...).
[[nodiscard]] TransformKind parse_transform_kind(std::string_view name);
[[nodiscard]] std::string_view transform_name(TransformKind kind) noexcept;

/// Applies a transform. Throws std::invalid_argument for non-positive scale factors or a
/// negative null count.
[[nodiscard]] ContingencyTable transform(const ContingencyTable& t, TransformKind kind,
                                         TransformParams params = {});

/// CSV row form `f11,f10,f01,f00` with a required header line.
[[nodiscard]] std::vector<ContingencyTable> read_tables_csv(std::istream& in);
void write_tables_csv(std::ostream& out, const std::vector<ContingencyTable>& tables);

/// Parses "a,b,c,d" (as used on the command line) into a table.
[[nodiscard]] ContingencyTable parse_table(std::string_view text);

}  // namespace rca
