#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rca/classifier.hpp"
#include "rca/contingency.hpp"
#include "rca/measure.hpp"

namespace rca {

/// The eight classic properties: P1-P3 and the five operational properties O1, O2, O3,
/// O3' (inversion invariance) and O4 (null invariance).
enum class ClassicProperty { p1, p2, p3, o1, o2, o3, o3_prime, o4 };

inline constexpr std::array<ClassicProperty, 8> kClassicProperties = {
    ClassicProperty::p1, ClassicProperty::p2, ClassicProperty::p3, ClassicProperty::o1,
    ClassicProperty::o2, ClassicProperty::o3, ClassicProperty::o3_prime, ClassicProperty::o4};

/// "P1", "P2", "P3", "O1", "O2", "O3", "O3'", "O4".
[[nodiscard]] std::string_view property_name(ClassicProperty p) noexcept;
[[nodiscard]] ClassicProperty parse_property(std::string_view name);

/// A violation: the table(s) whose values break the property, replayable with evaluate().
struct Counterexample {
  std::vector<ContingencyTable> tables;  // the original first, then transformed/path tables
  std::vector<double> values;            // measure value on each table
  std::string reason;
};

struct PropertyVerdict {
  Label satisfied = Label::N;  // Y or N
  std::optional<Counterexample> counterexample;  // present iff N
};

struct ClassicConfig {
  /// Tables checked by O1-O4 and used as P2/P3 path starts.
  std::vector<ContingencyTable> generators;
  /// Tables with f11 f00 = f10 f01, checked by P1.
  std::vector<ContingencyTable> independent;
  std::uint64_t seed = 42;       // scale factor and null count sampling
  int samples_per_table = 3;     // sampled factor sets per generator table
  int path_steps = 4;            // steps per P2/P3 path
  double relative_tolerance = 1e-9;

  /// Generator and independence tables shipped with the library.
  [[nodiscard]] static ClassicConfig builtin();
};

/// Relative equality with tolerance `tol`; infinities must match exactly; undefined never
/// compares equal.
[[nodiscard]] bool nearly_equal(double a, double b, double tol);

[[nodiscard]] PropertyVerdict check_p1(const Measure& m, const ClassicConfig& cfg);
[[nodiscard]] PropertyVerdict check_p2(const Measure& m, const ClassicConfig& cfg);
[[nodiscard]] PropertyVerdict check_p3(const Measure& m, const ClassicConfig& cfg);
/// `which` must be one of O1, O2, O3, O3', O4.
[[nodiscard]] PropertyVerdict check_o(const Measure& m, ClassicProperty which,
                                      const ClassicConfig& cfg);
[[nodiscard]] PropertyVerdict check_property(const Measure& m, ClassicProperty p,
                                             const ClassicConfig& cfg);

struct ClassicPropertyReport {
  std::string measure;
  std::array<PropertyVerdict, 8> verdicts;  // indexed like kClassicProperties

  [[nodiscard]] const PropertyVerdict& operator[](ClassicProperty p) const {
    return verdicts[static_cast<std::size_t>(p)];
  }
};

[[nodiscard]] ClassicPropertyReport check_classic(const Measure& m, const ClassicConfig& cfg);
[[nodiscard]] std::vector<ClassicPropertyReport> check_catalog(const Catalog& catalog,
                                                               const ClassicConfig& cfg);

/// Counts of measures per (classic state x RCA state). Rows: Y, N. Columns: Y, N for UNAI
/// columns and Y, P, N for UNZR columns (plus '?' if any label is inconclusive).
struct CrossTab {
  ClassicProperty property = ClassicProperty::p1;
  std::vector<char> columns;
  std::array<std::vector<int>, 2> counts;  // [0] satisfied row, [1] not satisfied row
};

[[nodiscard]] CrossTab crosstab(const std::vector<ClassicPropertyReport>& classic,
                                const std::vector<RcaClassification>& rca,
                                ClassicProperty property, bool unzr);

/// Table-shaped CSV with one block of two rows per property:
/// property,state,UNAI_Y,UNAI_N,UNZR_Y,UNZR_P,UNZR_N
void write_crosstab_csv(std::ostream& out, const std::vector<ClassicPropertyReport>& classic,
                        const std::vector<RcaClassification>& rca);

/// Per-measure verdict CSV: measure,P1,...,O4 with Y/N cells.
void write_classic_csv(std::ostream& out, const std::vector<ClassicPropertyReport>& reports);

}  // namespace rca
