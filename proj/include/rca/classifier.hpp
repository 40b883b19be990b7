#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rca/calculus.hpp"
#include "rca/measure.hpp"

namespace rca {

/// Y = satisfied, P = partially satisfied, N = not satisfied. Inconclusive cells (no
/// feasible context, or an undecidable ladder and no violation) print as '?'.
enum class Label { Y, P, N, inconclusive };

[[nodiscard]] char label_char(Label l) noexcept;
/// Accepts "Y", "P", "N" or "?"; throws std::invalid_argument otherwise.
[[nodiscard]] Label parse_label(std::string_view text);

/// Candidate values of the three fixed cells and the limit configuration. A context is
/// admitted when it has at most `max_zero_cells` zeros; the limit probes then drop
/// contexts where the measure or its derivative is not computable.
struct ProbeGrid {
  std::vector<double> values{0, 1, 5, 10, 100, 1000, 1e6};
  int max_zero_cells = 2;
  LimitConfig limits;

  /// All admitted contexts for `cell`, in lexicographic order of the other three cells
  /// taken in (f11, f10, f01, f00) order. The entry for `cell` is 0.
  [[nodiscard]] std::vector<Counts<double>> contexts(Cell cell) const;
};

/// Aggregate of one (measure, cell, property) probe run.
struct CellResult {
  Label label = Label::inconclusive;
  std::size_t contexts = 0;    // admitted by the grid
  std::size_t feasible = 0;    // survived the feasibility filter
  std::size_t satisfied = 0;   // limit zero (UNAI) or wanted sign (UNZR)
  std::size_t neutral = 0;     // UNZR only: limit exactly zero
  std::size_t violating = 0;   // UNAI nonzero/divergent; UNZR wrong sign
  std::size_t undecided = 0;   // feasible but the ladder verdict is undefined
  /// First violating (else first undecided) context and its limit estimate.
  bool has_witness = false;
  Counts<double> witness_context{};
  LimitEstimate witness;

  [[nodiscard]] std::string digest() const;
};

[[nodiscard]] CellResult classify_unai(const Measure& m, Cell cell, const ProbeGrid& grid);
[[nodiscard]] CellResult classify_unzr(const Measure& m, Cell cell, const ProbeGrid& grid);

/// One row of the classification table. Arrays are indexed by Cell.
struct RcaClassification {
  std::string measure;
  std::array<CellResult, 4> unai;
  std::array<CellResult, 4> unzr;
  Label overall_unai = Label::inconclusive;
  Label overall_unzr = Label::inconclusive;

  [[nodiscard]] Label unai_label(Cell c) const { return unai[static_cast<std::size_t>(c)].label; }
  [[nodiscard]] Label unzr_label(Cell c) const { return unzr[static_cast<std::size_t>(c)].label; }
  /// The ten labels in table order: UNAI f11, f00, f10, f01, overall, then UNZR likewise.
  [[nodiscard]] std::array<Label, 10> labels() const;
  [[nodiscard]] bool inconclusive() const;
};

/// Y iff all four are Y; inconclusive if any is inconclusive and none is N; N otherwise.
[[nodiscard]] Label aggregate_unai(const std::array<Label, 4>& cells);
/// Y iff all Y; P iff all in {Y, P}; N if any N; inconclusive otherwise.
[[nodiscard]] Label aggregate_unzr(const std::array<Label, 4>& cells);

[[nodiscard]] RcaClassification classify_measure(const Measure& m, const ProbeGrid& grid);

enum class Execution { serial, parallel };

/// One row per catalog measure in catalog order. The parallel path spreads the
/// (measure, cell) probe runs over OpenMP threads; results are identical to serial.
[[nodiscard]] std::vector<RcaClassification> classify_catalog(
    const Catalog& catalog, const ProbeGrid& grid, Execution exec = Execution::parallel);

/// Table-shaped CSV: measure, UNAI_f11, UNAI_f00, UNAI_f10, UNAI_f01, UNAI, UNZR_f11, ...
void write_classification_csv(std::ostream& out, const std::vector<RcaClassification>& rows);

/// Expected labels keyed by measure id (same CSV schema as write_classification_csv).
struct ExpectedRow {
  std::string measure;
  std::array<Label, 10> labels;
};
[[nodiscard]] std::vector<ExpectedRow> read_classification_csv(std::istream& in);

[[nodiscard]] const std::array<std::string, 10>& classification_columns();

/// Per-cell evidence of one measure as CSV: property, cell, context, point, derivative,
/// measure value, stencil, for the witness context of every cell.
void write_evidence_csv(std::ostream& out, const RcaClassification& row);

}  // namespace rca
