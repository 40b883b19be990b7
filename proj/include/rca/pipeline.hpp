#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rca/classifier.hpp"
#include "rca/miner.hpp"
#include "rca/rank.hpp"

namespace rca {

/// Label rows (the classification CSV schema) from classifier output.
[[nodiscard]] std::vector<ExpectedRow> label_rows(const std::vector<RcaClassification>& rows);

/// The published classification shipped with the library, keyed and ordered like the
/// catalog.
[[nodiscard]] const std::vector<ExpectedRow>& published_labels();

/// One classification cell that differs from a reference table.
struct Mismatch {
  std::string measure;
  std::size_t column = 0;  // index into classification_columns()
  Label expected = Label::inconclusive;
  Label got = Label::inconclusive;
  const CellResult* evidence = nullptr;  // per-cell columns only; points into the input
  Cell cell = Cell::f11;
};

/// Rows of `got` are matched to `expected` by measure id.
[[nodiscard]] std::vector<Mismatch> compare_labels(const std::vector<RcaClassification>& got,
                                                   const std::vector<ExpectedRow>& expected);

/// One line per mismatch with the witness context, its derivative ladder and the catalog
/// source note of the measure.
void write_mismatch_csv(std::ostream& out, const std::vector<Mismatch>& mismatches,
                        const Catalog& catalog);

/// Probe grid from a JSON object with any of the keys values, max_zero_cells,
/// infinity_ladder, zero_ladder, infinity_decay, zero_decay, stabilization,
/// monotone_slack, noise_floor. Missing keys keep their defaults.
[[nodiscard]] ProbeGrid probe_grid_from_json(const std::string& text);

/// One run of the clustering experiment: rules from a synthetic grid or a binarized
/// transaction file, then ranks, Spearman matrix, clusters and the property cross-tab.
struct ExperimentConfig {
  std::string preset = "sparse";  // sparse | dense; picks grid, filter and label column
  std::optional<std::filesystem::path> transactions;  // mine these instead of the grid
  MineOptions mine;
  double threshold = 0.8;
  /// Labels to cross-tabulate; computed with `grid` when empty.
  std::vector<ExpectedRow> labels;
  ProbeGrid grid;
  Execution exec = Execution::parallel;
  /// Reference partition name in published_partitions(); empty for none.
  std::string reference;
};

struct ExperimentResult {
  std::vector<Rule> rules;
  RankMatrix ranks;
  CorrelationMatrix rho;
  ClusterAssignment clusters;
  std::string column;  // UNZR_f11 for sparse, UNZR_f00 for dense
  ClusterCrossTab crosstab;
  std::vector<ExpectedRow> labels;
  std::optional<double> rand_index;
  std::optional<double> adjusted_rand_index;
  std::size_t mined_rules = 0;  // before the sparse/dense filter
};

[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Output files of an experiment by file name (rules.csv, rho.csv, clusters.txt,
/// crosstab.csv, labels.csv, summary.txt).
[[nodiscard]] std::map<std::string, std::string> experiment_outputs(const ExperimentResult& r);

}  // namespace rca
