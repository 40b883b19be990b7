#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rca/classifier.hpp"
#include "rca/contingency.hpp"
#include "rca/measure.hpp"

namespace rca {

/// Average ranks of `values`, largest value first (rank 1). Undefined entries stay
/// undefined and do not take part in the ranking.
[[nodiscard]] std::vector<double> average_ranks(const std::vector<double>& values);

/// Measures x rules. Each row keeps the raw values (for pairwise re-ranking) and their
/// average ranks; undefined values are masked as NaN.
struct RankMatrix {
  std::vector<std::string> measures;
  std::size_t rules = 0;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> ranks;
  std::vector<std::size_t> defined;  // per measure

  /// Measures undefined on every rule.
  [[nodiscard]] std::vector<std::string> fully_masked() const;
};

/// Throws std::invalid_argument for fewer than 2 rules.
[[nodiscard]] RankMatrix rank_rules(const std::vector<ContingencyTable>& rules,
                                    const Catalog& catalog,
                                    Execution exec = Execution::parallel);

/// Pearson correlation of two equally long vectors; NaN when either is constant.
[[nodiscard]] double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman rho over the rules where both rows are defined, re-ranked within that subset.
/// NaN when fewer than `min_overlap` rules are shared or a ranking is constant.
[[nodiscard]] double spearman(const RankMatrix& rm, std::size_t i, std::size_t j,
                              std::size_t min_overlap = 3);

/// Symmetric measures x measures matrix with unit diagonal; NaN marks missing entries.
struct CorrelationMatrix {
  std::vector<std::string> measures;
  std::vector<double> rho;  // row-major

  [[nodiscard]] std::size_t size() const noexcept { return measures.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return rho[i * measures.size() + j];
  }
};

[[nodiscard]] CorrelationMatrix spearman_matrix(const RankMatrix& rm,
                                                Execution exec = Execution::parallel,
                                                std::size_t min_overlap = 3);

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& m);
[[nodiscard]] CorrelationMatrix read_correlation_csv(std::istream& in);

/// A labeled partition of measures. Clusters are labeled A, B, ... by decreasing size;
/// equal sizes are ordered by their lexicographically smallest member.
struct ClusterAssignment {
  std::vector<std::string> labels;                 // "A", "B", ...
  std::vector<std::vector<std::string>> members;  // per label, in input order

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  /// Label of `measure`; throws std::out_of_range when absent.
  [[nodiscard]] const std::string& label_of(const std::string& measure) const;
  [[nodiscard]] std::map<std::string, std::string> by_measure() const;
  /// Builds the labeling from unlabeled blocks.
  [[nodiscard]] static ClusterAssignment from_blocks(std::vector<std::vector<std::string>> blocks);
};

/// Connected components of the graph with an edge wherever rho >= threshold. Missing
/// entries count as below threshold. Throws std::invalid_argument unless -1 < threshold < 1.
[[nodiscard]] ClusterAssignment cluster(const CorrelationMatrix& m, double threshold = 0.8);

/// Text form: one line per cluster, `A (21): id id ...`.
void write_clusters(std::ostream& out, const ClusterAssignment& ca);
[[nodiscard]] ClusterAssignment read_clusters(std::istream& in);

/// Cluster x label counts. Columns follow the tables in the order N, P, Y, with '?' added
/// when some measure is inconclusive.
struct ClusterCrossTab {
  std::string property;
  std::vector<char> columns;
  std::vector<std::string> clusters;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> counts;

  [[nodiscard]] std::size_t count(std::size_t cluster, char label) const;
};

/// `labels` maps measure id to its label; throws std::invalid_argument when a clustered
/// measure has no label.
[[nodiscard]] ClusterCrossTab property_crosstab(const ClusterAssignment& ca,
                                                const std::map<std::string, Label>& labels,
                                                std::string property);

/// Labels of one classification column ("UNZR_f11", "UNAI", ...) keyed by measure id.
[[nodiscard]] std::map<std::string, Label> label_column(const std::vector<ExpectedRow>& rows,
                                                        const std::string& column);

/// `cluster,size,N,P,Y[,?]`.
void write_cluster_crosstab_csv(std::ostream& out, const ClusterCrossTab& ct);

/// Fraction of measure pairs on which two partitions agree (together in both or apart in
/// both), over the measures present in both.
[[nodiscard]] double rand_index(const ClusterAssignment& a, const ClusterAssignment& b);
/// Rand index corrected for chance.
[[nodiscard]] double adjusted_rand_index(const ClusterAssignment& a, const ClusterAssignment& b);

/// Reference partitions keyed by dataset name, from `dataset,cluster,measure` rows.
[[nodiscard]] std::map<std::string, ClusterAssignment> read_partitions_csv(std::istream& in);
/// The reference partitions shipped with the library.
[[nodiscard]] const std::map<std::string, ClusterAssignment>& published_partitions();

}  // namespace rca
