#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rca/classifier.hpp"
#include "rca/contingency.hpp"

namespace rca {

/// Binary transaction data stored column-wise as packed bit vectors.
class TransactionMatrix {
 public:
  /// `rows[r][j]` is the presence of feature j in transaction r. Throws
  /// std::invalid_argument on duplicate names, fewer than 2 features, no rows, ragged rows
  /// or values other than 0/1.
  TransactionMatrix(std::vector<std::string> names, const std::vector<std::vector<int>>& rows);

  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] std::size_t features() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] bool at(std::size_t row, std::size_t feature) const;
  [[nodiscard]] const std::vector<std::uint64_t>& column(std::size_t feature) const {
    return columns_.at(feature);
  }

 private:
  std::vector<std::string> names_;
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint64_t>> columns_;
};

/// CSV with a header of feature names and one 0/1 row per transaction. Errors name the
/// offending line and column.
[[nodiscard]] TransactionMatrix read_transactions(std::istream& in);
[[nodiscard]] TransactionMatrix load_transactions(const std::filesystem::path& path);

struct Rule {
  std::string antecedent;
  std::string consequent;
  ContingencyTable table;
};

struct MineOptions {
  double min_support = 0.0;         // keep rules with f11 / N > min_support
  bool require_cooccurrence = true;  // additionally require f11 > 0
};

/// All ordered pairs (a, c), a != c, passing the support filter, in (a, c) index order.
/// The parallel path counts with popcounts over packed columns; the serial path scans
/// rows one by one and is kept as the reference.
[[nodiscard]] std::vector<Rule> mine_rules(const TransactionMatrix& m, MineOptions opts = {},
                                           Execution exec = Execution::parallel);

/// Rules with f11 < f00.
[[nodiscard]] std::vector<Rule> filter_sparse(const std::vector<Rule>& rules);
/// Rules with f11 > f00.
[[nodiscard]] std::vector<Rule> filter_dense(const std::vector<Rule>& rules);

/// `antecedent,consequent,f11,f10,f01,f00`.
void write_rules_csv(std::ostream& out, const std::vector<Rule>& rules);
[[nodiscard]] std::vector<Rule> read_rules_csv(std::istream& in);

/// Rules x1 -> y1, x2 -> y2, ... for bare table lists such as the synthetic grids.
[[nodiscard]] std::vector<Rule> rules_from_tables(const std::vector<ContingencyTable>& tables);

}  // namespace rca
