#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "rca/contingency.hpp"
#include "rca/expr.hpp"
#include "rca/numeric.hpp"

namespace rca {

/// Evaluator pair for a measure that is not written in the DSL.
struct NativeMeasure {
  double (*eval)(const Counts<double>&) = nullptr;
  HighPrecision (*eval_hp)(const Counts<HighPrecision>&) = nullptr;
};

/// Looks up a built-in native evaluator by measure id.
[[nodiscard]] std::optional<NativeMeasure> find_native(std::string_view id);

class Measure {
 public:
  Measure(std::string id, std::string display, Expr body, std::string source);
  Measure(std::string id, std::string display, NativeMeasure body, std::string source);

  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] const std::string& display_name() const noexcept { return display_; }
  [[nodiscard]] const std::string& source_note() const noexcept { return source_; }
  /// True iff the body is differentiable wherever it is defined. Native bodies carry the
  /// 0 log 0 convention or max() branches and are treated as non-smooth.
  [[nodiscard]] bool smooth() const noexcept { return smooth_; }
  [[nodiscard]] bool is_native() const noexcept { return !expr_.has_value(); }
  /// The DSL body; nullptr for native measures.
  [[nodiscard]] const Expr* expr() const noexcept { return expr_ ? &*expr_ : nullptr; }
  /// DSL text of the body, or "NATIVE".
  [[nodiscard]] std::string definition() const;
  /// True iff the body reads `c`. Native bodies are assumed to read every cell.
  [[nodiscard]] bool depends_on(Cell c) const;
  /// True iff the partial derivative in `c` can be taken symbolically.
  [[nodiscard]] bool smooth_in(Cell c) const;

  template <class T>
  [[nodiscard]] T evaluate(const Counts<T>& counts) const {
    if (expr_) return expr_->evaluate(counts);
    if constexpr (std::is_same_v<T, double>) {
      return native_.eval(counts);
    } else {
      return native_.eval_hp(counts);
    }
  }
  /// Extended-real value; NaN means undefined.
  [[nodiscard]] double evaluate(const ContingencyTable& t) const { return evaluate(t.counts()); }

 private:
  std::string id_;
  std::string display_;
  std::string source_;
  std::optional<Expr> expr_;
  NativeMeasure native_;
  bool smooth_ = true;
};

/// Immutable, ordered set of measures with unique ids.
class Catalog {
 public:
  /// Parses `id | display | dsl-or-NATIVE | source` lines. Blank lines and '#' comments are
  /// skipped. Throws std::runtime_error naming the line on malformed rows, duplicate ids,
  /// DSL syntax errors or NATIVE ids without a built-in evaluator.
  static Catalog parse(std::string_view text);

  /// The 50 built-in measures in the row order of the published classification table.
  static const Catalog& builtin();

  [[nodiscard]] const std::vector<Measure>& measures() const noexcept { return measures_; }
  [[nodiscard]] std::size_t size() const noexcept { return measures_.size(); }
  [[nodiscard]] const Measure& operator[](std::size_t i) const { return measures_.at(i); }
  [[nodiscard]] const Measure* find(std::string_view id) const;
  /// Throws std::out_of_range with the unknown id.
  [[nodiscard]] const Measure& at(std::string_view id) const;
  [[nodiscard]] std::size_t index_of(std::string_view id) const;

  /// Catalog file text (the embedded copy for builtin()).
  [[nodiscard]] const std::string& text() const noexcept { return text_; }
  /// Short content hash of text(), recorded in run manifests.
  [[nodiscard]] std::string version() const;

 private:
  std::vector<Measure> measures_;
  std::string text_;
};

[[nodiscard]] inline const std::vector<Measure>& list_measures() {
  return Catalog::builtin().measures();
}

[[nodiscard]] inline double evaluate(const Measure& m, const ContingencyTable& t) {
  return m.evaluate(t);
}

}  // namespace rca
