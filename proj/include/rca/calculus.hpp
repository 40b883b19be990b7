#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rca/contingency.hpp"
#include "rca/expr.hpp"
#include "rca/measure.hpp"
#include "rca/numeric.hpp"

namespace rca {

/// Raised by differentiate() when the variable sits under min/max/abs.
class NonSmoothError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Constant folding plus zero/one elimination. Folding never turns a defined value into an
/// undefined one (x/0 and log of non-positive constants are left alone).
[[nodiscard]] Expr simplify(const Expr& e);

/// Symbolic partial derivative, simplified. Throws NonSmoothError when `cell` appears below
/// a min, max or abs node.
[[nodiscard]] Expr differentiate(const Expr& e, Cell cell);

/// A point at which the derivative in `cell` is evaluated: `context` holds the other three
/// counts (the entry for `cell` is ignored) and `point` the value of the varying count.
struct DerivativeProbe {
  Cell cell = Cell::f11;
  Counts<double> context{};
  double point = 0.0;

  [[nodiscard]] Counts<double> counts() const {
    Counts<double> c = context;
    c[static_cast<std::size_t>(cell)] = point;
    return c;
  }
};

/// Finite difference in double precision: central with h = max(1e-6 x, 1e-9), forward when
/// x - h < 0. Undefined when either stencil point is undefined.
[[nodiscard]] double numeric_derivative(const Measure& m, const DerivativeProbe& probe);

enum class Stencil { symbolic, central, forward };
[[nodiscard]] std::string_view stencil_name(Stencil s) noexcept;

/// Derivative of one measure in one cell, evaluated in extended precision. Uses the
/// symbolic derivative when the body is smooth in the cell and a high-precision finite
/// difference otherwise.
class PartialDerivative {
 public:
  struct Sample {
    HighPrecision derivative;
    HighPrecision measure;
    Stencil stencil;
  };

  /// `noise_floor`: derivatives smaller than noise_floor * max(1, |measure|) are reported
  /// as exactly 0 (they are below the rounding error of the evaluation).
  PartialDerivative(const Measure& m, Cell cell, double noise_floor = 1e-30);

  [[nodiscard]] Cell cell() const noexcept { return cell_; }
  [[nodiscard]] bool symbolic() const noexcept { return derivative_.has_value(); }
  [[nodiscard]] const Expr* expr() const noexcept {
    return derivative_ ? &*derivative_ : nullptr;
  }

  [[nodiscard]] Sample at(const Counts<HighPrecision>& counts) const;
  [[nodiscard]] Sample at(const Counts<double>& context, double point) const;

 private:
  const Measure* measure_;
  Cell cell_;
  std::optional<Expr> derivative_;
  bool constant_zero_ = false;
  double noise_floor_;
};

enum class Verdict { converges_to_zero, converges_nonzero, diverges, undefined };
[[nodiscard]] std::string_view verdict_name(Verdict v) noexcept;

struct EvidenceSample {
  double point = 0.0;
  double derivative = 0.0;
  double measure = 0.0;
  Stencil stencil = Stencil::symbolic;
};

struct LimitEstimate {
  double value = 0.0;  // extended real; NaN when undefined
  Verdict verdict = Verdict::undefined;
  /// False when the context is not a feasible combination: the derivative is not finite
  /// along the ladder, or (for limits at zero) the measure is undefined at exactly zero.
  bool feasible = false;
  std::vector<EvidenceSample> evidence;
};

/// Evidence ladders and decision tolerances of the limit probes.
struct LimitConfig {
  std::vector<double> infinity_ladder{1e3, 1e4, 1e6, 1e8, 1e10, 1e14, 1e20};
  std::vector<double> zero_ladder{1e-2, 1e-4, 1e-6, 1e-10, 1e-15};
  /// Converges to zero at infinity when the last |d| is at most this fraction of max |d|.
  double infinity_decay = 1e-4;
  /// Converges to zero at zero when the last |d| is at most this fraction of max |d|.
  double zero_decay = 1e-6;
  /// Successive relative change below which samples count as stable.
  double stabilization = 1e-3;
  /// Slack allowed in monotonicity checks.
  double monotone_slack = 0.01;
  /// See PartialDerivative.
  double noise_floor = 1e-30;
};

[[nodiscard]] LimitEstimate limit_at_infinity(const PartialDerivative& d,
                                              const Counts<double>& context,
                                              const LimitConfig& config = {});
[[nodiscard]] LimitEstimate limit_at_zero(const PartialDerivative& d,
                                          const Counts<double>& context,
                                          const LimitConfig& config = {});

[[nodiscard]] LimitEstimate limit_at_infinity(const Measure& m, Cell cell,
                                              const Counts<double>& context,
                                              const LimitConfig& config = {});
[[nodiscard]] LimitEstimate limit_at_zero(const Measure& m, Cell cell,
                                          const Counts<double>& context,
                                          const LimitConfig& config = {});

}  // namespace rca
