#include "rca/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace rca {

// ---------------------------------------------------------------------------------------
// Simplification

namespace {

std::optional<double> fold(Op op, double a, double b) {
  double r = 0.0;
  switch (op) {
    case Op::add:
      r = a + b;
      break;
    case Op::sub:
      r = a - b;
      break;
    case Op::mul:
      r = a * b;
      break;
    case Op::div:
      if (b == 0.0) return std::nullopt;
      r = a / b;
      break;
    case Op::pow:
      r = ext_pow(a, b);
      break;
    case Op::min:
      r = std::min(a, b);
      break;
    case Op::max:
      r = std::max(a, b);
      break;
    case Op::sqrt:
      if (a < 0) return std::nullopt;
      r = std::sqrt(a);
      break;
    case Op::log:
      if (a <= 0) return std::nullopt;
      r = std::log(a);
      break;
    case Op::abs:
      r = std::abs(a);
      break;
    default:
      return std::nullopt;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

}  // namespace

Expr simplify(const Expr& e) {
  if (e.op() == Op::variable || e.op() == Op::constant) return e;
  if (is_unary(e.op())) {
    Expr a = simplify(e.child(0));
    if (a.is_constant()) {
      if (auto v = fold(e.op(), a.value(), 0.0)) return Expr::constant(*v);
    }
    return Expr::unary(e.op(), a);
  }
  Expr a = simplify(e.child(0));
  Expr b = simplify(e.child(1));
  if (a.is_constant() && b.is_constant()) {
    if (auto v = fold(e.op(), a.value(), b.value())) return Expr::constant(*v);
  }
  switch (e.op()) {
    case Op::add:
      if (a.is_constant(0.0)) return b;
      if (b.is_constant(0.0)) return a;
      break;
    case Op::sub:
      if (b.is_constant(0.0)) return a;
      if (a.same_as(b)) return Expr::constant(0.0);
      break;
    case Op::mul:
      if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
      if (a.is_constant(1.0)) return b;
      if (b.is_constant(1.0)) return a;
      break;
    case Op::div:
      if (a.is_constant(0.0)) return Expr::constant(0.0);
      if (b.is_constant(1.0)) return a;
      break;
    case Op::pow:
      if (b.is_constant(1.0)) return a;
      if (b.is_constant(0.0)) return Expr::constant(1.0);
      break;
    default:
      break;
  }
  return Expr::binary(e.op(), a, b);
}

// ---------------------------------------------------------------------------------------
// Symbolic differentiation

namespace {

Expr derive(const Expr& e, Cell c) {
  if (!e.depends_on(c)) return Expr::constant(0.0);
  const auto k = [](double v) { return Expr::constant(v); };
  switch (e.op()) {
    case Op::variable:
      return k(1.0);
    case Op::constant:
      return k(0.0);
    case Op::add:
      return derive(e.child(0), c) + derive(e.child(1), c);
    case Op::sub:
      return derive(e.child(0), c) - derive(e.child(1), c);
    case Op::mul: {
      const Expr& f = e.child(0);
      const Expr& g = e.child(1);
      return derive(f, c) * g + f * derive(g, c);
    }
    case Op::div: {
      const Expr& f = e.child(0);
      const Expr& g = e.child(1);
      if (!g.depends_on(c)) return derive(f, c) / g;
      return (derive(f, c) * g - f * derive(g, c)) / (g * g);
    }
    case Op::pow: {
      const Expr& f = e.child(0);
      const Expr& g = e.child(1);
      if (!g.depends_on(c)) {
        return g * Expr::binary(Op::pow, f, g - k(1.0)) * derive(f, c);
      }
      return e * (derive(g, c) * Expr::unary(Op::log, f) + g * derive(f, c) / f);
    }
    case Op::sqrt:
      return derive(e.child(0), c) / (k(2.0) * e);
    case Op::log:
      return derive(e.child(0), c) / e.child(0);
    case Op::min:
    case Op::max:
    case Op::abs:
      break;
  }
  throw NonSmoothError("'" + std::string(cell_name(c)) + "' appears under a non-smooth node in " +
                       e.to_string());
}

}  // namespace

Expr differentiate(const Expr& e, Cell cell) { return simplify(derive(e, cell)); }

// ---------------------------------------------------------------------------------------
// Finite differences

double numeric_derivative(const Measure& m, const DerivativeProbe& probe) {
  const double x = probe.point;
  const double h = std::max(1e-6 * x, 1e-9);
  auto at = [&](double v) {
    DerivativeProbe p = probe;
    p.point = v;
    return m.evaluate(p.counts());
  };
  if (x - h < 0) {
    const double f0 = at(x);
    const double f1 = at(x + h);
    if (std::isnan(f0) || std::isnan(f1)) return std::numeric_limits<double>::quiet_NaN();
    return (f1 - f0) / h;
  }
  const double fm = at(x - h);
  const double fp = at(x + h);
  if (std::isnan(fm) || std::isnan(fp)) return std::numeric_limits<double>::quiet_NaN();
  return (fp - fm) / (2 * h);
}

std::string_view stencil_name(Stencil s) noexcept {
  switch (s) {
    case Stencil::symbolic:
      return "symbolic";
    case Stencil::central:
      return "central";
    case Stencil::forward:
      return "forward";
  }
  return "?";
}

PartialDerivative::PartialDerivative(const Measure& m, Cell cell, double noise_floor)
    : measure_(&m), cell_(cell), noise_floor_(noise_floor) {
  if (m.expr() != nullptr && m.smooth_in(cell)) {
    derivative_ = differentiate(*m.expr(), cell);
    constant_zero_ = derivative_->is_constant(0.0);
  }
}

PartialDerivative::Sample PartialDerivative::at(const Counts<HighPrecision>& counts) const {
  using HP = HighPrecision;
  const auto idx = static_cast<std::size_t>(cell_);
  const HP f0 = measure_->evaluate(counts);
  Sample s{undefined_value<HP>(), f0, Stencil::symbolic};
  if (!is_finite(f0)) return s;

  if (derivative_) {
    s.derivative = constant_zero_ ? HP(0) : derivative_->evaluate(counts);
  }
  // The symbolic form can be indeterminate where the function itself is smooth, e.g.
  // d sqrt(f11 f00)/d f11 = f00/(2 sqrt(f11 f00)) at f11 = f00 = 0. Difference there.
  if (!derivative_ || is_undefined(s.derivative)) {
    const HP x = counts[idx];
    const HP h = HP("1e-25") * (x > 1 ? x : HP(1));
    Counts<HP> hi = counts;
    hi[idx] = x + h;
    const HP fp = measure_->evaluate(hi);
    if (x - h >= 0) {
      Counts<HP> lo = counts;
      lo[idx] = x - h;
      const HP fm = measure_->evaluate(lo);
      s.stencil = Stencil::central;
      if (is_finite(fp) && is_finite(fm)) s.derivative = (fp - fm) / (2 * h);
    } else {
      s.stencil = Stencil::forward;
      if (is_finite(fp)) s.derivative = (fp - f0) / h;
    }
  }
  if (is_finite(s.derivative)) {
    using boost::multiprecision::abs;
    const HP scale = abs(f0) > 1 ? abs(f0) : HP(1);
    if (abs(s.derivative) < HP(noise_floor_) * scale) s.derivative = 0;
  }
  return s;
}

PartialDerivative::Sample PartialDerivative::at(const Counts<double>& context,
                                                double point) const {
  Counts<HighPrecision> c;
  for (std::size_t i = 0; i < 4; ++i) c[i] = HighPrecision(context[i]);
  c[static_cast<std::size_t>(cell_)] = HighPrecision(point);
  return at(c);
}

// ---------------------------------------------------------------------------------------
// Limits

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::converges_to_zero:
      return "converges-to-zero";
    case Verdict::converges_nonzero:
      return "converges-nonzero";
    case Verdict::diverges:
      return "diverges";
    case Verdict::undefined:
      return "undefined";
  }
  return "?";
}

namespace {

EvidenceSample record(double point, const PartialDerivative::Sample& s) {
  return {point, to_double(s.derivative), to_double(s.measure), s.stencil};
}

/// Fills `est.evidence` with the ladder samples; returns false if any is not finite.
bool sample_ladder(const PartialDerivative& d, const Counts<double>& context,
                   const std::vector<double>& ladder, LimitEstimate& est,
                   std::vector<HighPrecision>& values) {
  bool finite = true;
  for (double x : ladder) {
    const auto s = d.at(context, x);
    est.evidence.push_back(record(x, s));
    values.push_back(s.derivative);
    if (!is_finite(s.derivative)) finite = false;
  }
  return finite;
}

struct Trend {
  double last = 0, prev = 0, prev2 = 0, max = 0;
};

Trend trend_of(const std::vector<HighPrecision>& v) {
  using boost::multiprecision::abs;
  Trend t;
  const std::size_t n = v.size();
  for (const auto& x : v) t.max = std::max(t.max, to_double(abs(x)));
  if (n >= 1) t.last = to_double(abs(v[n - 1]));
  if (n >= 2) t.prev = to_double(abs(v[n - 2]));
  if (n >= 3) t.prev2 = to_double(abs(v[n - 3]));
  return t;
}

double signed_infinity(const HighPrecision& v) {
  return v < 0 ? -std::numeric_limits<double>::infinity()
               : std::numeric_limits<double>::infinity();
}

}  // namespace

LimitEstimate limit_at_infinity(const PartialDerivative& d, const Counts<double>& context,
                                const LimitConfig& config) {
  LimitEstimate est;
  est.value = std::numeric_limits<double>::quiet_NaN();
  std::vector<HighPrecision> values;
  if (config.infinity_ladder.empty()) return est;
  if (!sample_ladder(d, context, config.infinity_ladder, est, values)) return est;
  est.feasible = true;

  const Trend t = trend_of(values);
  const double up = 1.0 + config.monotone_slack;
  if (t.max == 0.0) {
    est.verdict = Verdict::converges_to_zero;
    est.value = 0.0;
    return est;
  }
  // Only the final step must be non-increasing: a derivative may pass through zero at an
  // interior ladder point (an independence table, for instance) and still decay.
  if (t.last <= config.infinity_decay * t.max && t.last <= t.prev * up) {
    est.verdict = Verdict::converges_to_zero;
    est.value = 0.0;
    return est;
  }
  const double last = to_double(values.back());
  const double prev = values.size() >= 2 ? to_double(values[values.size() - 2]) : last;
  const double change = std::abs(last - prev) / std::max(std::abs(last), std::abs(prev));
  if (change < config.stabilization) {
    est.verdict = Verdict::converges_nonzero;
    est.value = last;
    return est;
  }
  if (t.last > t.prev * up && t.prev > t.prev2 * up) {
    est.verdict = Verdict::diverges;
    est.value = signed_infinity(values.back());
    return est;
  }
  return est;  // feasible but inconclusive
}

LimitEstimate limit_at_zero(const PartialDerivative& d, const Counts<double>& context,
                            const LimitConfig& config) {
  LimitEstimate est;
  est.value = std::numeric_limits<double>::quiet_NaN();
  const auto at_zero = d.at(context, 0.0);
  est.evidence.push_back(record(0.0, at_zero));
  if (is_undefined(at_zero.measure)) return est;

  std::vector<HighPrecision> values;
  if (config.zero_ladder.empty()) return est;
  if (!sample_ladder(d, context, config.zero_ladder, est, values)) return est;
  est.feasible = true;

  const Trend t = trend_of(values);
  const double up = 1.0 + config.monotone_slack;
  if (t.max == 0.0 || t.last <= config.zero_decay * t.max) {
    est.verdict = Verdict::converges_to_zero;
    est.value = 0.0;
    return est;
  }
  if (t.last > t.prev * up && t.prev > t.prev2 * up) {
    est.verdict = Verdict::diverges;
    est.value = signed_infinity(values.back());
    return est;
  }
  est.verdict = Verdict::converges_nonzero;
  const double last = to_double(values.back());
  const double exact = to_double(at_zero.derivative);
  est.value = (std::isfinite(exact) && exact != 0.0 && (exact > 0) == (last > 0)) ? exact : last;
  return est;
}

LimitEstimate limit_at_infinity(const Measure& m, Cell cell, const Counts<double>& context,
                                const LimitConfig& config) {
  return limit_at_infinity(PartialDerivative(m, cell, config.noise_floor), context, config);
}

LimitEstimate limit_at_zero(const Measure& m, Cell cell, const Counts<double>& context,
                            const LimitConfig& config) {
  return limit_at_zero(PartialDerivative(m, cell, config.noise_floor), context, config);
}

}  // namespace rca
