#pragma once

// Extended-real arithmetic shared by the expression evaluator, the native measures and the
// limit probes. Values are plain floating point: NaN is the explicit "undefined" value and
// +/-inf are ordinary members of the extended reals. Every helper is templated so the
// probes can run the same code in 50-digit precision.

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rca {

/// 64 significant decimal digits, expression templates off so generic code can deduce T.
using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>,
                                  boost::multiprecision::et_off>;

template <class T>
inline T undefined_value() {
  return std::numeric_limits<T>::quiet_NaN();
}

template <class T>
inline T infinity_value() {
  return std::numeric_limits<T>::infinity();
}

inline bool is_undefined(double v) { return std::isnan(v); }
inline bool is_undefined(const HighPrecision& v) { return boost::multiprecision::isnan(v); }
inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const HighPrecision& v) { return boost::multiprecision::isfinite(v); }

/// x / y where 0/0 is undefined and x/0 is +/-inf by the sign of x (never by the sign of
/// a negative zero in y).
template <class T>
inline T ext_div(const T& x, const T& y) {
  if (is_undefined(x) || is_undefined(y)) return undefined_value<T>();
  if (y == 0) {
    if (x == 0) return undefined_value<T>();
    return x > 0 ? infinity_value<T>() : -infinity_value<T>();
  }
  return x / y;
}

/// log(0) = -inf, log of a negative number is undefined.
template <class T>
inline T ext_log(const T& x) {
  using std::log;
  if (is_undefined(x) || x < 0) return undefined_value<T>();
  if (x == 0) return -infinity_value<T>();
  return log(x);
}

template <class T>
inline T ext_sqrt(const T& x) {
  using std::sqrt;
  if (is_undefined(x) || x < 0) return undefined_value<T>();
  return sqrt(x);
}

/// x^y; a negative base with a non-integer exponent is undefined, 0^negative is +inf.
template <class T>
inline T ext_pow(const T& x, const T& y) {
  using std::floor;
  using std::pow;
  if (is_undefined(x) || is_undefined(y)) return undefined_value<T>();
  if (x == 0 && y < 0) return infinity_value<T>();
  if (x < 0 && floor(y) != y) return undefined_value<T>();
  return pow(x, y);
}

/// p * log(p / q) with the information-theoretic convention 0 * log(0 / q) = 0.
template <class T>
inline T xlog_ratio(const T& p, const T& q) {
  if (is_undefined(p) || is_undefined(q)) return undefined_value<T>();
  if (p == 0) return T(0);
  return p * ext_log(ext_div(p, q));
}

template <class T>
inline T ext_min(const T& a, const T& b) {
  if (is_undefined(a) || is_undefined(b)) return undefined_value<T>();
  return a < b ? a : b;
}

template <class T>
inline T ext_max(const T& a, const T& b) {
  if (is_undefined(a) || is_undefined(b)) return undefined_value<T>();
  return a < b ? b : a;
}

template <class T>
inline T ext_abs(const T& a) {
  using std::abs;
  if (is_undefined(a)) return a;
  return abs(a);
}

inline double to_double(double v) { return v; }
inline double to_double(const HighPrecision& v) { return v.convert_to<double>(); }

}  // namespace rca
