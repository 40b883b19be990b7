#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rca/contingency.hpp"
#include "rca/numeric.hpp"

namespace rca {

enum class Op { variable, constant, add, sub, mul, div, pow, sqrt, log, min, max, abs };

[[nodiscard]] constexpr bool is_unary(Op op) noexcept {
  return op == Op::sqrt || op == Op::log || op == Op::abs;
}
[[nodiscard]] constexpr bool is_binary(Op op) noexcept {
  return op != Op::variable && op != Op::constant && !is_unary(op);
}

/// Immutable arithmetic expression over the four count variables. Copies share structure.
class Expr {
 public:
  struct Node {
    Op op;
    Cell cell = Cell::f11;  // variable nodes
    double value = 0.0;     // constant nodes
    std::vector<Expr> children;
  };

  /// The constant 0.
  Expr();

  static Expr variable(Cell c);
  static Expr constant(double v);
  /// Throws std::invalid_argument if `op` is not a unary operator.
  static Expr unary(Op op, Expr arg);
  /// Throws std::invalid_argument if `op` is not a binary operator.
  static Expr binary(Op op, Expr lhs, Expr rhs);

  [[nodiscard]] Op op() const noexcept { return node_->op; }
  [[nodiscard]] Cell cell() const noexcept { return node_->cell; }
  [[nodiscard]] double value() const noexcept { return node_->value; }
  [[nodiscard]] const std::vector<Expr>& children() const noexcept { return node_->children; }
  [[nodiscard]] const Expr& child(std::size_t i) const { return node_->children.at(i); }

  [[nodiscard]] bool is_constant() const noexcept { return op() == Op::constant; }
  [[nodiscard]] bool is_constant(double v) const noexcept {
    return op() == Op::constant && value() == v;
  }

  [[nodiscard]] bool depends_on(Cell c) const;
  /// False iff a min/max/abs node has `c` somewhere beneath it.
  [[nodiscard]] bool is_smooth_in(Cell c) const;
  [[nodiscard]] bool is_smooth() const;
  [[nodiscard]] std::size_t node_count() const;

  /// Evaluates under extended-real semantics (see numeric.hpp).
  template <class T>
  [[nodiscard]] T evaluate(const Counts<T>& counts) const;

  /// Evaluates with every subtraction turned into an addition and every leaf replaced by
  /// its magnitude. The result bounds the size of intermediate terms and hence the rounding
  /// error of evaluate().
  [[nodiscard]] double magnitude(const Counts<double>& counts) const;

  /// Infix DSL text; parse(to_string()) evaluates identically.
  [[nodiscard]] std::string to_string() const;

  /// Structural equality.
  [[nodiscard]] bool same_as(const Expr& other) const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the measure DSL:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | f11 | f10 | f01 | f00 | fn '(' expr (',' expr)? ')' | '(' expr ')'
///   fn      := sqrt | log | abs | min | max
///
/// Throws ParseError with the byte offset of the offending token.
[[nodiscard]] Expr parse_expr(std::string_view text);

// ---------------------------------------------------------------------------------------

template <class T>
T Expr::evaluate(const Counts<T>& counts) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::variable:
      return counts[static_cast<std::size_t>(n.cell)];
    case Op::constant:
      return T(n.value);
    case Op::sqrt:
      return ext_sqrt(n.children[0].evaluate(counts));
    case Op::log:
      return ext_log(n.children[0].evaluate(counts));
    case Op::abs:
      return ext_abs(n.children[0].evaluate(counts));
    default:
      break;
  }
  const T lhs = n.children[0].evaluate(counts);
  const T rhs = n.children[1].evaluate(counts);
  switch (n.op) {
    case Op::add:
      return lhs + rhs;
    case Op::sub:
      return lhs - rhs;
    case Op::mul:
      return lhs * rhs;
    case Op::div:
      return ext_div(lhs, rhs);
    case Op::pow:
      return ext_pow(lhs, rhs);
    case Op::min:
      return ext_min(lhs, rhs);
    case Op::max:
      return ext_max(lhs, rhs);
    default:
      return undefined_value<T>();
  }
}

}  // namespace rca
