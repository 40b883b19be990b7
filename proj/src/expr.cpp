#include "rca/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rca {

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::variable(Cell c) {
  return Expr(std::make_shared<const Node>(Node{Op::variable, c, 0.0, {}}));
}

Expr Expr::constant(double v) {
  return Expr(std::make_shared<const Node>(Node{Op::constant, Cell::f11, v, {}}));
}

Expr Expr::unary(Op op, Expr arg) {
  if (!is_unary(op)) throw std::invalid_argument("operator is not unary");
  return Expr(std::make_shared<const Node>(Node{op, Cell::f11, 0.0, {std::move(arg)}}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("operator is not binary");
  return Expr(
      std::make_shared<const Node>(Node{op, Cell::f11, 0.0, {std::move(lhs), std::move(rhs)}}));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Op::div, a, b); }

bool Expr::depends_on(Cell c) const {
  if (op() == Op::variable) return cell() == c;
  for (const auto& ch : children()) {
    if (ch.depends_on(c)) return true;
  }
  return false;
}

bool Expr::is_smooth_in(Cell c) const {
  if (op() == Op::min || op() == Op::max || op() == Op::abs) return !depends_on(c);
  for (const auto& ch : children()) {
    if (!ch.is_smooth_in(c)) return false;
  }
  return true;
}

bool Expr::is_smooth() const {
  for (Cell c : kAllCells) {
    if (!is_smooth_in(c)) return false;
  }
  return true;
}

std::size_t Expr::node_count() const {
  std::size_t n = 1;
  for (const auto& ch : children()) n += ch.node_count();
  return n;
}

double Expr::magnitude(const Counts<double>& counts) const {
  switch (op()) {
    case Op::variable:
      return std::abs(counts[static_cast<std::size_t>(cell())]);
    case Op::constant:
      return std::abs(value());
    case Op::sqrt:
      return std::sqrt(child(0).magnitude(counts));
    case Op::log:
      return std::abs(ext_log(child(0).evaluate(counts)));
    case Op::abs:
      return child(0).magnitude(counts);
    case Op::add:
    case Op::sub:
      return child(0).magnitude(counts) + child(1).magnitude(counts);
    case Op::mul:
      return child(0).magnitude(counts) * child(1).magnitude(counts);
    case Op::div:
      return ext_div(child(0).magnitude(counts), std::abs(child(1).evaluate(counts)));
    case Op::pow:
      return std::abs(evaluate(counts));
    case Op::min:
    case Op::max:
      return std::max(child(0).magnitude(counts), child(1).magnitude(counts));
  }
  return 0.0;
}

bool Expr::same_as(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (op() != other.op()) return false;
  if (op() == Op::variable) return cell() == other.cell();
  if (op() == Op::constant) {
    return value() == other.value() || (std::isnan(value()) && std::isnan(other.value()));
  }
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (!child(i).same_as(other.child(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------------------
// Printing

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub:
      return 1;
    case Op::mul:
    case Op::div:
      return 2;
    case Op::pow:
      return 3;
    default:
      return 4;
  }
}

std::string format_constant(double v) {
  if (std::isnan(v)) return "(0/0)";
  if (std::isinf(v)) return v > 0 ? "(1/0)" : "(-1/0)";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (v < 0) s = "(" + s + ")";
  return s;
}

const char* function_name(Op op) {
  switch (op) {
    case Op::sqrt:
      return "sqrt";
    case Op::log:
      return "log";
    case Op::abs:
      return "abs";
    case Op::min:
      return "min";
    case Op::max:
      return "max";
    default:
      return nullptr;
  }
}

char infix_symbol(Op op) {
  switch (op) {
    case Op::add:
      return '+';
    case Op::sub:
      return '-';
    case Op::mul:
      return '*';
    case Op::div:
      return '/';
    case Op::pow:
      return '^';
    default:
      return '?';
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::variable:
      out += cell_name(e.cell());
      return;
    case Op::constant:
      out += format_constant(e.value());
      return;
    default:
      break;
  }
  if (const char* fn = function_name(e.op())) {
    out += fn;
    out += '(';
    print(e.child(0), out);
    if (e.children().size() == 2) {
      out += ", ";
      print(e.child(1), out);
    }
    out += ')';
    return;
  }
  const int prec = precedence(e.op());
  const auto& lhs = e.child(0);
  const auto& rhs = e.child(1);
  // pow is right associative, the others left associative.
  const bool lhs_parens = e.op() == Op::pow ? precedence(lhs.op()) <= prec
                                             : precedence(lhs.op()) < prec;
  const bool rhs_parens = e.op() == Op::pow ? precedence(rhs.op()) < prec
                                             : precedence(rhs.op()) <= prec;
  if (lhs_parens) out += '(';
  print(lhs, out);
  if (lhs_parens) out += ')';
  out += ' ';
  out += infix_symbol(e.op());
  out += ' ';
  if (rhs_parens) out += '(';
  print(rhs, out);
  if (rhs_parens) out += ')';
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + ch + "' but input ended");
      fail(std::string("expected '") + ch + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) {
      Expr arg = unary();
      if (arg.is_constant()) return Expr::constant(-arg.value());
      return Expr::constant(0.0) - arg;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(Op::pow, base, unary());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected an expression but input ended");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier();
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      pos_ = start;
      fail("malformed number '" + token + "'");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    for (Cell c : kAllCells) {
      if (name == cell_name(c)) return Expr::variable(c);
    }
    struct Fn {
      std::string_view name;
      Op op;
    };
    static constexpr Fn kFunctions[] = {{"sqrt", Op::sqrt}, {"log", Op::log}, {"abs", Op::abs},
                                        {"min", Op::min},   {"max", Op::max}};
    for (const auto& fn : kFunctions) {
      if (name != fn.name) continue;
      expect('(');
      Expr first = expr();
      if (is_unary(fn.op)) {
        expect(')');
        return Expr::unary(fn.op, first);
      }
      expect(',');
      Expr second = expr();
      expect(')');
      return Expr::binary(fn.op, first, second);
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace rca
