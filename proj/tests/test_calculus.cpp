#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rca/calculus.hpp"
#include "rca/measure.hpp"

using namespace rca;

namespace {

const Measure& lift() { return Catalog::builtin().at("lift"); }

// Closed-form d lift / d f11 with a = f11, b = f10, c = f01, N = a + b + c + d.
double lift_f11(const ContingencyTable& t) {
  const double a = t.f11(), b = t.f10(), c = t.f01(), n = t.total();
  const double pa = a + b, pb = a + c;
  return n / (pa * pb) + a / (pa * pb) - a * n * (2 * a + b + c) / (pa * pa * pb * pb);
}

Measure dsl(const std::string& text) { return Measure("t", "t", parse_expr(text), ""); }

}  // namespace

TEST(Differentiate, Atoms) {
  EXPECT_TRUE(differentiate(parse_expr("f11"), Cell::f11).is_constant(1.0));
  EXPECT_TRUE(differentiate(parse_expr("f10"), Cell::f11).is_constant(0.0));
  EXPECT_TRUE(differentiate(parse_expr("3.5"), Cell::f00).is_constant(0.0));
}

TEST(Differentiate, RulesAgainstHandDerivatives) {
  const Counts<double> p{2, 3, 5, 7};
  struct Case {
    const char* f;
    Cell cell;
    double want;
  };
  const Case cases[] = {
      {"f11*f10", Cell::f11, 3},
      {"f11/f10", Cell::f10, -2.0 / 9},
      {"f11^3", Cell::f11, 12},
      {"2^f11", Cell::f11, 4 * std::log(2.0)},
      {"f11^f10", Cell::f10, 8 * std::log(2.0)},
      {"sqrt(f00)", Cell::f00, 0.5 / std::sqrt(7.0)},
      {"log(f01*f11)", Cell::f01, 0.2},
      {"max(f10, f01) + f11", Cell::f11, 1},
  };
  for (const auto& c : cases) {
    const Expr d = differentiate(parse_expr(c.f), c.cell);
    EXPECT_NEAR(d.evaluate(p), c.want, 1e-12) << c.f;
  }
}

TEST(Differentiate, NonSmoothThrows) {
  EXPECT_THROW((void)differentiate(parse_expr("max(f10, f01)"), Cell::f10), NonSmoothError);
  EXPECT_THROW((void)differentiate(parse_expr("abs(f11 - f00)"), Cell::f00), NonSmoothError);
}

TEST(Simplify, FoldsSafely) {
  EXPECT_TRUE(simplify(parse_expr("2*3 + 1")).is_constant(7.0));
  EXPECT_TRUE(simplify(parse_expr("f11*0")).is_constant(0.0));
  EXPECT_TRUE(simplify(parse_expr("f11 - f11")).is_constant(0.0));
  EXPECT_EQ(simplify(parse_expr("1*f10 + 0")).to_string(), "f10");
  // Undefined constants are left for evaluation to decide.
  EXPECT_FALSE(simplify(parse_expr("1/0")).is_constant());
  EXPECT_FALSE(simplify(parse_expr("log(0 - 1)")).is_constant());
}

TEST(Derivative, LiftMatchesClosedForm) {
  const Expr d = differentiate(*lift().expr(), Cell::f11);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto t = oracle::random_table(rng);
    const double want = lift_f11(t);
    EXPECT_NEAR(d.evaluate(t.counts()), want, 1e-9 * std::abs(want));
  }
}

TEST(Derivative, NumericAgreesWithSymbolic) {
  const DerivativeProbe probe{Cell::f11, {0, 5, 5, 80}, 10};
  const double num = numeric_derivative(lift(), probe);
  const double sym = differentiate(*lift().expr(), Cell::f11).evaluate(probe.counts());
  EXPECT_NEAR(num, sym, 1e-6 * std::abs(sym));
}

TEST(Derivative, SupportInF00) {
  const Measure& support = Catalog::builtin().at("support");
  const PartialDerivative d(support, Cell::f00);
  ASSERT_TRUE(d.symbolic());
  for (const Counts<double> c : {Counts<double>{3, 4, 5, 6}, Counts<double>{1, 0, 0, 9}}) {
    const double n = c[0] + c[1] + c[2] + c[3];
    EXPECT_NEAR(to_double(d.at(c, c[3]).derivative), -c[0] / (n * n), 1e-15);
  }
}

TEST(Derivative, ConstantMeasureIsFlat) {
  const Measure k = dsl("42");
  for (Cell c : kAllCells) {
    const PartialDerivative d(k, c);
    EXPECT_EQ(to_double(d.at({1, 2, 3, 4}, 7).derivative), 0.0);
    EXPECT_EQ(numeric_derivative(k, {c, {1, 2, 3, 4}, 7}), 0.0);
  }
}

TEST(Derivative, NonSmoothUsesFiniteDifference) {
  const Measure& zhang = Catalog::builtin().at("zhang");
  const PartialDerivative d(zhang, Cell::f10);
  EXPECT_FALSE(d.symbolic());
  const auto s = d.at({20, 0, 10, 50}, 5);
  EXPECT_NE(s.stencil, Stencil::symbolic);
  EXPECT_NEAR(to_double(s.derivative), numeric_derivative(zhang, {Cell::f10, {20, 0, 10, 50}, 5}),
              1e-6);
  // At the left boundary only a forward stencil is possible.
  EXPECT_EQ(d.at({20, 0, 10, 50}, 0).stencil, Stencil::forward);
}

TEST(Limit, LiftAtInfinity) {
  const auto f00 = limit_at_infinity(lift(), Cell::f00, {10, 5, 5, 0});
  EXPECT_TRUE(f00.feasible);
  EXPECT_EQ(f00.verdict, Verdict::converges_nonzero);
  EXPECT_NEAR(f00.value, 10.0 / 225, 1e-9);

  EXPECT_EQ(limit_at_infinity(lift(), Cell::f10, {10, 0, 5, 80}).verdict,
            Verdict::converges_to_zero);
  EXPECT_EQ(limit_at_infinity(lift(), Cell::f11, {0, 5, 5, 80}).verdict,
            Verdict::converges_to_zero);
}

TEST(Limit, LiftAtZero) {
  const auto f11 = limit_at_zero(lift(), Cell::f11, {0, 2, 3, 5});
  EXPECT_TRUE(f11.feasible);
  EXPECT_EQ(f11.verdict, Verdict::converges_nonzero);
  EXPECT_NEAR(f11.value, 10.0 / 6, 1e-9);

  const auto f10 = limit_at_zero(lift(), Cell::f10, {4, 0, 2, 6});
  EXPECT_NEAR(f10.value, -1.0 / 3, 1e-9);

  const auto f00 = limit_at_zero(lift(), Cell::f00, {0, 3, 4, 0});
  EXPECT_EQ(f00.value, 0.0);
}

TEST(Limit, InfeasibleContexts) {
  // Confidence is 0/0 at f11 = f10 = 0.
  const auto r = limit_at_zero(Catalog::builtin().at("confidence"), Cell::f11, {0, 0, 5, 5});
  EXPECT_FALSE(r.feasible);
}

TEST(Limit, DivergenceAtZero) {
  const auto r = limit_at_zero(dsl("sqrt(f11)"), Cell::f11, {0, 1, 1, 1});
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.verdict, Verdict::diverges);
  EXPECT_EQ(r.value, INFINITY);
}

TEST(Limit, EvidenceLadder) {
  const LimitConfig cfg;
  const auto r = limit_at_infinity(lift(), Cell::f00, {10, 5, 5, 0}, cfg);
  ASSERT_EQ(r.evidence.size(), cfg.infinity_ladder.size());
  for (std::size_t i = 0; i < r.evidence.size(); ++i) {
    EXPECT_EQ(r.evidence[i].point, cfg.infinity_ladder[i]);
  }
}
