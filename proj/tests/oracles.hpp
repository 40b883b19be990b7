#pragma once

// Reference formulas written in probability form, independent of the catalog DSL.

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "rca/contingency.hpp"

namespace oracle {

struct P {
  double ab, a_nb, na_b, na_nb, a, b, na, nb;
  explicit P(const rca::ContingencyTable& t) {
    const double n = t.total();
    ab = t.f11() / n;
    a_nb = t.f10() / n;
    na_b = t.f01() / n;
    na_nb = t.f00() / n;
    a = ab + a_nb;
    b = ab + na_b;
    na = 1 - a;
    nb = 1 - b;
  }
};

inline double xlogy(double x, double y) { return x == 0 ? 0.0 : x * std::log(y); }

using Fn = std::function<double(const P&)>;

inline const std::map<std::string, Fn>& formulas() {
  static const std::map<std::string, Fn> f = {
      {"lift", [](const P& p) { return p.ab / (p.a * p.b); }},
      {"jaccard", [](const P& p) { return p.ab / (p.a + p.b - p.ab); }},
      {"confidence", [](const P& p) { return p.ab / p.a; }},
      {"recall", [](const P& p) { return p.ab / p.b; }},
      {"specificity", [](const P& p) { return p.na_nb / p.na; }},
      {"ganascia", [](const P& p) { return 2 * p.ab / p.a - 1; }},
      {"f-measure", [](const P& p) {
         const double c = p.ab / p.a, r = p.ab / p.b;
         return 2 * c * r / (c + r);
       }},
      {"odds-ratio", [](const P& p) { return p.ab * p.na_nb / (p.a_nb * p.na_b); }},
      {"accuracy", [](const P& p) { return p.ab + p.na_nb; }},
      {"support", [](const P& p) { return p.ab; }},
      {"coverage", [](const P& p) { return p.a; }},
      {"prevalence", [](const P& p) { return p.b; }},
      {"relative-risk", [](const P& p) { return (p.ab / p.a) / (p.na_b / p.na); }},
      {"novelty", [](const P& p) { return p.ab - p.a * p.b; }},
      {"piatetsky-shapiro", [](const P& p) { return p.ab - p.a * p.b; }},
      {"yule-q", [](const P& p) {
         const double x = p.ab * p.na_nb, y = p.a_nb * p.na_b;
         return (x - y) / (x + y);
       }},
      {"cosine", [](const P& p) { return p.ab / std::sqrt(p.a * p.b); }},
      {"certainty-factor", [](const P& p) { return (p.ab / p.a - p.b) / (1 - p.b); }},
      {"conviction", [](const P& p) { return p.a * p.nb / p.a_nb; }},
      {"information-gain", [](const P& p) { return std::log(p.ab / (p.a * p.b)); }},
      {"klosgen", [](const P& p) { return std::sqrt(p.ab) * (p.ab / p.a - p.b); }},
      {"added-value", [](const P& p) { return p.ab / p.a - p.b; }},
      {"kappa", [](const P& p) {
         const double e = p.a * p.b + p.na * p.nb;
         return (p.ab + p.na_nb - e) / (1 - e);
       }},
      {"collective-strength", [](const P& p) {
         const double o = p.ab + p.na_nb, e = p.a * p.b + p.na * p.nb;
         return (o / e) * ((1 - e) / (1 - o));
       }},
      {"two-way-support", [](const P& p) { return p.ab * std::log2(p.ab / (p.a * p.b)); }},
      {"one-way-support", [](const P& p) { return (p.ab / p.a) * std::log2(p.ab / (p.a * p.b)); }},
      {"j-measure", [](const P& p) {
         return xlogy(p.ab, (p.ab / p.a) / p.b) + xlogy(p.a_nb, (p.a_nb / p.a) / p.nb);
       }},
      {"mutual-information", [](const P& p) {
         return xlogy(p.ab, p.ab / (p.a * p.b)) + xlogy(p.a_nb, p.a_nb / (p.a * p.nb)) +
                xlogy(p.na_b, p.na_b / (p.na * p.b)) + xlogy(p.na_nb, p.na_nb / (p.na * p.nb));
       }},
      {"gini-index", [](const P& p) {
         const double given_a = (p.ab * p.ab + p.a_nb * p.a_nb) / p.a;
         const double given_na = (p.na_b * p.na_b + p.na_nb * p.na_nb) / p.na;
         return given_a + given_na - p.b * p.b - p.nb * p.nb;
       }},
      {"goodman-kruskal", [](const P& p) {
         const double rows = std::max(p.ab, p.a_nb) + std::max(p.na_b, p.na_nb);
         const double cols = std::max(p.ab, p.na_b) + std::max(p.a_nb, p.na_nb);
         const double mb = std::max(p.b, p.nb), ma = std::max(p.a, p.na);
         return (rows + cols - mb - ma) / (2 - mb - ma);
       }},
  };
  return f;
}

/// Tables with every cell in [1, 1000].
inline rca::ContingencyTable random_table(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.0, 1000.0);
  const double a = std::round(u(rng)), b = std::round(u(rng));
  const double c = std::round(u(rng)), d = std::round(u(rng));
  return {a, b, c, d};
}

}  // namespace oracle
