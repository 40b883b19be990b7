#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rca/classic.hpp"
#include "rca/pipeline.hpp"

using namespace rca;

namespace {

const ClassicConfig& cfg() {
  static const ClassicConfig c = ClassicConfig::builtin();
  return c;
}

const Measure& m(const char* id) { return Catalog::builtin().at(id); }

Measure dsl(const std::string& text) { return Measure("t", "t", parse_expr(text), ""); }

void expect_replays(const Measure& measure, const PropertyVerdict& v) {
  ASSERT_EQ(v.satisfied, Label::N);
  ASSERT_TRUE(v.counterexample.has_value());
  const auto& ce = *v.counterexample;
  ASSERT_EQ(ce.tables.size(), ce.values.size());
  for (std::size_t i = 0; i < ce.tables.size(); ++i) {
    const double again = measure.evaluate(ce.tables[i]);
    EXPECT_TRUE(again == ce.values[i] || (std::isnan(again) && std::isnan(ce.values[i])));
  }
}

}  // namespace

TEST(ClassicData, Shipped) {
  EXPECT_EQ(cfg().generators.size(), 50u);
  EXPECT_EQ(cfg().independent.size(), 50u);
  for (const auto& t : cfg().independent) {
    EXPECT_NEAR(t.f11() * t.f00(), t.f10() * t.f01(), 1e-9 * t.f11() * t.f00());
  }
}

TEST(P1, Examples) {
  EXPECT_EQ(check_p1(m("piatetsky-shapiro"), cfg()).satisfied, Label::Y);
  const auto lift = check_p1(m("lift"), cfg());
  expect_replays(m("lift"), lift);
  EXPECT_DOUBLE_EQ(lift.counterexample->values[0], 1.0);
  expect_replays(m("support"), check_p1(m("support"), cfg()));
}

TEST(P2P3, Examples) {
  EXPECT_EQ(check_p2(m("lift"), cfg()).satisfied, Label::Y);
  const Measure& lift = m("lift");
  EXPECT_DOUBLE_EQ(lift.evaluate({15, 5, 5, 15}), 1.5);
  expect_replays(m("support"), check_p3(m("support"), cfg()));
  expect_replays(dsl("7"), check_p2(dsl("7"), cfg()));
  EXPECT_EQ(check_p3(m("lift"), cfg()).satisfied, Label::Y);
}

TEST(Operational, Examples) {
  EXPECT_EQ(check_o(m("odds-ratio"), ClassicProperty::o2, cfg()).satisfied, Label::Y);
  EXPECT_EQ(check_o(m("jaccard"), ClassicProperty::o4, cfg()).satisfied, Label::Y);
  EXPECT_EQ(check_o(m("lift"), ClassicProperty::o1, cfg()).satisfied, Label::Y);
  EXPECT_EQ(check_o(m("piatetsky-shapiro"), ClassicProperty::o3, cfg()).satisfied, Label::Y);
  EXPECT_EQ(check_o(m("yule-q"), ClassicProperty::o3_prime, cfg()).satisfied, Label::Y);
  expect_replays(m("confidence"), check_o(m("confidence"), ClassicProperty::o1, cfg()));
  expect_replays(m("lift"), check_o(m("lift"), ClassicProperty::o4, cfg()));
  EXPECT_THROW((void)check_o(m("lift"), ClassicProperty::p1, cfg()), std::invalid_argument);
}

TEST(Operational, UndefinedIsViolation) {
  // Sebag-Schoenauer divides by f10, which is zero in some generator tables.
  const auto v = check_o(m("sebag-schoenauer"), ClassicProperty::o3_prime, cfg());
  expect_replays(m("sebag-schoenauer"), v);
}

TEST(Properties, Names) {
  for (auto p : kClassicProperties) EXPECT_EQ(parse_property(property_name(p)), p);
  EXPECT_EQ(property_name(ClassicProperty::o3_prime), "O3'");
  EXPECT_THROW((void)parse_property("O5"), std::invalid_argument);
}

TEST(CrossTab, PublishedLabels) {
  const Catalog& cat = Catalog::builtin();
  const auto classic = check_catalog(cat, cfg());
  std::vector<RcaClassification> rca;
  for (const auto& row : published_labels()) {
    RcaClassification r;
    r.measure = row.measure;
    r.overall_unai = row.labels[4];
    r.overall_unzr = row.labels[9];
    rca.push_back(r);
  }
  for (auto p : kClassicProperties) {
    for (bool unzr : {false, true}) {
      const auto ct = crosstab(classic, rca, p, unzr);
      int total = 0;
      for (const auto& row : ct.counts) {
        for (int v : row) total += v;
      }
      EXPECT_EQ(total, 50);
    }
  }
  const auto o4 = crosstab(classic, rca, ClassicProperty::o4, true);
  EXPECT_EQ(o4.counts[0], (std::vector<int>{0, 0, 12}));
  const auto o2 = crosstab(classic, rca, ClassicProperty::o2, false);
  EXPECT_EQ(o2.counts[0], (std::vector<int>{2, 1}));

  std::ostringstream os;
  write_crosstab_csv(os, classic, rca);
  EXPECT_NE(os.str().find("\"O4\",satisfied,8,4,0,0,12"), std::string::npos) << os.str();
}

TEST(Classic, Deterministic) {
  const auto a = check_classic(m("kappa"), cfg());
  const auto b = check_classic(m("kappa"), cfg());
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    EXPECT_EQ(a.verdicts[i].satisfied, b.verdicts[i].satisfied);
  }
}
