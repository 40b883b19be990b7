#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rca/rank.hpp"
#include "rca/synth.hpp"

using namespace rca;

namespace {

RankMatrix rows(std::vector<std::vector<double>> values) {
  RankMatrix rm;
  rm.rules = values.front().size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    rm.measures.push_back("m" + std::to_string(i + 1));
    rm.ranks.push_back(average_ranks(values[i]));
    std::size_t n = 0;
    for (double v : values[i]) n += !std::isnan(v);
    rm.defined.push_back(n);
    rm.values.push_back(std::move(values[i]));
  }
  return rm;
}

CorrelationMatrix matrix(std::vector<double> rho) {
  CorrelationMatrix m;
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(double(rho.size()))));
  for (std::size_t i = 0; i < n; ++i) m.measures.push_back("m" + std::to_string(i + 1));
  m.rho = std::move(rho);
  return m;
}

}  // namespace

TEST(Ranks, Ties) {
  EXPECT_EQ(average_ranks({3.2, 1.0, 1.0}), (std::vector<double>{1, 2.5, 2.5}));
  EXPECT_EQ(average_ranks({1, 2, 3}), (std::vector<double>{3, 2, 1}));
  const auto masked = average_ranks({5, NAN, 1});
  EXPECT_EQ(masked[0], 1);
  EXPECT_TRUE(std::isnan(masked[1]));
  EXPECT_EQ(masked[2], 2);
  EXPECT_EQ(average_ranks({INFINITY, 2, -INFINITY}), (std::vector<double>{1, 2, 3}));
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(spearman(rows({{1, 2, 3, 4}, {1, 2, 3, 4}}), 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(spearman(rows({{1, 2, 3, 4}, {4, 3, 2, 1}}), 0, 1), -1.0);
  EXPECT_NEAR(spearman(rows({{3, 2, 1}, {3, 1, 2}}), 0, 1), 0.5, 1e-15);
}

TEST(Spearman, PairwiseExclusion) {
  // The third rule is undefined for m2, so only rules 1, 2, 4, 5 count.
  const auto rm = rows({{1, 2, 100, 3, 4}, {1, 2, NAN, 3, 4}});
  EXPECT_DOUBLE_EQ(spearman(rm, 0, 1), 1.0);
  const auto sparse = rows({{1, 2, 3, 4}, {1, NAN, NAN, 4}});
  EXPECT_TRUE(std::isnan(spearman(sparse, 0, 1)));
  EXPECT_TRUE(std::isnan(spearman(rows({{1, 2, 3}, {5, 5, 5}}), 0, 1)));
}

TEST(Spearman, MatrixShape) {
  std::mt19937 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> v(6, std::vector<double>(40));
  for (auto& r : v) {
    for (auto& x : r) x = g(rng);
  }
  v[2][7] = NAN;
  const auto rm = rows(v);
  const auto s = spearman_matrix(rm, Execution::serial);
  const auto p = spearman_matrix(rm, Execution::parallel);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(s(i, i), 1.0);
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_EQ(s(i, j), s(j, i));
      EXPECT_EQ(s(i, j), p(i, j));
      EXPECT_LE(std::abs(s(i, j)), 1.0);
    }
  }
}

TEST(Spearman, TieSafePearsonForm) {
  // With ties the 1 - 6 sum d^2 shortcut differs from the rank Pearson correlation.
  const auto rm = rows({{1, 1, 2, 3}, {1, 2, 2, 3}});
  const double rho = spearman(rm, 0, 1);
  const double expected = pearson({3.5, 3.5, 2, 1}, {4, 2.5, 2.5, 1});
  EXPECT_DOUBLE_EQ(rho, expected);
}

TEST(Cluster, Examples) {
  const auto one_edge = cluster(matrix({1, .9, .1, .9, 1, .2, .1, .2, 1}));
  ASSERT_EQ(one_edge.size(), 2u);
  EXPECT_EQ(one_edge.members[0], (std::vector<std::string>{"m1", "m2"}));
  EXPECT_EQ(one_edge.members[1], (std::vector<std::string>{"m3"}));
  EXPECT_EQ(cluster(matrix({1, .8, .85, .8, 1, .95, .85, .95, 1})).size(), 1u);
  EXPECT_EQ(cluster(matrix({1, 0, 0, 0, 1, 0, 0, 0, 1})).size(), 3u);
  EXPECT_EQ(cluster(matrix({1, NAN, NAN, 1})).size(), 2u);
  EXPECT_THROW((void)cluster(matrix({1}), 1.0), std::invalid_argument);
}

TEST(Cluster, LabelsBySizeThenName) {
  const auto ca = ClusterAssignment::from_blocks({{"z"}, {"b", "c"}, {"a"}});
  EXPECT_EQ(ca.labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(ca.members[0], (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(ca.members[1], (std::vector<std::string>{"a"}));
  EXPECT_EQ(ca.label_of("z"), "C");
}

TEST(Cluster, InputOrderInvariant) {
  const auto a = cluster(matrix({1, .9, .1, .9, 1, .2, .1, .2, 1}));
  CorrelationMatrix shuffled;
  shuffled.measures = {"m3", "m1", "m2"};
  shuffled.rho = {1, .1, .2, .1, 1, .9, .2, .9, 1};
  const auto b = cluster(shuffled);
  EXPECT_EQ(a.by_measure(), b.by_measure());
}

TEST(Cluster, MonotoneTransformInvariant) {
  // Clustering with m and exp(m) gives identical partitions.
  const auto tables = generate(GridPreset::sparse());
  const Catalog& cat = Catalog::builtin();
  std::string text;
  for (const char* id : {"lift", "confidence", "jaccard", "novelty", "kappa"}) {
    text += std::string(id) + " | x | " + cat.at(id).definition() + " | t\n";
    text += std::string(id) + "-exp | x | 2.718281828459045^(" + cat.at(id).definition() + ") | t\n";
  }
  const Catalog twins = Catalog::parse(text);
  const auto rm = rank_rules(tables, twins);
  const auto rho = spearman_matrix(rm);
  const auto ca = cluster(rho, 0.8);
  for (const char* id : {"lift", "confidence", "jaccard", "novelty", "kappa"}) {
    EXPECT_EQ(ca.label_of(id), ca.label_of(std::string(id) + "-exp")) << id;
    EXPECT_GT(rho(twins.index_of(id), twins.index_of(std::string(id) + "-exp")), 0.9999) << id;
  }
}

TEST(Cluster, TextRoundTrip) {
  const auto ca = ClusterAssignment::from_blocks({{"x", "y"}, {"z"}});
  std::stringstream ss;
  write_clusters(ss, ca);
  EXPECT_EQ(ss.str(), "A (2): x y\nB (1): z\n");
  const auto back = read_clusters(ss);
  EXPECT_EQ(back.labels, ca.labels);
  EXPECT_EQ(back.members, ca.members);
  std::istringstream bad("A (3): x y\n");
  EXPECT_THROW((void)read_clusters(bad), std::runtime_error);
}

TEST(Correlation, CsvRoundTrip) {
  const auto m = matrix({1, 0.25, 0.25, 1});
  std::stringstream ss;
  write_correlation_csv(ss, m);
  const auto back = read_correlation_csv(ss);
  EXPECT_EQ(back.measures, m.measures);
  EXPECT_EQ(back.rho, m.rho);
}

TEST(CrossTab, RowSums) {
  const auto ca = ClusterAssignment::from_blocks({{"a", "b", "c"}, {"d"}});
  const std::map<std::string, Label> labels{
      {"a", Label::Y}, {"b", Label::P}, {"c", Label::Y}, {"d", Label::N}};
  const auto ct = property_crosstab(ca, labels, "UNZR_f11");
  EXPECT_EQ(ct.columns, (std::vector<char>{'N', 'P', 'Y'}));
  EXPECT_EQ(ct.counts[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(ct.counts[1], (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(ct.count(0, 'Y'), 2u);
  EXPECT_THROW((void)property_crosstab(ca, {{"a", Label::Y}}, "x"), std::invalid_argument);
}

TEST(RandIndex, Values) {
  const auto a = ClusterAssignment::from_blocks({{"a", "b"}, {"c", "d"}});
  const auto b = ClusterAssignment::from_blocks({{"a", "b", "c", "d"}});
  EXPECT_DOUBLE_EQ(rand_index(a, a), 1.0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, a), 1.0);
  // 6 pairs; a splits 4 of them, b splits none: agreement on the 2 together-pairs.
  EXPECT_DOUBLE_EQ(rand_index(a, b), 2.0 / 6);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(a, b), 0.0);
}

TEST(Published, Partitions) {
  const auto& parts = published_partitions();
  ASSERT_EQ(parts.size(), 4u);
  const auto sizes = [&](const char* name) {
    std::vector<std::size_t> s;
    for (const auto& block : parts.at(name).members) s.push_back(block.size());
    return s;
  };
  EXPECT_EQ(sizes("sparse-synthetic"), (std::vector<std::size_t>{21, 20, 9}));
  EXPECT_EQ(sizes("adult"), (std::vector<std::size_t>{36, 14}));
  EXPECT_EQ(sizes("dense-synthetic"), (std::vector<std::size_t>{24, 19, 7}));
  EXPECT_EQ(sizes("mushroom"), (std::vector<std::size_t>{23, 12, 12, 3}));
  for (const auto& [name, ca] : parts) EXPECT_EQ(ca.by_measure().size(), 50u) << name;
}
