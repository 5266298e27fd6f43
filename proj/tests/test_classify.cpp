#include <etametric/classify.hpp>
#include <etametric/fixtures.hpp>

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace etametric;

RealTable three_point_eta_table() {
  RealTable t = RealTable::zeros({"1", "2", "3"});
  const double d[3][3] = {{0.0, 0.2, 0.5}, {0.2, 0.0, 0.25}, {0.5, 0.25, 0.0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t.at(i, j) = d[i][j];
  return t;
}

TEST(Classify, ThreePointTableIsMetricType) {
  const Classification c = classify(three_point_eta_table());
  EXPECT_FALSE(c.is_metric);
  EXPECT_NEAR(c.type_constant, 10.0 / 9.0, 1e-12);
  EXPECT_EQ(c.witness, (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(c.witness_lhs, 0.5);
  EXPECT_NEAR(c.witness_rhs, 0.45, 1e-15);
  EXPECT_GT(c.witness_lhs, c.witness_rhs);
}

TEST(Classify, MinimalScaleTableOnThreePoints) {
  const RealTable eta = minimal_eta(three_point_eta_table());
  EXPECT_NEAR(eta.at(0, 2), 10.0 / 9.0, 1e-12);
  EXPECT_DOUBLE_EQ(eta.at(2, 0), eta.at(0, 2));
  EXPECT_DOUBLE_EQ(eta.at(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(eta.at(1, 2), 1.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(eta.at(i, i), 1.0);
}

TEST(Classify, GenuineMetricClassifiesAsMetric) {
  RealTable t = RealTable::zeros({"a", "b", "c", "d"});
  const auto set = [&](std::size_t i, std::size_t j, double v) {
    t.at(i, j) = v;
    t.at(j, i) = v;
  };
  // Points on a line at 1, 2, 4, 8.
  set(0, 1, 1.0);
  set(0, 2, 3.0);
  set(0, 3, 7.0);
  set(1, 2, 2.0);
  set(1, 3, 6.0);
  set(2, 3, 4.0);
  const Classification c = classify(t);
  EXPECT_TRUE(c.is_metric);
  EXPECT_DOUBLE_EQ(c.type_constant, 1.0);
  const RealTable eta = minimal_eta(t);
  for (double v : eta.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Classify, ZeroIntermediateSumUnderPositiveDistanceIsInfeasible) {
  RealTable t = RealTable::zeros({"a", "b", "c"});
  t.at(0, 1) = 1.0;
  t.at(1, 0) = 1.0;
  // d(a,c) = d(c,b) = 0 while d(a,b) = 1: no finite scale can help.
  EXPECT_THROW(minimal_eta(t), infeasible_error);
  EXPECT_THROW(classify(t), infeasible_error);
}

TEST(Classify, MalformedTablesAreRejected) {
  RealTable diag = RealTable::zeros({"a", "b"});
  diag.at(0, 0) = 0.5;
  EXPECT_THROW(minimal_eta(diag), data_error);

  RealTable asym = RealTable::zeros({"a", "b"});
  asym.at(0, 1) = 1.0;
  asym.at(1, 0) = 2.0;
  EXPECT_THROW(minimal_eta(asym), data_error);

  RealTable neg = RealTable::zeros({"a", "b"});
  neg.at(0, 1) = -1.0;
  neg.at(1, 0) = -1.0;
  EXPECT_THROW(minimal_eta(neg), data_error);
}

TEST(Classify, SubstitutingMinimalScaleSatisfiesTheTriangle) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + std::size_t(rng() % 3);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    RealTable t = RealTable::zeros(labels);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = dist(rng);
        t.at(i, j) = v;
        t.at(j, i) = v;
      }
    const RealTable eta = minimal_eta(t);
    const FiniteSpace space = FiniteSpace::from_tables(
        labels, ConeSpace::orthant(1),
        [&](std::size_t i, std::size_t j) { return Vec{t.at(i, j)}; },
        [&](std::size_t i, std::size_t j) { return eta.at(i, j); });
    EXPECT_TRUE(check_axioms(space).ok()) << "trial " << trial;
  }
}

double fold_bound(const DerivedEtaMetric<FiniteSpace>& m, std::size_t x, std::size_t y,
                  const std::vector<std::size_t>& chain) {
  // Apply the scaled triangle right to left: the innermost hop first, each
  // step wrapping the remainder in its own scale factor.
  double acc = m(chain.back(), y);
  for (std::size_t j = chain.size() - 1; j-- > 0;)
    acc = m.eta(chain[j], y) * (m(chain[j], chain[j + 1]) + acc);
  return m.eta(x, y) * (m(x, chain[0]) + acc);
}

TEST(Classify, ChainBoundMatchesFoldOracleExhaustivelyOnThreePoints) {
  for (const char* name : {"three_point_cone", "eta_metric_3pt"}) {
    const FiniteSpace space = fixture(name).finite_space();
    const DerivedEtaMetric<FiniteSpace> m = derive_eta_metric(space);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t len = 2; len <= 4; ++len) {
          std::vector<std::size_t> chain(len, 0);
          while (true) {
            const double lib = chain_triangle_bound(m, x, y, chain);
            const double oracle = fold_bound(m, x, y, chain);
            EXPECT_NEAR(lib, oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
            // The bound really bounds the distance.
            EXPECT_GE(lib, m(x, y) - 1e-9);
            std::size_t pos = 0;
            while (pos < len && ++chain[pos] == 3) chain[pos++] = 0;
            if (pos == len) break;
          }
        }
  }
}

TEST(Classify, ChainBoundNeedsTwoIntermediates) {
  const FiniteSpace space = fixture("eta_metric_3pt").finite_space();
  const DerivedEtaMetric<FiniteSpace> m = derive_eta_metric(space);
  EXPECT_THROW(chain_triangle_bound(m, 0, 2, std::vector<std::size_t>{1}),
               contract_error);
}

}  // namespace
