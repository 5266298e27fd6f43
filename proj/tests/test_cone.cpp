#include <etametric/cone.hpp>
#include <etametric/errors.hpp>
#include <etametric/vec.hpp>

#include <gtest/gtest.h>

namespace {

using namespace etametric;

TEST(Vec, ArithmeticAndComparison) {
  const Vec a{1.0, 2.0};
  const Vec b{0.5, -1.0};
  EXPECT_EQ(a + b, (Vec{1.5, 1.0}));
  EXPECT_EQ(a - b, (Vec{0.5, 3.0}));
  EXPECT_EQ(2.0 * a, (Vec{2.0, 4.0}));
  EXPECT_EQ(Vec::zero(2), (Vec{0.0, 0.0}));
  EXPECT_TRUE(a.is_finite());
  EXPECT_FALSE((Vec{std::numeric_limits<double>::infinity(), 0.0}).is_finite());
}

TEST(Vec, DimensionMismatchThrows) {
  const Vec a{1.0, 2.0};
  const Vec b{1.0};
  EXPECT_THROW(a + b, contract_error);
  EXPECT_THROW(a - b, contract_error);
}

TEST(Cone, NormsMatchHandValues) {
  const ConeSpace max_cone = ConeSpace::orthant(2, Norm::max_abs);
  const ConeSpace sum_cone = ConeSpace::orthant(2, Norm::sum_abs);
  const ConeSpace euc_cone = ConeSpace::orthant(2, Norm::euclidean);
  const Vec v{3.0, -4.0};
  EXPECT_DOUBLE_EQ(max_cone.norm(v), 4.0);
  EXPECT_DOUBLE_EQ(sum_cone.norm(v), 7.0);
  EXPECT_DOUBLE_EQ(euc_cone.norm(v), 5.0);
}

TEST(Cone, OrthantOrder) {
  const ConeSpace cone = ConeSpace::orthant(2);
  // 80*(1,0) sits below 6400*(1,0): the witness comparison of the
  // three-point table.
  EXPECT_TRUE(cone.leq(Vec{80.0, 0.0}, Vec{6400.0, 0.0}));
  EXPECT_FALSE(cone.leq(Vec{80.0, 0.0}, Vec{79.0, 0.0}));
  EXPECT_TRUE(cone.contains(Vec{0.0, 0.0}));
  EXPECT_TRUE(cone.contains(Vec{-1e-12, 0.0}));    // inside tolerance
  EXPECT_FALSE(cone.contains(Vec{-1e-6, 0.0}));
  EXPECT_DOUBLE_EQ(cone.membership_slack(Vec{3.0, -1.0}), -1.0);
  EXPECT_DOUBLE_EQ(cone.membership_slack(Vec{3.0, 2.0}), 2.0);
}

TEST(Cone, StrictInteriorNeedsEveryCoordinatePositive) {
  const ConeSpace cone = ConeSpace::orthant(2);
  EXPECT_TRUE(cone.strictly_interior(Vec{1.0, 2.0}, 1e-12));
  EXPECT_FALSE(cone.strictly_interior(Vec{1.0, 0.0}, 1e-12));
  EXPECT_FALSE(cone.strictly_interior(Vec{1.0, -1.0}, 1e-12));
  EXPECT_THROW(cone.strictly_interior(Vec{1.0, 1.0}, 0.0), contract_error);
}

TEST(Cone, GeneratorConeMembership) {
  // The cone spanned by (1,1) and (1,-1) contains (2,0) = (1,1)+(1,-1) and
  // excludes (0,1), which needs a negative weight on (1,-1).
  const ConeSpace cone =
      ConeSpace::from_generators({Vec{1.0, 1.0}, Vec{1.0, -1.0}});
  EXPECT_FALSE(cone.is_orthant());
  EXPECT_TRUE(cone.contains(Vec{2.0, 0.0}));
  EXPECT_TRUE(cone.contains(Vec{1.0, 1.0}));
  EXPECT_TRUE(cone.contains(Vec{3.0, 1.0}));
  EXPECT_FALSE(cone.contains(Vec{0.0, 1.0}));
  EXPECT_FALSE(cone.contains(Vec{-1.0, 0.0}));
  EXPECT_TRUE(cone.leq(Vec{0.0, 0.0}, Vec{1.0, 0.5}));
}

TEST(Cone, DegenerateGeneratorsRejected) {
  EXPECT_THROW(ConeSpace::from_generators({}), contract_error);
  EXPECT_THROW(ConeSpace::from_generators({Vec{1.0, 0.0}, Vec{-1.0, 0.0}}),
               contract_error);
}

TEST(Cone, NormalConstantIsOneForMonotoneNorms) {
  EXPECT_DOUBLE_EQ(ConeSpace::orthant(3, Norm::max_abs).estimate_normal_constant(), 1.0);
  EXPECT_DOUBLE_EQ(ConeSpace::orthant(3, Norm::sum_abs).estimate_normal_constant(), 1.0);
}

TEST(Cone, WideConeNormalConstantExceedsOne) {
  // With rays (1,3) and (1,-3), x = (1,3) sits below y = (2,0) in the cone
  // order yet has the larger max norm (3 vs 2), so K >= 1.5. The sampled
  // lower estimate must land clearly above 1.
  const ConeSpace cone =
      ConeSpace::from_generators({Vec{1.0, 3.0}, Vec{1.0, -3.0}}, Norm::max_abs);
  EXPECT_GT(cone.estimate_normal_constant(20000, 7), 1.2);
}

TEST(Cone, EstimateIsDeterministicInSeed) {
  const ConeSpace cone =
      ConeSpace::from_generators({Vec{1.0, 3.0}, Vec{1.0, -3.0}}, Norm::max_abs);
  EXPECT_DOUBLE_EQ(cone.estimate_normal_constant(500, 11),
                   cone.estimate_normal_constant(500, 11));
}

}  // namespace
