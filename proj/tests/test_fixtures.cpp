#include <etametric/axioms.hpp>
#include <etametric/classify.hpp>
#include <etametric/fixtures.hpp>

#include <gtest/gtest.h>

namespace {

using namespace etametric;

TEST(Fixtures, CatalogListsEveryEntryInOrder) {
  const std::vector<std::string> names = fixture_names();
  ASSERT_EQ(names.size(), 7u);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  for (const std::string& name : names) {
    const Fixture fix = fixture(name);
    EXPECT_EQ(fix.name, name);
    EXPECT_FALSE(fix.summary.empty());
  }
}

TEST(Fixtures, UnknownNameRaisesLookupWithCatalog) {
  try {
    fixture("no_such_space");
    FAIL() << "expected lookup_error";
  } catch (const lookup_error& e) {
    EXPECT_NE(std::string(e.what()).find("three_point_cone"), std::string::npos);
  }
}

TEST(Fixtures, EveryFixturePassesItsAxiomCheck) {
  for (const std::string& name : fixture_names()) {
    const Fixture fix = fixture(name);
    const AxiomReport report = fix.finite()
                                   ? check_axioms(fix.finite_space())
                                   : check_axioms(fix.interval_space());
    EXPECT_TRUE(report.ok()) << name;
    EXPECT_EQ(report.ok(), fix.expected.axioms_pass) << name;
  }
}

TEST(Fixtures, TypeConstantsMatchTheCatalog) {
  for (const char* name : {"three_point_cone", "eta_metric_3pt"}) {
    const Fixture fix = fixture(name);
    ASSERT_TRUE(fix.expected.type_constant.has_value()) << name;
    const Classification c = classify(fix.finite_space().derived_table());
    EXPECT_FALSE(c.is_metric) << name;
    EXPECT_NEAR(c.type_constant, *fix.expected.type_constant, 1e-12) << name;
  }
  EXPECT_NEAR(*fixture("three_point_cone").expected.type_constant, 1000.0 / 680.0, 0.0);
  EXPECT_NEAR(*fixture("eta_metric_3pt").expected.type_constant, 10.0 / 9.0, 1e-15);
}

TEST(Fixtures, ThreePointDistancesAndScales) {
  const FiniteSpace space = fixture("three_point_cone").finite_space();
  ASSERT_EQ(space.size(), 3u);
  EXPECT_EQ(space.distance(0, 1), (Vec{80.0, 0.0}));
  EXPECT_EQ(space.distance(0, 2), (Vec{1000.0, 0.0}));
  EXPECT_EQ(space.distance(1, 2), (Vec{600.0, 0.0}));
  EXPECT_DOUBLE_EQ(space.eta(0, 2), 5.0);
  EXPECT_DOUBLE_EQ(space.eta(0, 1), 4.0);

  FixtureParams params;
  params.alpha = 1.0;
  const FiniteSpace tilted = fixture("three_point_cone", params).finite_space();
  EXPECT_EQ(tilted.distance(0, 1), (Vec{80.0, 80.0}));
  EXPECT_TRUE(check_axioms(tilted).ok());
}

TEST(Fixtures, SentinelSpaceDistances) {
  const FiniteSpace nat = fixture("nat_infinity").finite_space();
  ASSERT_EQ(nat.size(), 65u);
  const auto at = [&](const char* a, const char* b) {
    return nat.derived(*nat.index_of(a), *nat.index_of(b));
  };
  EXPECT_DOUBLE_EQ(at("2", "inf"), 0.5);
  EXPECT_DOUBLE_EQ(at("2", "4"), 0.25);
  EXPECT_DOUBLE_EQ(at("1", "inf"), 1.0);
  EXPECT_DOUBLE_EQ(at("3", "inf"), 1.0);
  EXPECT_DOUBLE_EQ(at("2", "1"), 2.0);
  EXPECT_DOUBLE_EQ(at("3", "5"), 5.0);
  EXPECT_DOUBLE_EQ(nat.eta(0, 1), 3.0);

  FixtureParams params;
  params.truncation = 16;
  const FiniteSpace small = fixture("nat_infinity", params).finite_space();
  EXPECT_EQ(small.size(), 17u);
  EXPECT_TRUE(check_axioms(small).ok());
}

TEST(Fixtures, FunctionSpaceGridSupsAreExactOnDyadicNodes) {
  const FiniteSpace space = fixture("function_space").finite_space();
  ASSERT_EQ(space.size(), 8u);
  const auto at = [&](const char* a, const char* b) {
    return space.derived(*space.index_of(a), *space.index_of(b));
  };
  // d = (sup |f - g|)^2 over the grid; 33 nodes include 1/2 and the
  // maximizers of these pairs.
  EXPECT_DOUBLE_EQ(at("zero", "one"), 1.0);
  EXPECT_DOUBLE_EQ(at("zero", "t-t2"), 0.0625);
  EXPECT_DOUBLE_EQ(at("t", "t2"), 0.0625);
  EXPECT_DOUBLE_EQ(at("zero", "2t-1"), 1.0);
  EXPECT_DOUBLE_EQ(space.eta(*space.index_of("t"), *space.index_of("t2")), 4.0);
}

TEST(Fixtures, IntervalFixturesCarryMapsAndStarts) {
  const Fixture half = fixture("half_map");
  ASSERT_FALSE(half.finite());
  EXPECT_DOUBLE_EQ(half.interval_space().lo(), 0.0);
  EXPECT_DOUBLE_EQ(half.interval_space().hi(), 1024.0);
  ASSERT_TRUE(half.interval_map.has_value());
  EXPECT_DOUBLE_EQ(half.interval_map->apply(1.0), 0.5);
  EXPECT_DOUBLE_EQ(half.default_x0.value(), 1.0);
  ASSERT_TRUE(half.expected.fixed_point.has_value());
  EXPECT_DOUBLE_EQ(*half.expected.fixed_point, 0.0);

  const Fixture square = fixture("square_map");
  EXPECT_DOUBLE_EQ(square.interval_space().hi(), 0.25);
  EXPECT_DOUBLE_EQ(square.interval_map->apply(0.5), 0.25);
  EXPECT_DOUBLE_EQ(square.hr_alpha.value(), 0.25);
}

TEST(Fixtures, SpaceAccessorsRejectTheWrongKind) {
  EXPECT_THROW(fixture("half_map").finite_space(), contract_error);
  EXPECT_THROW(fixture("nat_infinity").interval_space(), contract_error);
}

TEST(Fixtures, LabelsRoundTripThroughIndexOf) {
  for (const std::string& name : fixture_names()) {
    const Fixture fix = fixture(name);
    if (!fix.finite()) continue;
    const FiniteSpace& space = fix.finite_space();
    for (std::size_t i = 0; i < space.size(); ++i)
      EXPECT_EQ(space.index_of(space.label(i)), std::optional<std::size_t>(i)) << name;
    EXPECT_FALSE(space.index_of("definitely-not-a-label").has_value());
  }
}

}  // namespace
