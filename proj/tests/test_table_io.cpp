#include <etametric/fixtures.hpp>
#include <etametric/table_io.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace etametric;

FiniteSpace parse(const std::string& text) {
  std::istringstream in(text);
  return parse_distance_table(in, "test");
}

TEST(TableIO, MinimalTableParses) {
  const FiniteSpace space = parse(
      "# toy line\n"
      "points: a b c\n"
      "d a b 1\n"
      "d a c 2\n"
      "d b c 1\n");
  ASSERT_EQ(space.size(), 3u);
  EXPECT_EQ(space.cone().dim(), 1u);
  EXPECT_DOUBLE_EQ(space.derived(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(space.derived(1, 0), 1.0);  // symmetric completion
  EXPECT_DOUBLE_EQ(space.derived(0, 0), 0.0);  // diagonal defaults to zero
  EXPECT_DOUBLE_EQ(space.eta(0, 1), 1.0);      // scale defaults to one
}

TEST(TableIO, VectorDistancesAndScaleMirror) {
  const FiniteSpace space = parse(
      "points: x y z\n"
      "d x y 1 0.5\n"
      "d x z 2 025e-2\n"
      "d y z 1 1\n"
      "eta x z 2.5\n"
      "eta y x 1.25\n");
  EXPECT_EQ(space.cone().dim(), 2u);
  EXPECT_EQ(space.distance(0, 2), (Vec{2.0, 0.25}));
  // Explicit cell wins; its transpose mirrors; untouched cells stay at 1.
  EXPECT_DOUBLE_EQ(space.eta(0, 2), 2.5);
  EXPECT_DOUBLE_EQ(space.eta(2, 0), 2.5);
  EXPECT_DOUBLE_EQ(space.eta(1, 0), 1.25);
  EXPECT_DOUBLE_EQ(space.eta(0, 1), 1.25);
  EXPECT_DOUBLE_EQ(space.eta(1, 2), 1.0);
}

void expect_parse_error(const std::string& text, std::size_t line,
                        const std::string& needle) {
  try {
    parse(text);
    FAIL() << "expected parse_error for: " << needle;
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(TableIO, ParseErrorsCarryLineNumbers) {
  expect_parse_error("d a b 1\n", 1, "points");
  expect_parse_error("points: a a\n", 1, "duplicate");
  expect_parse_error("points: a b\nd a q 1\n", 2, "unknown point");
  expect_parse_error("points: a b\nd a b 1\nd b a 2\n", 3, "duplicate");
  expect_parse_error("points: a b\nd a b oops\n", 2, "expected a coordinate");
  expect_parse_error("points: a b\nd a b\n", 2, "no coordinates");
  expect_parse_error("points: a b\nd a b 1\nd a b 1\n", 3, "duplicate");
  expect_parse_error("points: a b\nd a b 1 2\nd b b 1\n", 3, "2 coordinates");
  expect_parse_error("points: a b\nwat a b 1\n", 2, "directive");
  expect_parse_error("points: a b\neta a b 1 2\n", 2, "trailing token");
  expect_parse_error("points: a b\n", 1, "missing distance entry");
  expect_parse_error("points: a b c\nd a b 1\nd a c 1\n", 3, "missing distance entry");
}

TEST(TableIO, ScaleBelowOneFailsAtConstruction) {
  // Not a syntax problem: the table parses and the space constructor
  // rejects the value, so plain data_error, not its parse subclass.
  try {
    parse("points: a b\nd a b 1\neta a b 0.5\n");
    FAIL() << "expected data_error";
  } catch (const parse_error&) {
    FAIL() << "scale range is a data problem, not a parse problem";
  } catch (const data_error& e) {
    EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
  }
}

TEST(TableIO, AllFiniteFixturesRoundTripExactly) {
  for (const std::string& name : fixture_names()) {
    const Fixture fix = fixture(name);
    if (!fix.finite()) continue;
    const FiniteSpace& space = fix.finite_space();

    std::ostringstream first;
    write_distance_table(first, space);
    std::istringstream back(first.str());
    const FiniteSpace reread = parse_distance_table(back, name);

    ASSERT_EQ(reread.size(), space.size()) << name;
    for (std::size_t i = 0; i < space.size(); ++i) {
      EXPECT_EQ(reread.label(i), space.label(i)) << name;
      for (std::size_t j = 0; j < space.size(); ++j) {
        EXPECT_EQ(reread.distance(i, j), space.distance(i, j)) << name;
        EXPECT_EQ(reread.eta(i, j), space.eta(i, j)) << name;
      }
    }
    // Idempotence: writing the reread space reproduces the bytes.
    std::ostringstream second;
    write_distance_table(second, reread);
    EXPECT_EQ(second.str(), first.str()) << name;
  }
}

TEST(TableIO, AsymmetricScalesSurviveTheRoundTrip) {
  const FiniteSpace space = parse(
      "points: a b\n"
      "d a b 1\n"
      "eta a b 2\n"
      "eta b a 3\n"
      "eta a a 1.5\n");
  std::ostringstream out;
  write_distance_table(out, space);
  std::istringstream back(out.str());
  const FiniteSpace reread = parse_distance_table(back, "asym");
  EXPECT_DOUBLE_EQ(reread.eta(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(reread.eta(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(reread.eta(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(reread.eta(1, 1), 1.0);
}

TEST(TableIO, MissingFileRaisesLookup) {
  EXPECT_THROW(load_distance_table("/nonexistent/table.txt"), lookup_error);
  EXPECT_THROW(load_sequence_file("/nonexistent/seq.txt"), lookup_error);
}

TEST(TableIO, SequenceFilesAreOneLabelPerLine) {
  std::istringstream in(
      "# prefix\n"
      "2\n"
      "4\n"
      "\n"
      "6\n");
  const std::vector<std::string> labels = parse_sequence_file(in, "seq");
  EXPECT_EQ(labels, (std::vector<std::string>{"2", "4", "6"}));

  std::istringstream two(" 8 9\n");
  EXPECT_THROW(parse_sequence_file(two, "seq"), parse_error);
  std::istringstream none("# only a comment\n");
  EXPECT_THROW(parse_sequence_file(none, "seq"), parse_error);
}

}  // namespace
