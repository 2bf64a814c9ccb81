#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "core/errors.hpp"
#include "core/fuzzy_set.hpp"
#include "core/grey.hpp"
#include "core/pgm.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace fifs;

TEST_CASE("grid: points, cells, flat indexing") {
  const Grid g = Grid::plane(4, 2, {0.0, 0.0}, {1.0, 1.0});
  CHECK(g.points(0) == 5);
  CHECK(g.points(1) == 3);
  CHECK(g.point_count() == 15);
  CHECK(g.cell_size(0) == 0.25);
  CHECK(g.cell_size(1) == 0.5);
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    CHECK(g.flat(g.unflat(i)) == i);
}

TEST_CASE("grid: snap picks the nearest point, ties to the lower index") {
  const Grid g = Grid::line(4, 0.0, 1.0);  // points at 0, .25, .5, .75, 1
  std::int64_t flat = -1;
  REQUIRE(g.snap({0.3, 0.0}, flat));
  CHECK(flat == 1);
  REQUIRE(g.snap({0.375, 0.0}, flat));  // exact midpoint
  CHECK(flat == 1);
  REQUIRE(g.snap({0.3751, 0.0}, flat));
  CHECK(flat == 2);
  REQUIRE(g.snap({1.0, 0.0}, flat));
  CHECK(flat == 4);
  CHECK_FALSE(g.snap({1.2, 0.0}, flat));
  CHECK_FALSE(g.snap({-0.2, 0.0}, flat));
  // Half a cell beyond the face still snaps onto the face.
  REQUIRE(g.snap({1.125, 0.0}, flat));
  CHECK(flat == 4);
}

TEST_CASE("grid: validation rejects degenerate shapes") {
  Grid g = Grid::line(4, 0.0, 1.0);
  g.cells[0] = 0;
  CHECK_THROWS_AS(g.validate(), DomainError);
  CHECK_THROWS_AS(Grid::line(4, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(Grid::plane(4, 0, {0.0, 0.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("fuzzy set: cuts against a hand-built set") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  const LevelScale s{4};
  FuzzySet u(g, s);
  u.set(0, 4);
  u.set(1, 2);
  u.set(3, 1);
  CHECK(u.support() == std::vector<std::int64_t>{0, 1, 3});
  CHECK(u.alpha_cut(0) == std::vector<std::int64_t>{0, 1, 3});
  CHECK(u.alpha_cut(1) == std::vector<std::int64_t>{0, 1, 3});
  CHECK(u.alpha_cut(2) == std::vector<std::int64_t>{0, 1});
  CHECK(u.alpha_cut(3) == std::vector<std::int64_t>{0});
  CHECK(u.alpha_cut(4) == std::vector<std::int64_t>{0});
  CHECK(u.is_normal());
  CHECK_FALSE(u.empty_support());
}

TEST_CASE("fuzzy set: FZY1 payload round-trips exactly") {
  testgen::Rng rng(7001);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = trial % 2 == 0 ? Grid::line(9, -1.0, 2.0)
                                  : Grid::plane(6, 5, {0.5, -0.25}, {2.0, 1.5});
    const FuzzySet u = testgen::random_fuzzy_set(rng, g, LevelScale{12});
    const FuzzySet back = FuzzySet::parse_fzy(u.format_fzy());
    CHECK(back == u);
  }
}

TEST_CASE("fuzzy set: FZY1 writer layout") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  FuzzySet u(g, LevelScale{4});
  u.set(0, 4);
  u.set(2, 1);
  CHECK(u.format_fzy() == "FZY1\n5 4\n0 1\n4 0 1 0 0\n");
}

TEST_CASE("fuzzy set: FZY1 parser rejects malformed input") {
  const char* good = "FZY1\n5 4\n0 1\n4 0 1 0 0\n";
  CHECK_NOTHROW(FuzzySet::parse_fzy(good));
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY2\n5 4\n0 1\n4 0 1 0 0\n"),
                  ParseError);
  // level above L
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n5 4\n0 1\n5 0 1 0 0\n"),
                  ParseError);
  // short payload
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n5 4\n0 1\n4 0 1 0\n"), ParseError);
  // trailing data
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n5 4\n0 1\n4 0 1 0 0 9\n"),
                  ParseError);
  // empty support
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n5 4\n0 1\n0 0 0 0 0\n"),
                  ParseError);
  // nobody at the top level
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n5 4\n0 1\n3 0 1 0 0\n"),
                  ParseError);
  // one point per axis is not a grid
  CHECK_THROWS_AS(FuzzySet::parse_fzy("FZY1\n1 4\n0 1\n4\n"), ParseError);
}

TEST_CASE("zadeh image matches a direct per-point max") {
  testgen::Rng rng(7002);
  const Grid g = Grid::plane(12, 12, {0.0, 0.0}, {1.0, 1.0});
  const LevelScale s{8};
  for (int trial = 0; trial < 30; ++trial) {
    const FuzzySet u = testgen::random_fuzzy_set(rng, g, s);
    const AffineMap f = testgen::random_contraction(rng, g);
    const FuzzySet img =
        zadeh_image([&](const Vec& x) { return f.apply(x); }, u);

    std::map<std::int64_t, int> expect;
    for (std::int64_t i : u.support()) {
      std::int64_t y = -1;
      REQUIRE(g.snap(f.apply(world_point(g, i)), y));
      expect[y] = std::max(expect[y], u.at(i));
    }
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      const auto it = expect.find(i);
      CHECK(img.at(i) == (it == expect.end() ? 0 : it->second));
    }
  }
}

TEST_CASE("zadeh image reports points leaving the box") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  FuzzySet u(g, LevelScale{4});
  u.set(4, 4);
  CHECK_THROWS_AS(
      zadeh_image([](const Vec& x) { return Vec{x[0] + 1.0, 0.0}; }, u),
      DomainError);
}

TEST_CASE("pointwise max and restrict/extend round-trip") {
  testgen::Rng rng(7003);
  const Grid g = Grid::plane(8, 8, {0.0, 0.0}, {1.0, 1.0});
  const LevelScale s{8};
  const FuzzySet a = testgen::random_fuzzy_set(rng, g, s);
  const FuzzySet b = testgen::random_fuzzy_set(rng, g, s);
  const FuzzySet m = pointwise_max({a, b});
  for (std::int64_t i = 0; i < g.point_count(); ++i)
    CHECK(m.at(i) == std::max(a.at(i), b.at(i)));

  const IndexBox box{{0, 0}, {8, 8}};
  CHECK(extend_to(restrict_to(a, box), g, box) == a);
}

TEST_CASE("grey threshold: cut identity against apply_grey") {
  testgen::Rng rng(7004);
  const Grid g = Grid::line(20, 0.0, 1.0);
  const LevelScale s{10};
  for (int trial = 0; trial < 200; ++trial) {
    const GreyLevelMap rho = testgen::random_grey(rng, s.L);
    const FuzzySet u = testgen::random_fuzzy_set(rng, g, s);
    const FuzzySet composed = apply_grey(rho, u);
    for (int j = 0; j <= s.L; ++j) {
      const int m = grey_threshold(rho, j);
      const std::vector<std::int64_t> via_threshold =
          m == kEmptyCut ? std::vector<std::int64_t>{} : u.alpha_cut(m);
      CHECK(composed.alpha_cut(j) == via_threshold);
    }
  }
}

TEST_CASE("grey maps: validation and admissibility") {
  const LevelScale s{4};
  CHECK_THROWS_AS(GreyLevelMap::from_levels(s, {1, 1, 1, 1, 1}).validate(),
                  DomainError);  // rho(0) != 0
  CHECK_THROWS_AS(GreyLevelMap::from_levels(s, {0, 2, 1, 3, 4}).validate(),
                  DomainError);  // not monotone
  GreySystem gs;
  gs.maps = {GreyLevelMap::half_scale(s)};
  CHECK_FALSE(gs.admissible());
  CHECK_THROWS_AS(gs.validate(), DomainError);
  gs.maps.push_back(GreyLevelMap::identity(s));
  CHECK(gs.admissible());
  CHECK(gs.top_preserving_branch() == 1);
}

TEST_CASE("pgm: 1D ramp renders one row, top level = 255") {
  const Grid g = Grid::line(4, 0.0, 1.0);
  FuzzySet u(g, LevelScale{4});
  for (std::int64_t i = 0; i <= 4; ++i) u.set(i, static_cast<int>(4 - i));
  CHECK(format_pgm(u) == "P2\n5 1\n255\n255 191 128 64 0\n");
}

TEST_CASE("pgm: row zero carries the highest y index") {
  const Grid g = Grid::plane(1, 1, {0.0, 0.0}, {1.0, 1.0});
  FuzzySet u(g, LevelScale{2});
  u.set(g.flat({0, 1}), 2);  // top-left corner of the image
  u.set(g.flat({1, 0}), 1);
  CHECK(format_pgm(u) == "P2\n2 2\n255\n255 0\n0 128\n");
}
