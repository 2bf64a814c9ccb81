#include <algorithm>
#include <vector>

#include "core/codespace.hpp"
#include "core/distances.hpp"
#include "core/errors.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace fifs;

namespace {

FuzzyIFS sierpinski(int cells, int L, bool dim_third) {
  FuzzyIFS S;
  S.grid = Grid::plane(cells, cells, {0.0, 0.0}, {1.0, 1.0});
  S.scale = LevelScale{L};
  const Vec shifts[3] = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
  for (const Vec& b : shifts) {
    AffineMap f;
    f.a = {{{0.5, 0.0}, {0.0, 0.5}}};
    f.b = b;
    S.maps.push_back(ContractionMap{f, {}});
    S.greys.maps.push_back(GreyLevelMap::identity(S.scale));
  }
  if (dim_third) S.greys.maps[2] = GreyLevelMap::half_scale(S.scale);
  S.validate();
  return S;
}

// Partial grey value computed the slow way: apply the tables innermost
// first, one full pass per prefix length.
std::vector<int> partials_reference(const GreySystem& gs, const Address& a) {
  std::vector<int> out;
  for (size_t n = 1; n <= a.symbols.size(); ++n) {
    int v = gs.maps[0].scale.L;
    for (size_t i = n; i-- > 0;)
      v = gs.maps[static_cast<size_t>(a.symbols[i] - 1)].apply(v);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("address: both spellings, validation") {
  CHECK(Address::parse("1213", 3).symbols == std::vector<int>{1, 2, 1, 3});
  CHECK(Address::parse("1,2,1,3", 3).symbols == std::vector<int>{1, 2, 1, 3});
  CHECK(Address::parse("12", 2).str() == "12");
  CHECK(Address::parse("", 3).depth() == 0);  // the root address
  CHECK_THROWS_AS(Address::parse("104", 3), ParseError);
  CHECK_THROWS_AS(Address::parse("14", 3), ParseError);
  CHECK_THROWS_AS(Address::parse("1,,2", 3), ParseError);
}

TEST_CASE("grey partials: composite fold equals sequential application") {
  testgen::Rng rng(7301);
  std::uniform_int_distribution<int> klen(1, 30);
  std::uniform_int_distribution<int> branches(1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = branches(rng);
    const GreySystem gs = testgen::random_grey_system(rng, k, 12);
    Address a;
    std::uniform_int_distribution<int> sym(1, k);
    const int len = klen(rng);
    for (int i = 0; i < len; ++i) a.symbols.push_back(sym(rng));

    const std::vector<int> fast = grey_partials(gs, a);
    CHECK(fast == partials_reference(gs, a));

    // Nonincreasing, and zero absorbs.
    for (size_t i = 1; i < fast.size(); ++i) {
      CHECK(fast[i] <= fast[i - 1]);
      if (fast[i - 1] == 0) CHECK(fast[i] == 0);
    }
  }
}

TEST_CASE("grey limit: records the last level change") {
  const LevelScale s{16};
  GreySystem gs;
  gs.maps = {GreyLevelMap::identity(s), GreyLevelMap::half_scale(s)};

  Address all_id;
  all_id.symbols = {1, 1, 1, 1};
  CHECK(grey_limit(gs, all_id).level == 16);
  CHECK(grey_limit(gs, all_id).stabilized_at == 0);

  Address halve_twice;
  halve_twice.symbols = {2, 2, 1, 1};
  const GreyLimit gl = grey_limit(gs, halve_twice);
  CHECK(gl.level == 4);
  CHECK(gl.stabilized_at == 2);
}

TEST_CASE("project: composed map, snapped point, grey level") {
  const FuzzyIFS S = sierpinski(64, 16, true);
  Address a;
  a.symbols = {2, 1, 3};
  const ProjectedPoint p = project(S, a, {0.5, 0.5});
  // f2(f1(f3(0.5, 0.5))) = f2(f1(0.25, 0.75)) = f2(0.125, 0.375)
  CHECK(p.world[0] == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(p.world[1] == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(p.snapped == S.grid.flat({36, 12}));
  // One pass through the dimming branch: 16 -> 8.
  CHECK(p.level == 8);

  Address empty;
  const ProjectedPoint root = project(S, empty, {0.5, 0.5});
  CHECK(root.level == 16);
  CHECK(root.snapped == S.grid.flat({32, 32}));
}

TEST_CASE("projection attractor: single-branch system lands on one point") {
  FuzzyIFS S;
  S.grid = Grid::line(1024, 0.0, 1.0);
  S.scale = LevelScale{16};
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  S.maps.push_back(ContractionMap{f, {}});
  S.greys.maps.push_back(GreyLevelMap::identity(S.scale));
  S.validate();

  const ProjectionResult r = attractor_via_projection(S, 5, {0.5, 0.0});
  CHECK(r.addresses == 1);
  CHECK(r.pruned == 0);
  // 0.5 / 2^5 = 1/64 -> grid index 16 of 1024.
  CHECK(r.set.support() == std::vector<std::int64_t>{16});
  CHECK(r.set.at(16) == 16);
  CHECK(r.nonstabilized_max_level == 0);
  CHECK(r.spatial_error_bound ==
        doctest::Approx(std::pow(0.5, 5) * 1.0 + S.grid.cell_diagonal()));
}

TEST_CASE("projection attractor: agrees with fixed-point iteration") {
  const FuzzyIFS S = sierpinski(64, 16, true);
  const ProjectionResult pr = attractor_via_projection(S, 9, {0.5, 0.5});

  const FuzzySet u0 =
      FuzzySet::dirac(S.grid, S.scale, S.grid.flat({0, 0}));
  const MetricChoice mc{DistanceKind::Dhf, Pseudometric::euclid()};
  const FixpointResult fr = iterate_to_fixpoint(S, u0, mc, 0.0, 200);

  const double gap =
      fuzzy_hausdorff(Pseudometric::euclid(), pr.set, fr.fixed);
  CHECK(gap <= pr.spatial_error_bound + 2.0 * S.grid.cell_diagonal() + 2.0 / 16.0);
}

TEST_CASE("projection attractor: budget guard and zero pruning") {
  FuzzyIFS S = sierpinski(32, 8, false);
  CHECK_THROWS_AS(attractor_via_projection(S, 30, {0.5, 0.5}, 1000),
                  BudgetError);

  // Third branch dead at every level: its subtrees prune away.
  std::vector<int> dead(static_cast<size_t>(S.scale.L) + 1, 0);
  S.greys.maps[2] = GreyLevelMap::from_levels(S.scale, dead);
  S.validate();
  const ProjectionResult r = attractor_via_projection(S, 6, {0.5, 0.5});
  CHECK(r.pruned > 0);
  CHECK(r.addresses < 729);
  for (std::int64_t i : r.set.support()) {
    const Vec p = world_point(S.grid, i);
    CHECK(p[1] <= 0.5 + 1e-12);  // upper-half copies never survive
  }
}

TEST_CASE("projection attractor: tail stability metadata") {
  // All branches keep the top level: every address value is already final.
  const FuzzyIFS all_id = sierpinski(32, 8, false);
  CHECK(attractor_via_projection(all_id, 4, {0.5, 0.5})
            .nonstabilized_max_level == 0);

  // A dimming branch keeps deep values ambiguous forever: the identity tail
  // holds a leaf at the top level while half-scale tails drag copies of it
  // down, so the flag never clears regardless of depth.
  const LevelScale s{8};
  FuzzyIFS S;
  S.grid = Grid::line(64, 0.0, 1.0);
  S.scale = s;
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  S.maps.push_back(ContractionMap{f, {}});
  S.greys.maps.push_back(GreyLevelMap::identity(s));
  AffineMap g;
  g.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  g.b = {0.5, 0.0};
  S.maps.push_back(ContractionMap{g, {}});
  S.greys.maps.push_back(GreyLevelMap::half_scale(s));
  S.validate();

  const ProjectionResult shallow = attractor_via_projection(S, 2, {0.5, 0.0});
  const ProjectionResult deep = attractor_via_projection(S, 8, {0.5, 0.0});
  CHECK(shallow.nonstabilized_max_level == s.L);
  CHECK(deep.nonstabilized_max_level == s.L);
}
