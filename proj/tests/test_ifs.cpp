#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/hutchinson.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace fifs;

namespace {

// Spectral norm by power iteration on A^T A, independent of the closed form.
double norm2_reference(const AffineMap& m) {
  double v0 = 0.6, v1 = 0.8;
  for (int it = 0; it < 200; ++it) {
    const double w0 = m.a[0][0] * v0 + m.a[0][1] * v1;
    const double w1 = m.a[1][0] * v0 + m.a[1][1] * v1;
    double u0 = m.a[0][0] * w0 + m.a[1][0] * w1;
    double u1 = m.a[0][1] * w0 + m.a[1][1] * w1;
    const double n = std::hypot(u0, u1);
    if (n == 0.0) return 0.0;
    v0 = u0 / n;
    v1 = u1 / n;
  }
  const double w0 = m.a[0][0] * v0 + m.a[0][1] * v1;
  const double w1 = m.a[1][0] * v0 + m.a[1][1] * v1;
  return std::hypot(w0, w1);
}

FuzzyIFS halving_system(int cells, int L) {
  FuzzyIFS S;
  S.grid = Grid::line(cells, 0.0, 1.0);
  S.scale = LevelScale{L};
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  S.maps.push_back(ContractionMap{f, {}});
  S.greys.maps.push_back(GreyLevelMap::identity(S.scale));
  S.validate();
  return S;
}

FuzzyIFS sierpinski_system(int cells, int L, bool dim_third) {
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

}  // namespace

TEST_CASE("affine: composition and operator norm") {
  AffineMap f, g;
  f.a = {{{0.5, 0.1}, {0.0, 0.3}}};
  f.b = {0.2, 0.1};
  g.a = {{{0.2, 0.0}, {0.4, 0.25}}};
  g.b = {0.05, 0.0};
  const AffineMap fg = f.after(g);
  const Vec x{0.3, 0.7};
  const Vec direct = f.apply(g.apply(x));
  const Vec composed = fg.apply(x);
  CHECK(composed[0] == doctest::Approx(direct[0]).epsilon(1e-15));
  CHECK(composed[1] == doctest::Approx(direct[1]).epsilon(1e-15));

  testgen::Rng rng(7201);
  std::uniform_real_distribution<double> c(-0.6, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    AffineMap m;
    m.a = {{{c(rng), c(rng)}, {c(rng), c(rng)}}};
    CHECK(m.operator_norm2() ==
          doctest::Approx(norm2_reference(m)).epsilon(1e-9));
  }
}

TEST_CASE("contraction witnesses: synthesis per pseudometric") {
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.25}}};
  const ContractionMap cm{f, {}};

  auto c_euclid = cm.linear_factor_for(Pseudometric::euclid());
  REQUIRE(c_euclid.has_value());
  CHECK(*c_euclid == doctest::Approx(0.5));

  auto c_p0 = cm.linear_factor_for(Pseudometric::projection(0));
  REQUIRE(c_p0.has_value());
  CHECK(*c_p0 == 0.5);
  auto c_p1 = cm.linear_factor_for(Pseudometric::projection(1));
  REQUIRE(c_p1.has_value());
  CHECK(*c_p1 == 0.25);

  // A shear couples the axes: the first projection alone admits no linear
  // factor, but the combined metric still does.
  AffineMap sheared = f;
  sheared.a[0][1] = 0.2;
  const ContractionMap cs{sheared, {}};
  CHECK_FALSE(cs.linear_factor_for(Pseudometric::projection(0)).has_value());
  const Pseudometric both = Pseudometric::max_of(
      {Pseudometric::projection(0), Pseudometric::projection(1)});
  CHECK_THROWS_AS(cs.witness_for(Pseudometric::projection(0)), DomainError);

  auto c_w = cm.linear_factor_for(Pseudometric::weighted_max({1.0, 2.0}));
  REQUIRE(c_w.has_value());
  CHECK(*c_w == doctest::Approx(0.5));

  auto c_max = cm.linear_factor_for(both);
  REQUIRE(c_max.has_value());
  CHECK(*c_max == 0.5);

  // Declared witnesses take precedence over synthesis.
  ContractionMap declared = cm;
  declared.declared.emplace("euclid", ComparisonFunction::linear(0.7));
  CHECK(declared.witness_for(Pseudometric::euclid()).describe() ==
        "linear c=0.7");

  AffineMap expanding;
  expanding.a = {{{1.5, 0.0}, {0.0, 0.5}}};
  const ContractionMap ce{expanding, {}};
  CHECK_THROWS_AS(ce.witness_for(Pseudometric::euclid()), DomainError);
}

TEST_CASE("witness check: sampled pairs obey or break the bound") {
  const Grid g = Grid::plane(16, 16, {0.0, 0.0}, {1.0, 1.0});
  AffineMap f;
  f.a = {{{0.45, 0.0}, {0.0, 0.45}}};
  f.b = {0.1, 0.1};
  const Pseudometric d = Pseudometric::euclid();

  const WitnessReport ok =
      verify_matkowski(f, d, ComparisonFunction::linear(0.45), g, 400, 99);
  CHECK(ok.samples == 400);
  CHECK(ok.violations == 0);
  CHECK(ok.worst_slack >= -1e-12);

  const WitnessReport broken =
      verify_matkowski(f, d, ComparisonFunction::linear(0.3), g, 400, 99);
  CHECK(broken.violations > 0);
  CHECK(broken.worst_slack < 0.0);
}

TEST_CASE("crisp fixed set: halving collapses to the origin") {
  const Grid g = Grid::line(16, 0.0, 1.0);
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  const auto fixed = crisp_fixed_set(g, {f});
  CHECK(fixed == std::vector<std::int64_t>{0});
}

TEST_CASE("crisp fixed set: two-map Cantor-style system keeps both ends") {
  const Grid g = Grid::line(81, 0.0, 1.0);
  AffineMap lo, hi;
  lo.a = {{{1.0 / 3.0, 0.0}, {0.0, 0.0}}};
  hi.a = lo.a;
  hi.b = {2.0 / 3.0, 0.0};
  const auto fixed = crisp_fixed_set(g, {lo, hi});
  REQUIRE(!fixed.empty());
  CHECK(fixed.front() == 0);
  CHECK(fixed.back() == 81);
  // Middle third stays excluded: indices 28..53 sit strictly inside (1/3,
  // 2/3) on this grid.
  for (std::int64_t i : fixed) CHECK((i <= 27 || i >= 54));
}

TEST_CASE("fuzzy hutchinson: the two routes agree exactly") {
  testgen::Rng rng(7202);
  const Grid g = Grid::plane(16, 16, {0.0, 0.0}, {1.0, 1.0});
  for (int trial = 0; trial < 50; ++trial) {
    const FuzzyIFS S = testgen::random_system(rng, g, 1 + trial % 3, 8);
    const FuzzySet u = testgen::random_fuzzy_set(rng, g, S.scale);
    CHECK(fuzzy_hutchinson_cuts(S, u) == fuzzy_hutchinson_pointwise(S, u));
  }
}

TEST_CASE("fuzzy hutchinson: grey maps dim their branch") {
  const FuzzyIFS S = sierpinski_system(16, 16, true);
  const FuzzySet u = FuzzySet::constant(S.grid, S.scale, 16);
  const FuzzySet img = fuzzy_hutchinson_pointwise(S, u);
  // Branch 3 copies the square to the upper half at half grey; branches 1-2
  // cover the lower half at full grey and win the overlap row.
  CHECK(img.at(S.grid.flat({0, 0})) == 16);
  CHECK(img.at(S.grid.flat({0, 16})) == 8);
  CHECK(img.at(S.grid.flat({0, 8})) == 16);
  CHECK(img.at(S.grid.flat({8, 12})) == 8);
}

TEST_CASE("iteration: halving marches a Dirac point to the origin") {
  const FuzzyIFS S = halving_system(64, 4);
  FuzzySet u = FuzzySet::dirac(S.grid, S.scale, 64);
  const MetricChoice mc{DistanceKind::Dhf, Pseudometric::euclid()};
  const FixpointResult r = iterate_to_fixpoint(S, u, mc, 0.0, 100);
  CHECK(r.fixed == FuzzySet::dirac(S.grid, S.scale, 0));
  CHECK(r.certificate == 0.0);
  REQUIRE(!r.trace.rows.empty());
  // Distances halve while the point is on even indices, then the tail snaps.
  CHECK(r.trace.rows.front().dist == 0.5);

  CHECK_THROWS_AS(iterate_to_fixpoint(S, u, mc, 0.0, 3), ConvergenceError);
  try {
    iterate_to_fixpoint(S, u, mc, 0.0, 3);
  } catch (const ConvergenceError& e) {
    CHECK(e.trace.size() == 3);
  }
}

TEST_CASE("iteration: default tolerance stops within one cell diagonal") {
  const FuzzyIFS S = sierpinski_system(32, 8, false);
  const FuzzySet u0 =
      FuzzySet::dirac(S.grid, S.scale, S.grid.flat({0, 0}));
  const MetricChoice mc{DistanceKind::Dhf, Pseudometric::euclid()};
  const FixpointResult r =
      iterate_to_fixpoint(S, u0, mc, S.grid.cell_diagonal(), 100);
  CHECK(r.certificate <= S.grid.cell_diagonal());
  CHECK(r.fixed.is_normal());
  // One row per operator application: the advancing steps plus the final
  // certificate row.
  CHECK(r.trace.rows.size() == static_cast<size_t>(r.iterations) + 1);
}

TEST_CASE("invariant box: halving grows down to the origin and stops") {
  const Grid g = Grid::line(64, 0.0, 1.0);
  AffineMap f;
  f.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  const InvariantBox ib = invariant_box(g, {f}, IndexBox{{64, 0}, {64, 0}});
  CHECK(ib.box.lo[0] == 0);
  CHECK(ib.box.hi[0] == 64);

  // A translation pushing mass past the face has no room to grow.
  AffineMap out;
  out.a = {{{0.5, 0.0}, {0.0, 0.0}}};
  out.b = {0.75, 0.0};
  CHECK_THROWS_AS(invariant_box(g, {out}, IndexBox{{32, 0}, {32, 0}}),
                  DomainError);
}

TEST_CASE("fiber diameter: shrinks along deeper prefixes") {
  const FuzzyIFS S = sierpinski_system(64, 8, false);
  std::vector<AffineMap> maps;
  for (const auto& cm : S.maps) maps.push_back(cm.map);
  const IndexBox box{{0, 0}, {64, 64}};
  const Pseudometric d = Pseudometric::euclid();
  const double d0 = fiber_diameter(S.grid, maps, {}, box, d);
  const double d1 = fiber_diameter(S.grid, maps, {1}, box, d);
  const double d3 = fiber_diameter(S.grid, maps, {1, 2, 3}, box, d);
  CHECK(d0 == doctest::Approx(std::sqrt(2.0)));
  CHECK(d1 <= 0.5 * d0 + 2.0 * S.grid.cell_diagonal());
  CHECK(d3 <= 0.125 * d0 + 2.0 * S.grid.cell_diagonal());
  CHECK(d3 < d1);
}

TEST_CASE("system validation: mismatched pieces are rejected") {
  FuzzyIFS S = halving_system(16, 4);
  S.greys.maps.push_back(GreyLevelMap::identity(S.scale));
  CHECK_THROWS_AS(S.validate(), DomainError);

  FuzzyIFS S2 = halving_system(16, 4);
  S2.greys.maps[0] = GreyLevelMap::identity(LevelScale{8});
  CHECK_THROWS_AS(S2.validate(), DomainError);

  FuzzyIFS S3 = halving_system(16, 4);
  S3.maps[0].map.a[1][1] = 0.5;  // touches the second axis of a 1D system
  CHECK_THROWS_AS(S3.validate(), DomainError);
}
