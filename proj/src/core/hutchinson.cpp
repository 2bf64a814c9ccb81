#include "core/hutchinson.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "core/errors.hpp"

namespace fifs {

std::optional<double> ContractionMap::linear_factor_for(
    const Pseudometric& d) const {
  const auto& A = map.a;
  switch (d.kind()) {
    case Pseudometric::Kind::Euclid:
      return map.operator_norm2();
    case Pseudometric::Kind::Projection: {
      const int ax = d.axis();
      // |(A delta)_ax| <= c |delta_ax| holds for all delta only when the row
      // touches no other coordinate.
      if (A[static_cast<size_t>(ax)][static_cast<size_t>(1 - ax)] != 0.0)
        return std::nullopt;
      return std::abs(A[static_cast<size_t>(ax)][static_cast<size_t>(ax)]);
    }
    case Pseudometric::Kind::WeightedMax: {
      const auto& w = d.weights();
      double c = 0.0;
      for (int i = 0; i < 2; ++i) {
        if (w[static_cast<size_t>(i)] == 0.0) {
          continue;  // axis i is invisible to the metric
        }
        double row = 0.0;
        for (int j = 0; j < 2; ++j) {
          const double aij = std::abs(A[static_cast<size_t>(i)][static_cast<size_t>(j)]);
          if (aij == 0.0) continue;
          if (w[static_cast<size_t>(j)] == 0.0) return std::nullopt;
          row += w[static_cast<size_t>(i)] * aij / w[static_cast<size_t>(j)];
        }
        c = std::max(c, row);
      }
      return c;
    }
    case Pseudometric::Kind::MaxOf: {
      double c = 0.0;
      for (const auto& part : d.parts()) {
        const auto pc = linear_factor_for(part);
        if (!pc) return std::nullopt;
        c = std::max(c, *pc);
      }
      return c;
    }
  }
  return std::nullopt;
}

ComparisonFunction ContractionMap::witness_for(const Pseudometric& d) const {
  if (const auto it = declared.find(d.name()); it != declared.end())
    return it->second;
  if (d.kind() == Pseudometric::Kind::MaxOf) {
    // Combined metrics take the max of the per-part witnesses, which may mix
    // declared and synthesized ones.
    ComparisonFunction w = witness_for(d.parts().front());
    for (size_t i = 1; i < d.parts().size(); ++i)
      w = w.max_with(witness_for(d.parts()[i]));
    return w;
  }
  const auto c = linear_factor_for(d);
  if (!c || *c >= 1.0)
    throw DomainError("no contraction witness for " + d.name() +
                      (c ? " (factor " + std::to_string(*c) + ")" : ""));
  return ComparisonFunction::linear(*c);
}

void FuzzyIFS::validate() const {
  grid.validate();
  scale.validate();
  if (maps.empty()) throw DomainError("system needs at least one branch");
  if (maps.size() != greys.maps.size())
    throw DomainError("branch count differs between maps and grey tables");
  for (const auto& gm : greys.maps)
    if (!(gm.scale == scale))
      throw DomainError("grey table level scale differs from the system's");
  greys.validate();
  if (grid.ndim == 1) {
    for (const auto& m : maps)
      if (m.map.a[0][1] != 0.0 || m.map.a[1][0] != 0.0 ||
          m.map.a[1][1] != 0.0 || m.map.b[1] != 0.0)
        throw DomainError(
            "1D system: matrix must touch only the first axis "
            "(a12 = a21 = a22 = b2 = 0)");
  }
}

std::vector<std::int64_t> hutchinson(const Grid& g,
                                     const std::vector<AffineMap>& maps,
                                     const std::vector<std::int64_t>& K) {
  std::vector<std::int64_t> out;
  out.reserve(K.size() * maps.size());
  for (const auto& f : maps) {
    for (std::int64_t i : K) {
      std::int64_t t;
      const Vec y = f.apply(g.point_at(i));
      if (!g.snap(y, t))
        throw DomainError("hutchinson image escapes the grid box");
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::int64_t> crisp_fixed_set(const Grid& g,
                                          const std::vector<AffineMap>& maps,
                                          int max_iter) {
  std::vector<std::int64_t> K(static_cast<size_t>(g.point_count()));
  for (std::int64_t i = 0; i < g.point_count(); ++i) K[static_cast<size_t>(i)] = i;
  for (int n = 0; n < max_iter; ++n) {
    std::vector<std::int64_t> next = hutchinson(g, maps, K);
    if (next == K) return K;
    // S(full grid) lands inside the grid, and S is monotone on subsets, so
    // the chain K >= S(K) >= S^2(K) ... decreases to its greatest fixed set.
    K = std::move(next);
  }
  throw ConvergenceError("crisp Hutchinson iteration did not stabilize", {});
}

FuzzySet fuzzy_hutchinson_cuts(const FuzzyIFS& S, const FuzzySet& u) {
  if (!(u.grid() == S.grid) || !(u.scale() == S.scale))
    throw DomainError("set frame does not match the system");
  FuzzySet out(S.grid, S.scale);
  for (int b = 0; b < S.branches(); ++b) {
    const auto& f = S.maps[static_cast<size_t>(b)].map;
    const auto& rho = S.greys.maps[static_cast<size_t>(b)];
    for (int j = S.scale.L; j >= 1; --j) {
      const int m = grey_threshold(rho, j);
      if (m == kEmptyCut) continue;
      for (std::int64_t i : u.alpha_cut(m)) {
        std::int64_t t;
        if (!S.grid.snap(f.apply(S.grid.point_at(i)), t))
          throw DomainError("hutchinson image escapes the grid box");
        if (out.at(t) < j) out.set(t, j);
      }
    }
  }
  return out;
}

FuzzySet fuzzy_hutchinson_pointwise(const FuzzyIFS& S, const FuzzySet& u) {
  if (!(u.grid() == S.grid) || !(u.scale() == S.scale))
    throw DomainError("set frame does not match the system");
  std::vector<FuzzySet> branches;
  branches.reserve(static_cast<size_t>(S.branches()));
  for (int b = 0; b < S.branches(); ++b) {
    const auto& f = S.maps[static_cast<size_t>(b)].map;
    const FuzzySet img = zadeh_image(
        [&f](const Vec& x) { return f.apply(x); }, u);
    branches.push_back(apply_grey(S.greys.maps[static_cast<size_t>(b)], img));
  }
  return pointwise_max(branches);
}

FixpointResult iterate_to_fixpoint(const FuzzyIFS& S, const FuzzySet& u0,
                                   const MetricChoice& metric, double tol,
                                   int max_iter) {
  if (tol < 0.0) throw DomainError("tolerance must be nonnegative");
  if (max_iter < 1) throw DomainError("max_iter must be positive");
  FixpointResult r{u0, {}, 0, 0.0};
  FuzzySet u = u0;
  const Pseudometric dh_metric = Pseudometric::euclid();
  for (int n = 0; n < max_iter; ++n) {
    const FuzzySet next = fuzzy_hutchinson_pointwise(S, u);
    const double dist = evaluate_distance(metric.kind, metric.d, next, u);
    const double dh = hypo_distance(dh_metric, next, u);
    r.trace.rows.push_back({n, dist, dh});
    if (dist <= tol) {
      r.fixed = std::move(u);
      r.iterations = n;
      r.certificate = dist;
      return r;
    }
    u = next;
  }
  std::vector<double> tr;
  for (const auto& row : r.trace.rows) tr.push_back(row.dist);
  const std::string msg = "no fixed point within " +
                          std::to_string(max_iter) +
                          " iterations (last distance " +
                          std::to_string(tr.back()) + ")";
  throw ConvergenceError(msg, std::move(tr));
}

WitnessReport verify_matkowski(const AffineMap& f, const Pseudometric& d,
                               const ComparisonFunction& phi, const Grid& box,
                               int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("verify needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() {
    Vec p{0.0, 0.0};
    for (int a = 0; a < box.ndim; ++a)
      p[static_cast<size_t>(a)] = box.origin[a] + box.extent[a] * unit(rng);
    return p;
  };
  WitnessReport rep;
  rep.metric = d.name();
  rep.witness = phi.describe();
  rep.samples = samples;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Vec x = draw();
    const Vec y = draw();
    const double before = d(x, y);
    const double after = d(f.apply(x), f.apply(y));
    const double slack = phi(before) - after;
    rep.max_pair_distance = std::max(rep.max_pair_distance, before);
    rep.worst_slack = std::min(rep.worst_slack, slack);
    // Tight witnesses (c equal to the true factor) sit on the boundary, so
    // allow rounding noise from the affine evaluation before flagging.
    const double allow = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, before, after});
    if (slack < -allow) ++rep.violations;
  }
  return rep;
}

namespace {

std::vector<Vec> box_corners(const Grid& g, const IndexBox& box) {
  std::vector<Vec> out;
  const Vec lo = g.point_at({box.lo[0], box.lo[1]});
  const Vec hi = g.point_at({box.hi[0], box.hi[1]});
  if (g.ndim == 1) {
    out = {{lo[0], 0.0}, {hi[0], 0.0}};
  } else {
    out = {{lo[0], lo[1]}, {hi[0], lo[1]}, {lo[0], hi[1]}, {hi[0], hi[1]}};
  }
  return out;
}

}  // namespace

InvariantBox invariant_box(const Grid& g, const std::vector<AffineMap>& maps,
                           const IndexBox& seed, int max_grow) {
  if (maps.empty()) throw DomainError("invariant box needs branch maps");
  IndexBox box = seed;
  for (int a = 0; a < g.ndim; ++a)
    if (box.lo[a] < 0 || box.hi[a] > g.cells[a] || box.lo[a] > box.hi[a])
      throw DomainError("seed box outside the grid");
  for (int step = 0; step <= max_grow; ++step) {
    const Vec blo = g.point_at({box.lo[0], box.lo[1]});
    const Vec bhi = g.point_at({box.hi[0], box.hi[1]});
    bool inside = true;
    IndexBox grown = box;
    for (const auto& f : maps) {
      for (const Vec& c : box_corners(g, box)) {
        const Vec y = f.apply(c);
        for (int a = 0; a < g.ndim; ++a) {
          // Affine images of a box stay in the hull of corner images, so
          // corner containment proves invariance.
          if (y[static_cast<size_t>(a)] < blo[static_cast<size_t>(a)] ||
              y[static_cast<size_t>(a)] > bhi[static_cast<size_t>(a)])
            inside = false;
          const double rel =
              (y[static_cast<size_t>(a)] - g.origin[a]) / g.cell_size(a);
          grown.lo[a] = std::min(grown.lo[a],
                                 static_cast<int>(std::floor(rel)));
          grown.hi[a] = std::max(grown.hi[a],
                                 static_cast<int>(std::ceil(rel)));
        }
      }
    }
    if (inside) return {box, step};
    for (int a = 0; a < g.ndim; ++a)
      if (grown.lo[a] < 0 || grown.hi[a] > g.cells[a])
        throw DomainError("no invariant box inside the grid domain");
    box = grown;
  }
  throw DomainError("invariant box growth exceeded the step bound");
}

double fiber_diameter(const Grid& g, const std::vector<AffineMap>& maps,
                      const std::vector<int>& prefix, const IndexBox& box,
                      const Pseudometric& d) {
  AffineMap comp;  // identity
  for (int s : prefix) {
    if (s < 1 || s > static_cast<int>(maps.size()))
      throw DomainError("address symbol out of range: " + std::to_string(s));
    comp = comp.after(maps[static_cast<size_t>(s - 1)]);
  }
  // Corner + edge-midpoint + center sample of the box.
  const Vec lo = g.point_at({box.lo[0], box.lo[1]});
  const Vec hi = g.point_at({box.hi[0], box.hi[1]});
  std::vector<Vec> sample;
  if (g.ndim == 1) {
    sample = {{lo[0], 0.0}, {(lo[0] + hi[0]) / 2, 0.0}, {hi[0], 0.0}};
  } else {
    for (double x : {lo[0], (lo[0] + hi[0]) / 2, hi[0]})
      for (double y : {lo[1], (lo[1] + hi[1]) / 2, hi[1]})
        sample.push_back({x, y});
  }
  std::vector<Vec> snapped;
  for (const Vec& p : sample) {
    std::int64_t t;
    if (!g.snap(comp.apply(p), t))
      throw DomainError("fiber image escapes the grid box");
    snapped.push_back(g.point_at(t));
  }
  double diam = 0.0;
  for (size_t i = 0; i < snapped.size(); ++i)
    for (size_t j = i + 1; j < snapped.size(); ++j)
      diam = std::max(diam, d(snapped[i], snapped[j]));
  return diam;
}

}  // namespace fifs
