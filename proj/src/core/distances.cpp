#include "core/distances.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace fifs {

namespace {

// Directed part max_{a in A} min_{b in B} d(a,b). The inner scan starts at
// the previous argmin (nearby queries have nearby answers) and stops as soon
// as the running min cannot raise the outer max; neither shortcut changes
// the value.
double directed_hausdorff(const Pseudometric& d, const std::vector<Vec>& A,
                          const std::vector<Vec>& B) {
  double best = 0.0;
  size_t hint = 0;
  const size_t nb = B.size();
  for (const Vec& a : A) {
    double m = d(a, B[hint]);
    size_t argmin = hint;
    for (size_t off = 1; off < nb && m > best; ++off) {
      const size_t j = hint + off < nb ? hint + off : hint + off - nb;
      const double v = d(a, B[j]);
      if (v < m) {
        m = v;
        argmin = j;
      }
    }
    hint = argmin;
    if (m > best) best = m;
  }
  return best;
}

}  // namespace

double hausdorff(const Pseudometric& d, const std::vector<Vec>& A,
                 const std::vector<Vec>& B) {
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty())
    throw DomainError("hausdorff distance between empty and nonempty sets");
  return std::max(directed_hausdorff(d, A, B), directed_hausdorff(d, B, A));
}

double hausdorff_bruteforce(const Pseudometric& d, const std::vector<Vec>& A,
                            const std::vector<Vec>& B) {
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty())
    throw DomainError("hausdorff distance between empty and nonempty sets");
  double h = 0.0;
  for (const Vec& a : A) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec& b : B) m = std::min(m, d(a, b));
    h = std::max(h, m);
  }
  for (const Vec& b : B) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec& a : A) m = std::min(m, d(a, b));
    h = std::max(h, m);
  }
  return h;
}

double fuzzy_hausdorff(const Pseudometric& d, const FuzzySet& u,
                       const FuzzySet& v) {
  if (!u.same_frame(v))
    throw DomainError("fuzzy_hausdorff: mismatched grid or level scale");
  // Cuts grow as the level drops; build them once, largest level first.
  // After processing level j the prefixes hold cut_j. Level 0 equals level 1.
  const int L = u.levels();
  std::vector<std::vector<std::int64_t>> by_level_u(static_cast<size_t>(L) + 1);
  std::vector<std::vector<std::int64_t>> by_level_v(static_cast<size_t>(L) + 1);
  for (std::int64_t i = 0; i < u.grid().point_count(); ++i) {
    if (u.at(i) > 0) by_level_u[static_cast<size_t>(u.at(i))].push_back(i);
    if (v.at(i) > 0) by_level_v[static_cast<size_t>(v.at(i))].push_back(i);
  }
  std::vector<Vec> cu, cv;
  double worst = 0.0;
  for (int j = L; j >= 1; --j) {
    for (std::int64_t i : by_level_u[static_cast<size_t>(j)])
      cu.push_back(u.grid().point_at(i));
    for (std::int64_t i : by_level_v[static_cast<size_t>(j)])
      cv.push_back(v.grid().point_at(i));
    worst = std::max(worst, hausdorff(d, cu, cv));
  }
  return worst;
}

std::vector<HypoPoint> hypo_points(const FuzzySet& u) {
  std::vector<HypoPoint> out;
  for (std::int64_t i : u.support()) {
    const Vec x = u.grid().point_at(i);
    for (int j = 0; j <= u.at(i); ++j)
      out.push_back({x, u.scale().alpha(j)});
  }
  return out;
}

double hypo_product_metric(const Pseudometric& d, const HypoPoint& p,
                           const HypoPoint& q) {
  return std::max(d(p.x, q.x), std::abs(p.alpha - q.alpha));
}

namespace {

struct TopPoint {
  Vec x;
  double alpha;
};

std::vector<TopPoint> top_points(const FuzzySet& u) {
  std::vector<TopPoint> out;
  for (std::int64_t i : u.support())
    out.push_back({u.grid().point_at(i), u.value(i)});
  return out;
}

// min over the hypograph of v of the product distance from (x, alpha):
// per support point y the closest hypograph point sits at min(alpha, v(y)),
// giving max(d(x,y), max(0, alpha - v(y))).
// Directed hypograph distances only need the top point per support column:
// the distance-to-hypograph is nondecreasing in alpha. `cap` bounds the
// distance from above (hypo0 adjoins the base plane, capping at alpha).
double directed_hypo(const Pseudometric& d, const std::vector<TopPoint>& A,
                     const std::vector<TopPoint>& B, bool base_plane) {
  double best = 0.0;
  size_t hint = 0;
  const size_t nb = B.size();
  for (const TopPoint& a : A) {
    double m = base_plane ? a.alpha : std::numeric_limits<double>::infinity();
    size_t argmin = hint;
    for (size_t off = 0; off < nb && m > best; ++off) {
      const size_t j = hint + off < nb ? hint + off : hint + off - nb;
      const double v =
          std::max(d(a.x, B[j].x), std::max(0.0, a.alpha - B[j].alpha));
      if (v < m) {
        m = v;
        argmin = j;
      }
    }
    hint = argmin;
    if (m > best) best = m;
  }
  return best;
}

}  // namespace

double hypo_distance(const Pseudometric& d, const FuzzySet& u,
                     const FuzzySet& v) {
  if (!u.same_frame(v))
    throw DomainError("hypo_distance: mismatched grid or level scale");
  const auto tu = top_points(u);
  const auto tv = top_points(v);
  if (tu.empty() && tv.empty()) return 0.0;
  if (tu.empty() || tv.empty())
    throw DomainError("hypo_distance with exactly one empty support");
  return std::max(directed_hypo(d, tu, tv, false),
                  directed_hypo(d, tv, tu, false));
}

double hypo0_distance(const Pseudometric& d, const FuzzySet& u,
                      const FuzzySet& v) {
  if (!u.same_frame(v))
    throw DomainError("hypo0_distance: mismatched grid or level scale");
  const auto tu = top_points(u);
  const auto tv = top_points(v);
  // The shared base plane makes both hypographs nonempty and absorbs the
  // empty-support cases.
  if (tu.empty() && tv.empty()) return 0.0;
  return std::max(directed_hypo(d, tu, tv, true),
                  directed_hypo(d, tv, tu, true));
}

double linf_distance(const FuzzySet& u, const FuzzySet& v) {
  if (!u.same_frame(v))
    throw DomainError("linf_distance: mismatched grid or level scale");
  int worst = 0;
  for (std::int64_t i = 0; i < u.grid().point_count(); ++i)
    worst = std::max(worst, std::abs(u.at(i) - v.at(i)));
  return u.scale().alpha(worst);
}

double pointwise_gap(const FuzzySet& u, const FuzzySet& v,
                     std::int64_t flat) {
  if (!u.same_frame(v))
    throw DomainError("pointwise_gap: mismatched grid or level scale");
  return u.scale().alpha(std::abs(u.at(flat) - v.at(flat)));
}

double support_hausdorff(const Pseudometric& d, const FuzzySet& u,
                         const FuzzySet& v) {
  if (!u.same_frame(v))
    throw DomainError("support_hausdorff: mismatched grid or level scale");
  return hausdorff(d, to_points(u.grid(), u.support()),
                   to_points(v.grid(), v.support()));
}

DistanceKind parse_distance_kind(const std::string& name) {
  if (name == "dhf") return DistanceKind::Dhf;
  if (name == "dh") return DistanceKind::Dh;
  if (name == "dh0") return DistanceKind::Dh0;
  if (name == "dinf") return DistanceKind::Dinf;
  if (name == "hausdorff") return DistanceKind::Hausdorff;
  throw ParseError("unknown distance '" + name +
                   "' (use dhf, dh, dh0, dinf, hausdorff)");
}

std::string distance_kind_name(DistanceKind k) {
  switch (k) {
    case DistanceKind::Dhf: return "dhf";
    case DistanceKind::Dh: return "dh";
    case DistanceKind::Dh0: return "dh0";
    case DistanceKind::Dinf: return "dinf";
    case DistanceKind::Hausdorff: return "hausdorff";
  }
  return "?";
}

double evaluate_distance(DistanceKind kind, const Pseudometric& d,
                         const FuzzySet& u, const FuzzySet& v) {
  switch (kind) {
    case DistanceKind::Dhf: return fuzzy_hausdorff(d, u, v);
    case DistanceKind::Dh: return hypo_distance(d, u, v);
    case DistanceKind::Dh0: return hypo0_distance(d, u, v);
    case DistanceKind::Dinf: return linf_distance(u, v);
    case DistanceKind::Hausdorff: return support_hausdorff(d, u, v);
  }
  throw DomainError("bad distance kind");
}

}  // namespace fifs
