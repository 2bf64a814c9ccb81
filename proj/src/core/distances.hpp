#pragma once

#include <string>
#include <vector>

#include "core/fuzzy_set.hpp"
#include "core/pseudometric.hpp"

namespace fifs {

// Hausdorff distance between finite point sets:
//   max( max_{a in A} min_{b in B} d(a,b), max_{b in B} min_{a in A} d(a,b) ).
// Both empty -> 0; exactly one empty -> DomainError.
double hausdorff(const Pseudometric& d, const std::vector<Vec>& A,
                 const std::vector<Vec>& B);

// sup over cut levels j = 0..L of the Hausdorff distance between cuts.
double fuzzy_hausdorff(const Pseudometric& d, const FuzzySet& u,
                       const FuzzySet& v);

// Quantized hypograph: one point (x, j/L) per support point x and level
// j = 0..level(x).
struct HypoPoint {
  Vec x;
  double alpha;
};
std::vector<HypoPoint> hypo_points(const FuzzySet& u);

// Product metric on box x [0,1]: max(d(x,x'), |alpha-alpha'|).
double hypo_product_metric(const Pseudometric& d, const HypoPoint& p,
                           const HypoPoint& q);

// Hausdorff distance between hypographs under the product metric. Computed
// by a reduction: the distance from hypograph points over a fixed x is
// monotone in alpha, so only the top point (x, u(x)) matters per direction.
double hypo_distance(const Pseudometric& d, const FuzzySet& u,
                     const FuzzySet& v);

// Same with the full base plane grid x {0} adjoined to both hypographs,
// which caps every point's distance at its own alpha.
double hypo0_distance(const Pseudometric& d, const FuzzySet& u,
                      const FuzzySet& v);

// Reference evaluation straight from the definition (max-min double loop
// over explicit point lists). Used as the oracle for the optimized routes.
double hausdorff_bruteforce(const Pseudometric& d, const std::vector<Vec>& A,
                            const std::vector<Vec>& B);

// sup-norm distance on membership values, max over the whole grid.
double linf_distance(const FuzzySet& u, const FuzzySet& v);
// |u - v| at one grid point.
double pointwise_gap(const FuzzySet& u, const FuzzySet& v, std::int64_t flat);

// Crisp Hausdorff distance between the supports.
double support_hausdorff(const Pseudometric& d, const FuzzySet& u,
                         const FuzzySet& v);

enum class DistanceKind { Dhf, Dh, Dh0, Dinf, Hausdorff };

DistanceKind parse_distance_kind(const std::string& name);
std::string distance_kind_name(DistanceKind k);

double evaluate_distance(DistanceKind kind, const Pseudometric& d,
                         const FuzzySet& u, const FuzzySet& v);

}  // namespace fifs
