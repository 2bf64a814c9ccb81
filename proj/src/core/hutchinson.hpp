#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/comparison.hpp"
#include "core/distances.hpp"
#include "core/fuzzy_set.hpp"
#include "core/grey.hpp"
#include "core/pseudometric.hpp"

namespace fifs {

// Affine branch map plus contraction witnesses. A witness declared for a
// pseudometric name wins; otherwise a linear factor is synthesized from the
// matrix (spectral norm for euclid, diagonal entry for an axis projection
// when the row is otherwise zero, weighted row sums for wmax, max over parts
// for combined metrics). No witness exists when the bound reaches 1.
struct ContractionMap {
  AffineMap map;
  std::map<std::string, ComparisonFunction> declared;

  std::optional<double> linear_factor_for(const Pseudometric& d) const;
  // Declared witness or synthesized linear one; throws DomainError when the
  // map admits neither for this pseudometric.
  ComparisonFunction witness_for(const Pseudometric& d) const;
};

struct FuzzyIFS {
  Grid grid;
  LevelScale scale;
  std::vector<ContractionMap> maps;
  GreySystem greys;

  int branches() const { return static_cast<int>(maps.size()); }
  void validate() const;
};

// Crisp Hutchinson image: union of snapped branch images of K.
std::vector<std::int64_t> hutchinson(const Grid& g,
                                     const std::vector<AffineMap>& maps,
                                     const std::vector<std::int64_t>& K);

// Greatest fixed set of the snapped Hutchinson map: iterate the full grid
// downward until the set repeats exactly. The decreasing chain guarantees
// termination.
std::vector<std::int64_t> crisp_fixed_set(const Grid& g,
                                          const std::vector<AffineMap>& maps,
                                          int max_iter = 10000);

// Fuzzy Hutchinson operator, two routes that must agree exactly:
// via cut unions per level, and via pointwise grey-composed Zadeh images.
FuzzySet fuzzy_hutchinson_cuts(const FuzzyIFS& S, const FuzzySet& u);
FuzzySet fuzzy_hutchinson_pointwise(const FuzzyIFS& S, const FuzzySet& u);

struct MetricChoice {
  DistanceKind kind = DistanceKind::Dhf;
  Pseudometric d = Pseudometric::euclid();
};

struct IterationTrace {
  struct Row {
    int step;
    double dist;  // chosen metric, between consecutive iterates
    double dh;    // hypograph distance alongside
  };
  std::vector<Row> rows;
};

struct FixpointResult {
  FuzzySet fixed;
  IterationTrace trace;
  int iterations = 0;
  // Last trace distance: d(S(u*), u*) <= tol by construction.
  double certificate = 0.0;
};

// Fixed-point iteration u_{n+1} = S(u_n); returns the first iterate whose
// image stays within tol. Throws ConvergenceError (with the trace) at
// max_iter.
FixpointResult iterate_to_fixpoint(const FuzzyIFS& S, const FuzzySet& u0,
                                   const MetricChoice& metric, double tol,
                                   int max_iter);

struct WitnessReport {
  std::string metric;
  std::string witness;
  int samples = 0;
  int violations = 0;
  double worst_slack = 0.0;  // min over samples of phi(d(x,y)) - d(f(x),f(y))
  double max_pair_distance = 0.0;
};

// Samples random point pairs in the grid box and checks
// d(f(x), f(y)) <= phi(d(x, y)) exactly (the map itself, before snapping).
WitnessReport verify_matkowski(const AffineMap& f, const Pseudometric& d,
                               const ComparisonFunction& phi, const Grid& box,
                               int samples, std::uint64_t seed);

struct InvariantBox {
  IndexBox box;
  int grow_steps = 0;
};

// Smallest grid-aligned box containing the seed that the branch maps keep
// invariant, grown by rounding affine corner-image hulls outward to whole
// cells. Errors when growth leaves the grid domain or exceeds max_grow.
InvariantBox invariant_box(const Grid& g, const std::vector<AffineMap>& maps,
                           const IndexBox& seed, int max_grow = 4096);

// Diameter (under d) of the snapped image of the box's corner+midpoint
// sample through the branch composition named by the address prefix.
double fiber_diameter(const Grid& g, const std::vector<AffineMap>& maps,
                      const std::vector<int>& prefix, const IndexBox& box,
                      const Pseudometric& d);

}  // namespace fifs
