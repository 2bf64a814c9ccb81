#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/hutchinson.hpp"

namespace fifs {

// Finite branch address, symbols 1..k, outermost branch first.
struct Address {
  std::vector<int> symbols;

  // Accepts "1213" (single digits) or "1,2,1,3"; validates against k.
  static Address parse(const std::string& text, int k);
  std::string str() const;
  int depth() const { return static_cast<int>(symbols.size()); }
};

struct GreyLimit {
  int level = 0;
  // Depth at which the partial value last changed; 0 when it never moved
  // off the top level.
  int stabilized_at = 0;
};

// Partial values p_n = rho_{s1} o ... o rho_{sn} (top) for n = 1..depth.
// Nonincreasing: each table is nondecreasing and bounded by the top level.
std::vector<int> grey_partials(const GreySystem& greys, const Address& addr);
GreyLimit grey_limit(const GreySystem& greys, const Address& addr);

struct ProjectedPoint {
  Vec world;            // composed map applied to the seed, before snapping
  std::int64_t snapped = 0;
  int level = 0;        // grey_limit of the address
};

// f_{s1} o ... o f_{sN}(seed), snapped to the grid. The composition folds
// prefix-incrementally (((f_{s1} o f_{s2}) o f_{s3}) ...), matching the
// enumeration in attractor_via_projection bit for bit.
ProjectedPoint project(const FuzzyIFS& S, const Address& addr,
                       const Vec& seed);

struct ProjectionResult {
  FuzzySet set;
  std::int64_t addresses = 0;   // enumerated leaves
  std::int64_t pruned = 0;      // subtrees cut at partial value 0
  double spatial_error_bound = 0.0;  // c_max^depth * diam(domain) + cell diag
  // Largest leaf value whose composed grey table is non-constant on the
  // tail-reachable values; such a value could still drop along some infinite
  // continuation (it is always *attained* by the top-preserving branch's
  // constant tail, so this measures ambiguity, not error).
  int nonstabilized_max_level = 0;
};

// Depth-N code-space image: enumerate the k^N addresses (zero-valued
// subtrees pruned), max-merge snapped leaf points with their grey limits.
// Throws BudgetError when k^N exceeds the budget.
ProjectionResult attractor_via_projection(const FuzzyIFS& S, int depth,
                                          const Vec& seed,
                                          std::int64_t budget = 1 << 22);

}  // namespace fifs
