#pragma once

#include <string>
#include <vector>

#include "core/fuzzy_set.hpp"

namespace fifs {

// Quantized grey-level map: a nondecreasing table over levels 0..L with
// table[0] = 0 (the step-function analogue of a right-continuous
// nondecreasing reparametrization of [0,1] fixing 0).
struct GreyLevelMap {
  LevelScale scale;
  std::vector<Level> table;  // size L+1

  static GreyLevelMap identity(LevelScale s);
  static GreyLevelMap half_scale(LevelScale s);  // table[j] = j/2 rounded down
  static GreyLevelMap from_levels(LevelScale s, const std::vector<int>& t);

  int apply(int level) const { return table[static_cast<size_t>(level)]; }
  bool top_preserving() const { return table[static_cast<size_t>(scale.L)] == scale.L; }
  void validate() const;
  bool operator==(const GreyLevelMap&) const = default;
};

// Sentinel for "the cut is empty at this level".
inline constexpr int kEmptyCut = -1;

// Level threshold m such that cut_j(rho o u) = cut_m(u):
//   j >= 1: kEmptyCut when j > table[L], else min{m : table[m] >= j};
//   j == 0: min{m : table[m] >= 1} (strict positivity threshold), or
//           kEmptyCut when the table is identically zero.
int grey_threshold(const GreyLevelMap& rho, int j);

// Composition with u: result(x) = table[u(x)]. May lose normality or even
// empty the support; callers that need a compact result must restore it.
FuzzySet apply_grey(const GreyLevelMap& rho, const FuzzySet& u);

// One grey map per IFS branch. Admissible when at least one branch preserves
// the top level (restores normality of Hutchinson images).
struct GreySystem {
  std::vector<GreyLevelMap> maps;

  bool admissible() const;
  void validate() const;
  int top_preserving_branch() const;  // 0-based, -1 if none
};

}  // namespace fifs
