#include "core/grey.hpp"

#include "core/errors.hpp"

namespace fifs {

GreyLevelMap GreyLevelMap::identity(LevelScale s) {
  GreyLevelMap m{s, {}};
  m.table.resize(static_cast<size_t>(s.L) + 1);
  for (int j = 0; j <= s.L; ++j) m.table[static_cast<size_t>(j)] = static_cast<Level>(j);
  return m;
}

GreyLevelMap GreyLevelMap::half_scale(LevelScale s) {
  GreyLevelMap m{s, {}};
  m.table.resize(static_cast<size_t>(s.L) + 1);
  for (int j = 0; j <= s.L; ++j) m.table[static_cast<size_t>(j)] = static_cast<Level>(j / 2);
  return m;
}

GreyLevelMap GreyLevelMap::from_levels(LevelScale s, const std::vector<int>& t) {
  GreyLevelMap m{s, {}};
  m.table.reserve(t.size());
  for (int v : t) {
    if (v < 0 || v > s.L)
      throw DomainError("grey table entry " + std::to_string(v) +
                        " out of range 0.." + std::to_string(s.L));
    m.table.push_back(static_cast<Level>(v));
  }
  m.validate();
  return m;
}

void GreyLevelMap::validate() const {
  scale.validate();
  if (table.size() != static_cast<size_t>(scale.L) + 1)
    throw DomainError("grey table needs L+1 entries");
  if (table[0] != 0) throw DomainError("grey table: rho(0)=0 violated");
  for (size_t j = 1; j < table.size(); ++j) {
    if (table[j] < table[j - 1])
      throw DomainError("grey table not nondecreasing at level " +
                        std::to_string(j));
    if (table[j] > scale.L)
      throw DomainError("grey table entry exceeds L");
  }
}

int grey_threshold(const GreyLevelMap& rho, int j) {
  if (j < 0 || j > rho.scale.L) throw DomainError("grey threshold level out of range");
  const int target = std::max(j, 1);
  if (rho.table[static_cast<size_t>(rho.scale.L)] < target) return kEmptyCut;
  for (int m = 0; m <= rho.scale.L; ++m)
    if (rho.table[static_cast<size_t>(m)] >= target) return m;
  return kEmptyCut;  // unreachable: table[L] >= target
}

FuzzySet apply_grey(const GreyLevelMap& rho, const FuzzySet& u) {
  if (!(rho.scale == u.scale()))
    throw DomainError("grey map level scale does not match the set");
  FuzzySet out(u.grid(), u.scale());
  for (std::int64_t i = 0; i < u.grid().point_count(); ++i) {
    const int v = rho.apply(u.at(i));
    if (v > 0) out.set(i, v);
  }
  return out;
}

bool GreySystem::admissible() const { return top_preserving_branch() >= 0; }

int GreySystem::top_preserving_branch() const {
  for (size_t i = 0; i < maps.size(); ++i)
    if (maps[i].top_preserving()) return static_cast<int>(i);
  return -1;
}

void GreySystem::validate() const {
  if (maps.empty()) throw DomainError("grey system needs at least one map");
  for (const auto& m : maps) m.validate();
  for (size_t i = 1; i < maps.size(); ++i)
    if (!(maps[i].scale == maps[0].scale))
      throw DomainError("grey system mixes level scales");
  if (!admissible())
    throw DomainError(
        "no grey map attains rho(1)=1 (some table must end at L)");
}

}  // namespace fifs
