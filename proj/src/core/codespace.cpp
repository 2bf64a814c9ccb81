#include "core/codespace.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

Address Address::parse(const std::string& text, int k) {
  Address a;
  if (text.empty()) return a;
  if (text.find(',') != std::string::npos) {
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        size_t used = 0;
        a.symbols.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad address symbol '" + tok + "'");
      }
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw ParseError(std::string("bad address digit '") + c + "'");
      a.symbols.push_back(c - '0');
    }
  }
  for (int s : a.symbols)
    if (s < 1 || s > k)
      throw ParseError("address symbol " + std::to_string(s) +
                       " out of range 1.." + std::to_string(k));
  return a;
}

std::string Address::str() const {
  std::ostringstream os;
  bool wide = false;
  for (int s : symbols) wide = wide || s > 9;
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (wide && i) os << ",";
    os << symbols[i];
  }
  return os.str();
}

namespace {

// Composition table C = rho_{s1} o ... o rho_{sn} extended one symbol at a
// time on the inside: C' = C o rho_next.
std::vector<Level> compose_inner(const std::vector<Level>& C,
                                 const GreyLevelMap& next) {
  std::vector<Level> out(C.size());
  for (size_t m = 0; m < C.size(); ++m)
    out[m] = C[next.table[m]];
  return out;
}

std::vector<Level> identity_table(int L) {
  std::vector<Level> t(static_cast<size_t>(L) + 1);
  for (int j = 0; j <= L; ++j) t[static_cast<size_t>(j)] = static_cast<Level>(j);
  return t;
}

}  // namespace

std::vector<int> grey_partials(const GreySystem& greys, const Address& addr) {
  if (greys.maps.empty()) throw DomainError("empty grey system");
  const int L = greys.maps[0].scale.L;
  const int k = static_cast<int>(greys.maps.size());
  std::vector<Level> C = identity_table(L);
  std::vector<int> out;
  out.reserve(addr.symbols.size());
  for (int s : addr.symbols) {
    if (s < 1 || s > k)
      throw DomainError("address symbol out of range: " + std::to_string(s));
    C = compose_inner(C, greys.maps[static_cast<size_t>(s - 1)]);
    out.push_back(C[static_cast<size_t>(L)]);
  }
  return out;
}

GreyLimit grey_limit(const GreySystem& greys, const Address& addr) {
  const int L = greys.maps.empty() ? 0 : greys.maps[0].scale.L;
  GreyLimit r{L, 0};
  int prev = L;
  int depth = 0;
  for (int p : grey_partials(greys, addr)) {
    ++depth;
    if (p != prev) {
      r.stabilized_at = depth;
      prev = p;
    }
  }
  r.level = prev;
  return r;
}

ProjectedPoint project(const FuzzyIFS& S, const Address& addr,
                       const Vec& seed) {
  AffineMap comp;  // identity
  for (int s : addr.symbols) {
    if (s < 1 || s > S.branches())
      throw DomainError("address symbol out of range: " + std::to_string(s));
    comp = comp.after(S.maps[static_cast<size_t>(s - 1)].map);
  }
  ProjectedPoint p;
  p.world = comp.apply(seed);
  if (!S.grid.snap(p.world, p.snapped))
    throw DomainError("projected point escapes the grid box");
  p.level = addr.depth() == 0 ? S.scale.L : grey_limit(S.greys, addr).level;
  return p;
}

namespace {

// Values that a nonempty tail composition can feed into a prefix table:
// closure of {rho_i(L)} under all grey tables.
std::vector<bool> tail_reachable(const GreySystem& greys, int L) {
  std::vector<bool> in(static_cast<size_t>(L) + 1, false);
  std::vector<int> frontier;
  for (const auto& g : greys.maps) {
    const int v = g.table[static_cast<size_t>(L)];
    if (!in[static_cast<size_t>(v)]) {
      in[static_cast<size_t>(v)] = true;
      frontier.push_back(v);
    }
  }
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (const auto& g : greys.maps) {
      const int w = g.table[static_cast<size_t>(v)];
      if (!in[static_cast<size_t>(w)]) {
        in[static_cast<size_t>(w)] = true;
        frontier.push_back(w);
      }
    }
  }
  return in;
}

struct DfsState {
  const FuzzyIFS* S;
  Vec seed;
  int depth;
  std::vector<bool> reachable;
  FuzzySet out;
  std::int64_t leaves = 0;
  std::int64_t pruned = 0;
  int nonstabilized = 0;
};

void dfs(DfsState& st, const AffineMap& comp, const std::vector<Level>& C,
         int depth) {
  const int L = st.S->scale.L;
  if (depth == st.depth) {
    ++st.leaves;
    const int level = C[static_cast<size_t>(L)];
    std::int64_t t;
    if (!st.S->grid.snap(comp.apply(st.seed), t))
      throw DomainError("projected point escapes the grid box");
    if (st.out.at(t) < level) st.out.set(t, level);
    bool stable = true;
    for (int v = 0; v <= L && stable; ++v)
      if (st.reachable[static_cast<size_t>(v)] &&
          C[static_cast<size_t>(v)] != level)
        stable = false;
    if (!stable) st.nonstabilized = std::max(st.nonstabilized, level);
    return;
  }
  for (int b = 0; b < st.S->branches(); ++b) {
    const std::vector<Level> C2 =
        compose_inner(C, st.S->greys.maps[static_cast<size_t>(b)]);
    if (C2[static_cast<size_t>(L)] == 0) {
      // Zero absorbs: tables fix 0, so the whole subtree contributes 0.
      ++st.pruned;
      continue;
    }
    dfs(st, comp.after(st.S->maps[static_cast<size_t>(b)].map), C2,
        depth + 1);
  }
}

}  // namespace

ProjectionResult attractor_via_projection(const FuzzyIFS& S, int depth,
                                          const Vec& seed,
                                          std::int64_t budget) {
  S.validate();
  if (depth < 1) throw DomainError("projection depth must be >= 1");
  double total = 1.0;
  for (int n = 0; n < depth; ++n) total *= S.branches();
  if (total > static_cast<double>(budget))
    throw BudgetError("address count " + std::to_string(S.branches()) + "^" +
                      std::to_string(depth) + " exceeds budget " +
                      std::to_string(budget));

  DfsState st{&S, seed, depth, tail_reachable(S.greys, S.scale.L),
              FuzzySet(S.grid, S.scale)};
  dfs(st, AffineMap{}, identity_table(S.scale.L), 0);

  ProjectionResult r;
  r.addresses = st.leaves;
  r.pruned = st.pruned;
  r.nonstabilized_max_level = st.nonstabilized;
  double cmax = 0.0;
  for (const auto& m : S.maps) cmax = std::max(cmax, m.map.operator_norm2());
  double diag = 0.0;
  for (int a = 0; a < S.grid.ndim; ++a)
    diag += S.grid.extent[a] * S.grid.extent[a];
  r.spatial_error_bound =
      std::pow(cmax, depth) * std::sqrt(diag) + S.grid.cell_diagonal();
  r.set = std::move(st.out);
  if (r.set.empty_support())
    throw DomainError("projection produced an empty set");
  return r;
}

}  // namespace fifs
