#include "core/fuzzy_set.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

void LevelScale::validate() const {
  if (L < 1) throw DomainError("level scale needs L >= 1");
  if (L > 60000) throw DomainError("level scale too large");
}

FuzzySet::FuzzySet(Grid grid, LevelScale scale)
    : grid_(std::move(grid)), scale_(scale) {
  grid_.validate();
  scale_.validate();
  data_.assign(static_cast<size_t>(grid_.point_count()), 0);
}

FuzzySet FuzzySet::dirac(const Grid& g, LevelScale s, std::int64_t flat) {
  FuzzySet u(g, s);
  u.set(flat, s.L);
  return u;
}

FuzzySet FuzzySet::constant(const Grid& g, LevelScale s, int level) {
  FuzzySet u(g, s);
  std::fill(u.data_.begin(), u.data_.end(), static_cast<Level>(level));
  return u;
}

void FuzzySet::set(std::int64_t flat, int level) {
  if (level < 0 || level > scale_.L)
    throw DomainError("level out of range 0.." + std::to_string(scale_.L));
  data_[static_cast<size_t>(flat)] = static_cast<Level>(level);
}

std::vector<std::int64_t> FuzzySet::support() const { return alpha_cut(0); }

std::vector<std::int64_t> FuzzySet::alpha_cut(int j) const {
  if (j < 0 || j > scale_.L) throw DomainError("cut level out of range");
  const Level need = static_cast<Level>(std::max(j, 1));
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(data_.size()); ++i)
    if (data_[static_cast<size_t>(i)] >= need) out.push_back(i);
  return out;
}

std::vector<Vec> FuzzySet::alpha_cut_points(int j) const {
  return to_points(grid_, alpha_cut(j));
}

bool FuzzySet::empty_support() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](Level v) { return v == 0; });
}

bool FuzzySet::is_normal() const {
  const Level top = static_cast<Level>(scale_.L);
  return std::any_of(data_.begin(), data_.end(),
                     [top](Level v) { return v == top; });
}

bool FuzzySet::same_frame(const FuzzySet& o) const {
  return grid_ == o.grid_ && scale_ == o.scale_;
}

FuzzySet zadeh_image(const std::function<Vec(const Vec&)>& f,
                     const FuzzySet& u) {
  FuzzySet out(u.grid(), u.scale());
  for (std::int64_t x : u.support()) {
    const Vec y = f(world_point(u.grid(), x));
    std::int64_t target;
    if (!u.grid().snap(y, target)) {
      std::ostringstream os;
      os << "image point (" << y[0];
      if (u.grid().ndim > 1) os << ", " << y[1];
      os << ") escapes the grid box";
      throw DomainError(os.str());
    }
    if (u.at(x) > out.at(target)) out.set(target, u.at(x));
  }
  return out;
}

FuzzySet pointwise_max(const std::vector<FuzzySet>& sets) {
  if (sets.empty()) throw DomainError("pointwise_max of an empty list");
  FuzzySet out = sets.front();
  for (size_t k = 1; k < sets.size(); ++k) {
    if (!out.same_frame(sets[k]))
      throw DomainError("pointwise_max: mismatched grid or level scale");
    for (std::int64_t i = 0; i < out.grid().point_count(); ++i)
      if (sets[k].at(i) > out.at(i)) out.set(i, sets[k].at(i));
  }
  return out;
}

FuzzySet restrict_to(const FuzzySet& u, const IndexBox& box) {
  const Grid& g = u.grid();
  Grid sub;
  sub.ndim = g.ndim;
  for (int a = 0; a < g.ndim; ++a) {
    if (box.lo[a] < 0 || box.hi[a] > g.cells[a] || box.lo[a] >= box.hi[a])
      throw DomainError("restriction box is not a proper subgrid");
    sub.cells[a] = box.hi[a] - box.lo[a];
    sub.origin[a] = g.origin[a] + box.lo[a] * g.cell_size(a);
    sub.extent[a] = sub.cells[a] * g.cell_size(a);
  }
  FuzzySet out(sub, u.scale());
  for (std::int64_t x : u.support()) {
    const auto idx = g.unflat(x);
    if (!box.contains(idx, g.ndim))
      throw DomainError("support extends outside the restriction box");
    std::array<int, kMaxAxes> rel{idx[0] - box.lo[0], idx[1] - box.lo[1]};
    out.set(sub.flat(rel), u.at(x));
  }
  return out;
}

FuzzySet extend_to(const FuzzySet& sub, const Grid& full,
                   const IndexBox& box) {
  const Grid& s = sub.grid();
  if (s.ndim != full.ndim)
    throw DomainError("extension target has a different dimension");
  for (int a = 0; a < full.ndim; ++a)
    if (box.hi[a] - box.lo[a] != s.cells[a] || box.lo[a] < 0 ||
        box.hi[a] > full.cells[a])
      throw DomainError("extension box does not match the subgrid");
  FuzzySet out(full, sub.scale());
  for (std::int64_t x : sub.support()) {
    const auto rel = s.unflat(x);
    std::array<int, kMaxAxes> idx{rel[0] + box.lo[0], rel[1] + box.lo[1]};
    out.set(full.flat(idx), sub.at(x));
  }
  return out;
}

Vec world_point(const Grid& g, std::int64_t flat) { return g.point_at(flat); }

std::vector<Vec> to_points(const Grid& g,
                           const std::vector<std::int64_t>& idx) {
  std::vector<Vec> out;
  out.reserve(idx.size());
  for (std::int64_t i : idx) out.push_back(g.point_at(i));
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string FuzzySet::format_fzy() const {
  std::ostringstream os;
  os << "FZY1\n";
  for (int a = 0; a < grid_.ndim; ++a) os << grid_.points(a) << " ";
  os << scale_.L << "\n";
  for (int a = 0; a < grid_.ndim; ++a) os << fmt_double(grid_.origin[a]) << " ";
  for (int a = 0; a < grid_.ndim; ++a) {
    os << fmt_double(grid_.extent[a]);
    os << (a + 1 < grid_.ndim ? " " : "");
  }
  os << "\n";
  const int nx = grid_.points(0);
  const int ny = grid_.ndim > 1 ? grid_.points(1) : 1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      os << at(grid_.flat({ix, iy}));
      os << (ix + 1 < nx ? " " : "");
    }
    os << "\n";
  }
  return os.str();
}

FuzzySet FuzzySet::parse_fzy(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  is >> magic;
  if (magic != "FZY1") throw ParseError("FZY1: bad magic '" + magic + "'");

  // Header: point counts per axis then L, then origins and extents. The
  // dimension is recovered from the token count of line 2.
  std::string line;
  std::getline(is, line);  // rest of magic line
  if (!std::getline(is, line)) throw ParseError("FZY1: missing header", 2);
  std::istringstream l2(line);
  std::vector<long> h;
  long v;
  while (l2 >> v) h.push_back(v);
  if (h.size() != 2 && h.size() != 3)
    throw ParseError("FZY1: header needs <points...> <L>", 2);
  const int ndim = static_cast<int>(h.size()) - 1;
  LevelScale scale{static_cast<int>(h.back())};
  scale.validate();

  if (!std::getline(is, line)) throw ParseError("FZY1: missing domain", 3);
  std::istringstream l3(line);
  std::vector<double> d;
  double dv;
  while (l3 >> dv) d.push_back(dv);
  if (static_cast<int>(d.size()) != 2 * ndim)
    throw ParseError("FZY1: domain needs <origin...> <extent...>", 3);

  Grid g;
  g.ndim = ndim;
  for (int a = 0; a < ndim; ++a) {
    if (h[a] < 2) throw ParseError("FZY1: axis needs at least 2 points", 2);
    g.cells[a] = static_cast<int>(h[a]) - 1;
    g.origin[a] = d[static_cast<size_t>(a)];
    g.extent[a] = d[static_cast<size_t>(ndim + a)];
  }
  g.validate();

  FuzzySet u(g, scale);
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    long lev;
    if (!(is >> lev))
      throw ParseError("FZY1: expected " + std::to_string(g.point_count()) +
                       " levels, got " + std::to_string(i));
    if (lev < 0 || lev > scale.L)
      throw ParseError("FZY1: level " + std::to_string(lev) +
                       " out of range 0.." + std::to_string(scale.L));
    u.set(i, static_cast<int>(lev));
  }
  long extra;
  if (is >> extra) throw ParseError("FZY1: trailing data after payload");
  if (u.empty_support()) throw ParseError("FZY1: empty support");
  if (!u.is_normal())
    throw ParseError("FZY1: no point attains the top level " +
                     std::to_string(scale.L));
  return u;
}

FuzzySet FuzzySet::load_fzy(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_fzy(ss.str());
}

void FuzzySet::save_fzy(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << format_fzy();
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace fifs
