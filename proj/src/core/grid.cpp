#include "core/grid.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

Grid Grid::line(int cells, double origin, double extent) {
  Grid g;
  g.ndim = 1;
  g.cells = {cells, 0};
  g.origin = {origin, 0.0};
  g.extent = {extent, 0.0};
  g.validate();
  return g;
}

Grid Grid::plane(int cx, int cy, const Vec& origin, const Vec& extent) {
  Grid g;
  g.ndim = 2;
  g.cells = {cx, cy};
  g.origin = origin;
  g.extent = extent;
  g.validate();
  return g;
}

void Grid::validate() const {
  if (ndim < 1 || ndim > kMaxAxes) throw DomainError("grid dimension must be 1 or 2");
  for (int a = 0; a < ndim; ++a) {
    if (cells[a] < 1) throw DomainError("grid needs at least one cell per axis");
    if (!(extent[a] > 0.0)) throw DomainError("grid extent must be positive");
  }
}

double Grid::cell_diagonal() const {
  double s = 0.0;
  for (int a = 0; a < ndim; ++a) s += cell_size(a) * cell_size(a);
  return std::sqrt(s);
}

std::int64_t Grid::point_count() const {
  std::int64_t n = 1;
  for (int a = 0; a < ndim; ++a) n *= points(a);
  return n;
}

std::int64_t Grid::flat(const std::array<int, kMaxAxes>& idx) const {
  std::int64_t f = idx[0];
  if (ndim > 1) f += static_cast<std::int64_t>(idx[1]) * points(0);
  return f;
}

std::array<int, kMaxAxes> Grid::unflat(std::int64_t flat) const {
  const int nx = points(0);
  return {static_cast<int>(flat % nx), static_cast<int>(flat / nx)};
}

Vec Grid::point_at(const std::array<int, kMaxAxes>& idx) const {
  Vec p{0.0, 0.0};
  for (int a = 0; a < ndim; ++a) p[a] = origin[a] + idx[a] * cell_size(a);
  return p;
}

Vec Grid::point_at(std::int64_t flat) const { return point_at(unflat(flat)); }

bool Grid::snap(const Vec& world, std::int64_t& out_flat) const {
  std::array<int, kMaxAxes> idx{0, 0};
  for (int a = 0; a < ndim; ++a) {
    const double p = (world[a] - origin[a]) / cell_size(a);
    const double r = std::ceil(p - 0.5);  // nearest, ties to the lower index
    if (r < 0.0 || r > static_cast<double>(cells[a])) return false;
    idx[a] = static_cast<int>(r);
  }
  out_flat = flat(idx);
  return true;
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << cells[0];
  if (ndim > 1) os << "x" << cells[1];
  os << " cells on [" << origin[0] << "," << origin[0] + extent[0] << "]";
  if (ndim > 1) os << "x[" << origin[1] << "," << origin[1] + extent[1] << "]";
  return os.str();
}

Vec AffineMap::apply(const Vec& x) const {
  return {a[0][0] * x[0] + a[0][1] * x[1] + b[0],
          a[1][0] * x[0] + a[1][1] * x[1] + b[1]};
}

AffineMap AffineMap::after(const AffineMap& inner) const {
  AffineMap r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.a[i][j] = a[i][0] * inner.a[0][j] + a[i][1] * inner.a[1][j];
  const Vec ab = apply(inner.b);
  r.b = ab;
  return r;
}

double AffineMap::operator_norm2() const {
  // Singular values of a 2x2 matrix from trace/determinant of A^T A.
  const double p = a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] +
                   a[1][1] * a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double q = det * det;
  const double disc = std::sqrt(std::max(0.0, p * p - 4.0 * q));
  return std::sqrt((p + disc) / 2.0);
}

bool IndexBox::contains(const std::array<int, kMaxAxes>& idx, int ndim) const {
  for (int a = 0; a < ndim; ++a)
    if (idx[a] < lo[a] || idx[a] > hi[a]) return false;
  return true;
}

}  // namespace fifs
