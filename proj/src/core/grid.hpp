#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace fifs {

inline constexpr int kMaxAxes = 2;

// Point in the ambient space. Axes beyond the grid's dimension stay 0.
using Vec = std::array<double, kMaxAxes>;

// Regular grid over a closed axis-aligned box. "cells" counts intervals per
// axis, so there are cells+1 grid points per axis and both box faces carry
// grid points. cell_size = extent / cells.
struct Grid {
  int ndim = 1;
  std::array<int, kMaxAxes> cells{1, 0};
  Vec origin{0.0, 0.0};
  Vec extent{1.0, 0.0};

  static Grid line(int cells, double origin, double extent);
  static Grid plane(int cx, int cy, const Vec& origin, const Vec& extent);

  int points(int axis) const { return axis < ndim ? cells[axis] + 1 : 1; }
  double cell_size(int axis) const { return extent[axis] / cells[axis]; }
  double cell_diagonal() const;
  std::int64_t point_count() const;

  std::int64_t flat(const std::array<int, kMaxAxes>& idx) const;
  std::array<int, kMaxAxes> unflat(std::int64_t flat) const;
  Vec point_at(std::int64_t flat) const;
  Vec point_at(const std::array<int, kMaxAxes>& idx) const;

  // Nearest grid point, ties toward the lower index per axis. Returns false
  // when the nearest index falls outside the box.
  bool snap(const Vec& world, std::int64_t& out_flat) const;

  bool operator==(const Grid&) const = default;
  void validate() const;
  std::string describe() const;
};

// 2x2 affine map x -> a*x + b. 1D systems use the top-left entry with the
// rest of the matrix and b[1] zero.
struct AffineMap {
  std::array<std::array<double, 2>, 2> a{{{1.0, 0.0}, {0.0, 1.0}}};
  Vec b{0.0, 0.0};

  Vec apply(const Vec& x) const;
  // Composition this(inner(x)). Used to fold address prefixes left to right.
  AffineMap after(const AffineMap& inner) const;
  // Largest singular value of the matrix (Lipschitz bound for the Euclidean
  // metric).
  double operator_norm2() const;
};

// Inclusive index box [lo, hi] per axis inside a grid.
struct IndexBox {
  std::array<int, kMaxAxes> lo{0, 0};
  std::array<int, kMaxAxes> hi{0, 0};

  bool contains(const std::array<int, kMaxAxes>& idx, int ndim) const;
  bool operator==(const IndexBox&) const = default;
};

}  // namespace fifs
