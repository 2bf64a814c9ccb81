#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace fifs {

using Level = std::uint16_t;

// Membership quantization: values live on {0, 1/L, ..., L/L}.
struct LevelScale {
  int L = 16;
  double alpha(int j) const { return static_cast<double>(j) / L; }
  bool operator==(const LevelScale&) const = default;
  void validate() const;
};

// Quantized fuzzy set on a grid, stored densely. A *compact* fuzzy set (the
// payload of FZY1 files and of attractors) additionally has nonempty support
// and attains the top level somewhere; intermediates produced by grey-map
// application may violate both, so the invariants are checked on demand.
class FuzzySet {
 public:
  FuzzySet() = default;
  FuzzySet(Grid grid, LevelScale scale);
  static FuzzySet dirac(const Grid& g, LevelScale s, std::int64_t flat);
  static FuzzySet constant(const Grid& g, LevelScale s, int level);

  const Grid& grid() const { return grid_; }
  LevelScale scale() const { return scale_; }
  int levels() const { return scale_.L; }

  int at(std::int64_t flat) const { return data_[static_cast<size_t>(flat)]; }
  void set(std::int64_t flat, int level);
  // Membership value in [0,1].
  double value(std::int64_t flat) const { return scale_.alpha(at(flat)); }

  std::vector<std::int64_t> support() const;
  // Cut at level j: support for j=0, {x : level(x) >= j} for j in [1, L].
  std::vector<std::int64_t> alpha_cut(int j) const;
  std::vector<Vec> alpha_cut_points(int j) const;

  bool empty_support() const;
  bool is_normal() const;
  bool same_frame(const FuzzySet& o) const;

  bool operator==(const FuzzySet&) const = default;

  // FZY1 text format. Loading enforces compactness (nonempty + normal).
  static FuzzySet load_fzy(const std::string& path);
  static FuzzySet parse_fzy(const std::string& text);
  void save_fzy(const std::string& path) const;
  std::string format_fzy() const;

 private:
  Grid grid_;
  LevelScale scale_;
  std::vector<Level> data_;
};

// Image of u under a point map: result(y) = max{u(x) : snap(f(x)) = y} over
// the support of u. Throws DomainError when an image escapes the grid box.
FuzzySet zadeh_image(const std::function<Vec(const Vec&)>& f,
                     const FuzzySet& u);

// Pointwise max of a nonempty list sharing one frame.
FuzzySet pointwise_max(const std::vector<FuzzySet>& sets);

// Restriction to an index box (support must fit inside); the result lives on
// the sub-grid spanned by the box. extend_to places it back: levels outside
// the box are zero. extend_to(restrict_to(u, box), grid, box) == u exactly.
FuzzySet restrict_to(const FuzzySet& u, const IndexBox& box);
FuzzySet extend_to(const FuzzySet& sub, const Grid& full, const IndexBox& box);

Vec world_point(const Grid& g, std::int64_t flat);
std::vector<Vec> to_points(const Grid& g, const std::vector<std::int64_t>& idx);

}  // namespace fifs
