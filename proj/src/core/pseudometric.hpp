#pragma once

#include <string>
#include <vector>

#include "core/grid.hpp"

namespace fifs {

// Pseudometric on the ambient box. Text forms: "euclid", "proj:<axis>",
// "wmax:<w1,...>" (weighted Chebyshev); maxima of family members are built
// by directed_closure and print as "max(a,b)".
class Pseudometric {
 public:
  enum class Kind { Euclid, Projection, WeightedMax, MaxOf };

  static Pseudometric euclid();
  static Pseudometric projection(int axis);
  static Pseudometric weighted_max(std::vector<double> weights);
  static Pseudometric max_of(std::vector<Pseudometric> parts);
  static Pseudometric parse(const std::string& spec);

  double operator()(const Vec& x, const Vec& y) const;

  Kind kind() const { return kind_; }
  int axis() const { return axis_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Pseudometric>& parts() const { return parts_; }
  const std::string& name() const { return name_; }

 private:
  Kind kind_ = Kind::Euclid;
  int axis_ = 0;
  std::vector<double> weights_;
  std::vector<Pseudometric> parts_;
  std::string name_ = "euclid";
};

struct PseudometricFamily {
  std::vector<Pseudometric> members;
};

// Directed closure: adds the pointwise max of every subset of size 2..cap.
// Originals come first, then combinations in lexicographic index order, so
// the result is deterministic.
PseudometricFamily directed_closure(const PseudometricFamily& family, int cap);

}  // namespace fifs
