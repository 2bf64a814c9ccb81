#pragma once

#include <string>
#include <vector>

namespace fifs {

// Nondecreasing gauge phi with phi(t) < t in the range of interest, used as
// the right-hand side of contraction inequalities d(f(x),f(y)) <= phi(d(x,y)).
// Two shapes: linear (phi(t) = c*t) and a monotone sample table on [0, tmax]
// with linear interpolation (clamped to phi(tmax) beyond the last knot).
class ComparisonFunction {
 public:
  static ComparisonFunction linear(double c);
  static ComparisonFunction table(std::vector<double> ts,
                                  std::vector<double> phis);

  double operator()(double t) const;

  // Pointwise max; linear x linear stays linear, otherwise resampled on the
  // union of knots. Closed under max, so families share a common witness.
  ComparisonFunction max_with(const ComparisonFunction& other) const;

  // Numeric check that iterates phi^(n)(t) drop below tol within n_max steps.
  bool iterates_vanish(double t, double tol, int n_max) const;

  bool is_linear() const { return linear_; }
  double linear_factor() const { return c_; }
  std::string describe() const;

 private:
  bool linear_ = true;
  double c_ = 0.0;
  std::vector<double> ts_, phis_;
};

}  // namespace fifs
