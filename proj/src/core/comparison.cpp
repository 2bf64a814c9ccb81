#include "core/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

ComparisonFunction ComparisonFunction::linear(double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw DomainError("linear gauge factor must be finite and nonnegative");
  ComparisonFunction f;
  f.linear_ = true;
  f.c_ = c;
  return f;
}

ComparisonFunction ComparisonFunction::table(std::vector<double> ts,
                                             std::vector<double> phis) {
  if (ts.size() != phis.size() || ts.size() < 2)
    throw DomainError("gauge table needs matching sample lists, >= 2 knots");
  if (ts.front() != 0.0 || phis.front() != 0.0)
    throw DomainError("gauge table must start at (0, 0)");
  for (size_t i = 1; i < ts.size(); ++i)
    if (ts[i] <= ts[i - 1] || phis[i] < phis[i - 1])
      throw DomainError("gauge table must be strictly increasing in t and "
                        "nondecreasing in phi");
  ComparisonFunction f;
  f.linear_ = false;
  f.ts_ = std::move(ts);
  f.phis_ = std::move(phis);
  return f;
}

double ComparisonFunction::operator()(double t) const {
  if (t < 0.0) throw DomainError("gauge evaluated at a negative distance");
  if (linear_) return c_ * t;
  if (t >= ts_.back()) return phis_.back();
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const size_t hi = static_cast<size_t>(it - ts_.begin());
  if (hi == 0) return phis_.front();
  const double w = (t - ts_[hi - 1]) / (ts_[hi] - ts_[hi - 1]);
  return phis_[hi - 1] + w * (phis_[hi] - phis_[hi - 1]);
}

ComparisonFunction ComparisonFunction::max_with(
    const ComparisonFunction& other) const {
  if (linear_ && other.linear_) return linear(std::max(c_, other.c_));
  std::vector<double> knots{0.0};
  if (!linear_) knots.insert(knots.end(), ts_.begin(), ts_.end());
  if (!other.linear_)
    knots.insert(knots.end(), other.ts_.begin(), other.ts_.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<double> vals;
  vals.reserve(knots.size());
  for (double t : knots) vals.push_back(std::max((*this)(t), other(t)));
  return table(std::move(knots), std::move(vals));
}

bool ComparisonFunction::iterates_vanish(double t, double tol,
                                         int n_max) const {
  double v = t;
  for (int n = 0; n < n_max; ++n) {
    if (v <= tol) return true;
    const double next = (*this)(v);
    if (next >= v) return false;  // stalled; iterates cannot vanish
    v = next;
  }
  return v <= tol;
}

std::string ComparisonFunction::describe() const {
  std::ostringstream os;
  if (linear_) {
    os << "linear c=" << c_;
  } else {
    os << "table[" << ts_.size() << " knots, tmax=" << ts_.back() << "]";
  }
  return os.str();
}

}  // namespace fifs
