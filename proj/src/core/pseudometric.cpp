#include "core/pseudometric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

Pseudometric Pseudometric::euclid() { return Pseudometric{}; }

Pseudometric Pseudometric::projection(int axis) {
  if (axis < 0 || axis >= kMaxAxes)
    throw ParseError("projection axis out of range: " + std::to_string(axis));
  Pseudometric p;
  p.kind_ = Kind::Projection;
  p.axis_ = axis;
  p.name_ = "proj:" + std::to_string(axis);
  return p;
}

Pseudometric Pseudometric::weighted_max(std::vector<double> weights) {
  if (weights.empty() || weights.size() > kMaxAxes)
    throw ParseError("wmax needs 1 or 2 weights");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw ParseError("wmax weights must be finite and nonnegative");
  Pseudometric p;
  p.kind_ = Kind::WeightedMax;
  std::ostringstream os;
  os << "wmax:";
  for (size_t i = 0; i < weights.size(); ++i)
    os << (i ? "," : "") << weights[i];
  p.name_ = os.str();
  weights.resize(kMaxAxes, 0.0);
  p.weights_ = std::move(weights);
  return p;
}

Pseudometric Pseudometric::max_of(std::vector<Pseudometric> parts) {
  if (parts.empty()) throw ParseError("max_of needs at least one member");
  if (parts.size() == 1) return parts.front();
  Pseudometric p;
  p.kind_ = Kind::MaxOf;
  std::ostringstream os;
  os << "max(";
  for (size_t i = 0; i < parts.size(); ++i)
    os << (i ? "," : "") << parts[i].name();
  os << ")";
  p.name_ = os.str();
  p.parts_ = std::move(parts);
  return p;
}

Pseudometric Pseudometric::parse(const std::string& spec) {
  if (spec == "euclid") return euclid();
  if (spec.rfind("proj:", 0) == 0) {
    try {
      return projection(std::stoi(spec.substr(5)));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad projection axis in '" + spec + "'");
    }
  }
  if (spec.rfind("wmax:", 0) == 0) {
    std::vector<double> w;
    std::string rest = spec.substr(5);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        size_t used = 0;
        w.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad wmax weight '" + tok + "'");
      }
    }
    return weighted_max(std::move(w));
  }
  throw ParseError("unknown pseudometric '" + spec +
                   "' (use euclid, proj:<axis>, wmax:<w,...>)");
}

double Pseudometric::operator()(const Vec& x, const Vec& y) const {
  switch (kind_) {
    case Kind::Euclid: {
      const double dx = x[0] - y[0];
      const double dy = x[1] - y[1];
      return std::sqrt(dx * dx + dy * dy);
    }
    case Kind::Projection:
      return std::abs(x[static_cast<size_t>(axis_)] - y[static_cast<size_t>(axis_)]);
    case Kind::WeightedMax: {
      double m = 0.0;
      for (int a = 0; a < kMaxAxes; ++a)
        m = std::max(m, weights_[static_cast<size_t>(a)] * std::abs(x[static_cast<size_t>(a)] - y[static_cast<size_t>(a)]));
      return m;
    }
    case Kind::MaxOf: {
      double m = 0.0;
      for (const auto& p : parts_) m = std::max(m, p(x, y));
      return m;
    }
  }
  return 0.0;
}

PseudometricFamily directed_closure(const PseudometricFamily& family,
                                    int cap) {
  const int n = static_cast<int>(family.members.size());
  if (n == 0) throw DomainError("directed closure of an empty family");
  if (cap < 1) throw DomainError("directed closure cap must be >= 1");
  PseudometricFamily out = family;
  if (n > 20) throw DomainError("family too large for subset closure");
  // Subsets in increasing size, lexicographic within a size.
  for (int size = 2; size <= std::min(cap, n); ++size) {
    std::vector<int> pick(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<size_t>(i)] = i;
    while (true) {
      std::vector<Pseudometric> parts;
      for (int i : pick) parts.push_back(family.members[static_cast<size_t>(i)]);
      out.members.push_back(Pseudometric::max_of(std::move(parts)));
      int k = size - 1;
      while (k >= 0 && pick[static_cast<size_t>(k)] == n - size + k) --k;
      if (k < 0) break;
      ++pick[static_cast<size_t>(k)];
      for (int i = k + 1; i < size; ++i)
        pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
    }
  }
  return out;
}

}  // namespace fifs
