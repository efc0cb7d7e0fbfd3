#ifndef WARPGEO_MONOTONICITY_HPP
#define WARPGEO_MONOTONICITY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "warpgeo/errors.hpp"
#include "warpgeo/grid.hpp"

namespace warpgeo {

enum class Monotonicity { Increasing, Decreasing, NonMonotone, Constant };

inline std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::NonMonotone: return "non-monotone";
    case Monotonicity::Constant: return "constant";
  }
  return "?";
}

struct MonotonicityReport {
  Monotonicity classification = Monotonicity::Constant;
  std::vector<double> sign_changes;  // grid locations of derivative sign flips
  double tol = 0.0;
};

/// Classifies a sampled profile by the sign pattern of its discrete differences.
/// Differences inside the neutral band +-tol*scale (scale = max |value|) do not
/// count, so quadrature-level noise cannot produce spurious sign changes.
inline MonotonicityReport classify_monotonicity(const RadialProfile& samples, double tol = 1e-7) {
  if (samples.size() < 3) throw TooFewSamples("classify_monotonicity: need at least 3 samples");
  const auto& v = samples.values;
  const auto& g = samples.grid;
  double scale = 0.0, vmax = v[0], vmin = v[0];
  for (double x : v) {
    scale = std::max(scale, std::abs(x));
    vmax = std::max(vmax, x);
    vmin = std::min(vmin, x);
  }
  MonotonicityReport rep;
  rep.tol = tol;
  if (vmax - vmin <= tol * (1.0 + std::abs(vmax))) {
    rep.classification = Monotonicity::Constant;
    return rep;
  }
  const double band = tol * scale;
  int last_sign = 0;
  bool saw_pos = false, saw_neg = false;
  std::size_t last_idx = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    if (std::abs(d) <= band) continue;
    const int s = d > 0 ? 1 : -1;
    if (s > 0) saw_pos = true;
    if (s < 0) saw_neg = true;
    if (last_sign != 0 && s != last_sign)
      rep.sign_changes.push_back(0.5 * (g[last_idx] + g[i + 1]));
    last_sign = s;
    last_idx = i;
  }
  if (!rep.sign_changes.empty())
    rep.classification = Monotonicity::NonMonotone;
  else if (saw_pos && !saw_neg)
    rep.classification = Monotonicity::Increasing;
  else if (saw_neg && !saw_pos)
    rep.classification = Monotonicity::Decreasing;
  else
    rep.classification = Monotonicity::Constant;
  return rep;
}

/// Number of sign flips in the sampled values themselves, after discarding
/// entries inside the neutral band tol * max|value|.
inline int sign_change_count(const RadialProfile& profile, double tol = 1e-7) {
  const auto& v = profile.values;
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double band = tol * scale;
  int count = 0, last = 0;
  for (double x : v) {
    if (std::abs(x) <= band) continue;
    const int s = x > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace warpgeo

#endif
