#ifndef WARPGEO_GRID_HPP
#define WARPGEO_GRID_HPP

#include <cmath>
#include <string>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

enum class GridSpacing { Geometric, Uniform };

/// Strictly increasing radial grid. Geometric spacing resolves both the pole
/// asymptotics and exponential tails, so it is the default everywhere.
inline std::vector<double> make_grid(double r_min, double r_max, int n_points,
                                     GridSpacing spacing = GridSpacing::Geometric) {
  if (!(r_min > 0.0) || !(r_max > r_min) || n_points < 2)
    throw DomainError("make_grid: need 0 < r_min < r_max and n_points >= 2");
  std::vector<double> g(n_points);
  if (spacing == GridSpacing::Geometric) {
    const double q = std::log(r_max / r_min);
    for (int i = 0; i < n_points; ++i) g[i] = r_min * std::exp(q * double(i) / (n_points - 1));
  } else {
    for (int i = 0; i < n_points; ++i)
      g[i] = r_min + (r_max - r_min) * double(i) / (n_points - 1);
  }
  g.front() = r_min;
  g.back() = r_max;
  return g;
}

/// A scalar function sampled on a radial grid.
struct RadialProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::string label;

  std::size_t size() const { return grid.size(); }
};

template <class F>
inline RadialProfile sample_profile(const std::vector<double>& grid, const F& f,
                                    std::string label = {}) {
  RadialProfile p;
  p.grid = grid;
  p.values.reserve(grid.size());
  for (double r : grid) p.values.push_back(f(r));
  p.label = std::move(label);
  return p;
}

}  // namespace warpgeo

#endif
