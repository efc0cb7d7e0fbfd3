#ifndef WARPGEO_GEOMETRY_HPP
#define WARPGEO_GEOMETRY_HPP

#include <cmath>
#include <vector>

#include "warpgeo/errors.hpp"
#include "warpgeo/grid.hpp"
#include "warpgeo/quadrature.hpp"
#include "warpgeo/warping.hpp"

namespace warpgeo {

/// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
inline double omega(int n) {
  if (n < 2) throw DomainError("omega: n must be >= 2");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace detail {
inline void require_positive_radius(double r, const char* where) {
  if (!(r > 0.0)) throw PoleSingularity(std::string(where) + ": r must be > 0");
}
}  // namespace detail

/// Sectional curvature of planes containing the radial direction: -psi''/psi.
inline double k_rad(const ManifoldSpec& M, double r) {
  detail::require_positive_radius(r, "k_rad");
  return -M.psi.d2_over_psi(r);
}

/// Sectional curvature of planes orthogonal to the radial direction:
/// -(psi'^2 - 1)/psi^2, evaluated as 1/psi^2 - (psi'/psi)^2 so the quotient
/// survives psi overflow (1/psi^2 underflows to its correct limit 0).
inline double k_tan(const ManifoldSpec& M, double r) {
  detail::require_positive_radius(r, "k_tan");
  const double inv_psi = 1.0 / M.psi.eval(r);
  const double s = M.psi.log_derivative(r);
  return inv_psi * inv_psi - s * s;
}

inline double ricci_rad(const ManifoldSpec& M, double r) { return (M.n - 1) * k_rad(M, r); }

/// Tangential Ricci as the combination k_rad + (n-2) k_tan.
inline double ricci_tan(const ManifoldSpec& M, double r) {
  return k_rad(M, r) + (M.n - 2) * k_tan(M, r);
}

inline double scalar_curvature(const ManifoldSpec& M, double r) {
  return 2.0 * (M.n - 1) * k_rad(M, r) + double(M.n - 1) * (M.n - 2) * k_tan(M, r);
}

/// Mean curvature of the geodesic sphere of radius r: (n-1) psi'/psi.
inline double mean_curvature(const ManifoldSpec& M, double r) {
  detail::require_positive_radius(r, "mean_curvature");
  return (M.n - 1) * M.psi.log_derivative(r);
}

struct BallGeometry {
  double r = 0.0;
  double volume = 0.0;
  double perimeter = 0.0;
  double quad_error_estimate = 0.0;
};

/// omega_n * int_0^r psi^{n-1}, by adaptive quadrature; the perimeter
/// omega_n psi(r)^{n-1} is exact by construction.
inline BallGeometry ball_volume(const ManifoldSpec& M, double r) {
  detail::require_positive_radius(r, "ball_volume");
  require_pole_valid(M, "ball_volume");
  const double om = omega(M.n);
  const int p = M.n - 1;
  QuadOptions opt;
  opt.abs_tol = 1e-10;  // interpreted as 1e-10 * (1 + |result|), see integrate()
  opt.rel_tol = 1e-12;
  auto integrand = [&](double t) { return std::pow(M.psi.eval(t), p); };
  QuadResult q = integrate(integrand, 0.0, r, opt);
  BallGeometry b;
  b.r = r;
  b.volume = om * q.value;
  b.perimeter = om * std::pow(M.psi.eval(r), p);
  b.quad_error_estimate = om * q.error;
  if (!(b.volume > 0.0)) throw EvaluationFailure("ball_volume: nonpositive volume");
  return b;
}

/// G(r) = int_0^r psi^{n-1}: the ball volume divided by omega_n.
inline double volume_kernel(const ManifoldSpec& M, double a, double b) {
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  const int p = M.n - 1;
  return integrate([&](double t) { return std::pow(M.psi.eval(t), p); }, a, b, opt).value;
}

/// Euclidean-comparison expansions of small geodesic balls around a point at
/// distance r_center from the pole, through the scalar-curvature correction.
/// The leading volume constant is the Euclidean unit-ball volume omega_n / n.
inline std::pair<double, double> small_ball_expansion(const ManifoldSpec& M, double r_center,
                                                      double eps) {
  detail::require_positive_radius(r_center, "small_ball_expansion");
  if (!(eps > 0.0)) throw DomainError("small_ball_expansion: eps must be > 0");
  const double S = scalar_curvature(M, r_center);
  const double om = omega(M.n);
  const int n = M.n;
  const double vol = om / n * std::pow(eps, n) * (1.0 - S * eps * eps / (6.0 * (n + 2)));
  const double per = om * std::pow(eps, n - 1) * (1.0 - S * eps * eps / (6.0 * n));
  return {vol, per};
}

struct CurvatureProfile {
  std::vector<double> grid;
  std::vector<double> k_rad, k_tan, ric_rad, ric_tan, scalar, mean;
};

inline CurvatureProfile curvature_profile(const ManifoldSpec& M, const std::vector<double>& grid) {
  CurvatureProfile p;
  p.grid = grid;
  const std::size_t m = grid.size();
  p.k_rad.reserve(m);
  p.k_tan.reserve(m);
  p.ric_rad.reserve(m);
  p.ric_tan.reserve(m);
  p.scalar.reserve(m);
  p.mean.reserve(m);
  for (double r : grid) {
    const double kr = k_rad(M, r), kt = k_tan(M, r);
    p.k_rad.push_back(kr);
    p.k_tan.push_back(kt);
    p.ric_rad.push_back((M.n - 1) * kr);
    p.ric_tan.push_back(kr + (M.n - 2) * kt);
    p.scalar.push_back(2.0 * (M.n - 1) * kr + double(M.n - 1) * (M.n - 2) * kt);
    p.mean.push_back((M.n - 1) * M.psi.log_derivative(r));
  }
  return p;
}

}  // namespace warpgeo

#endif
