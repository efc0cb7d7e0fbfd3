#ifndef WARPGEO_RADIAL_GRAPH_HPP
#define WARPGEO_RADIAL_GRAPH_HPP

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "warpgeo/errors.hpp"
#include "warpgeo/geometry.hpp"
#include "warpgeo/quadrature.hpp"
#include "warpgeo/sphere_function.hpp"
#include "warpgeo/spline.hpp"
#include "warpgeo/warping.hpp"

namespace warpgeo {

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

/// Integrates f over S^{n-1} (chart angles: polar angles then azimuth).
/// n=2: uniform trapezoid (spectrally accurate for periodic integrands);
/// n=3: Gauss-Legendre in cos(phi) x trapezoid in theta;
/// 4 <= n <= 6: tensorized Gauss-Legendre with sin^k weights;
/// n > 6: Monte Carlo fallback (fixed seed), standard error reported.
struct SphereQuadrature {
  int n;
  int nodes_per_angle;
  double standard_error = 0.0;

  explicit SphereQuadrature(int dim, int nodes = 64) : n(dim), nodes_per_angle(nodes) {}

  double integrate(const std::function<double(std::span<const double>)>& f) {
    standard_error = 0.0;
    if (n == 2) {
      const int m = std::max(256, 4 * nodes_per_angle);
      double s = 0.0;
      std::array<double, 1> ang;
      for (int i = 0; i < m; ++i) {
        ang[0] = 2.0 * std::numbers::pi * i / m;
        s += f(ang);
      }
      return s * 2.0 * std::numbers::pi / m;
    }
    if (n == 3) {
      std::vector<double> gx, gw;
      gauss_legendre(nodes_per_angle, gx, gw);
      const int mt = 2 * nodes_per_angle;
      double s = 0.0;
      std::array<double, 2> ang;
      for (int i = 0; i < nodes_per_angle; ++i) {
        const double phi = std::acos(gx[i]);
        ang[0] = phi;
        double row = 0.0;
        for (int j = 0; j < mt; ++j) {
          ang[1] = 2.0 * std::numbers::pi * j / mt;
          row += f(ang);
        }
        s += gw[i] * row * 2.0 * std::numbers::pi / mt;
      }
      return s;
    }
    if (n <= 6) {
      // angles phi_1..phi_{n-2} in [0, pi] with weights sin^{n-1-j}, theta last
      std::vector<double> gx, gw;
      gauss_legendre(nodes_per_angle, gx, gw);
      const int k = n - 2;
      const int mt = 2 * nodes_per_angle;
      std::vector<int> idx(k, 0);
      std::vector<double> ang(k + 1);
      double s = 0.0;
      while (true) {
        double wprod = 1.0;
        for (int j = 0; j < k; ++j) {
          const double phi = 0.5 * std::numbers::pi * (gx[idx[j]] + 1.0);
          ang[j] = phi;
          wprod *= gw[idx[j]] * 0.5 * std::numbers::pi *
                   std::pow(std::sin(phi), n - 2 - j);
        }
        double row = 0.0;
        for (int j = 0; j < mt; ++j) {
          ang[k] = 2.0 * std::numbers::pi * j / mt;
          row += f(ang);
        }
        s += wprod * row * 2.0 * std::numbers::pi / mt;
        int carry = k - 1;
        while (carry >= 0 && ++idx[carry] == nodes_per_angle) idx[carry--] = 0;
        if (carry < 0) break;
      }
      return s;
    }
    // Monte Carlo on the chart, importance = uniform on the sphere
    const std::size_t samples = 1'000'000;
    std::mt19937_64 rng(0x5eed5a11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n), ang(n - 1);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i <= samples; ++i) {
      double norm = 0.0;
      for (int j = 0; j < n; ++j) {
        v[j] = gauss(rng);
        norm += v[j] * v[j];
      }
      norm = std::sqrt(norm);
      for (int j = 0; j < n; ++j) v[j] /= norm;
      // chart angles from Cartesian
      double rem = 1.0;
      for (int j = 0; j < n - 2; ++j) {
        double c = v[j] / rem;
        c = std::max(-1.0, std::min(1.0, c));
        ang[j] = std::acos(c);
        rem *= std::sin(ang[j]);
        if (rem < 1e-300) rem = 1e-300;
      }
      ang[n - 2] = std::atan2(v[n - 1], v[n - 2]);
      if (ang[n - 2] < 0) ang[n - 2] += 2.0 * std::numbers::pi;
      const double fx = f(ang);
      const double delta = fx - mean;
      mean += delta / double(i);
      m2 += delta * (fx - mean);
    }
    const double area = omega(n);
    standard_error = area * std::sqrt(m2 / double(samples - 1) / double(samples));
    return area * mean;
  }
};

}  // namespace detail

/// Cached antiderivative G(r) = int_0^r psi^{n-1} on a geometric node set,
/// rebuilt per manifold; nested angular x radial quadrature reads from it.
class VolumeKernelCache {
 public:
  VolumeKernelCache(const ManifoldSpec& M, double r_max, int nodes = 2000) {
    std::vector<double> x(nodes + 1), y(nodes + 1);
    x[0] = 0.0;
    y[0] = 0.0;
    const double r_min = std::min(1e-4, r_max / nodes);
    double prev = 0.0, acc = 0.0;
    for (int i = 1; i <= nodes; ++i) {
      x[i] = (i == 1) ? r_min : r_min * std::pow(r_max / r_min, double(i - 1) / (nodes - 1));
      acc += volume_kernel(M, prev, x[i]);
      y[i] = acc;
      prev = x[i];
    }
    spline_ = CubicSpline(std::move(x), std::move(y));
  }

  double operator()(double r) const { return spline_(r); }
  double max_radius() const { return spline_.x_max(); }

 private:
  CubicSpline spline_;
};

namespace detail {

/// Integrates f over S^2 on a LatLongGrid's own nodes: midpoint rule in phi
/// (the rows sit at midpoints), periodic trapezoid in theta. This avoids
/// interpolating sampled data onto foreign quadrature nodes.
inline double integrate_on_grid(const SphereFunction& u,
                                const std::function<double(std::span<const double>)>& f) {
  const int np = u.grid_n_phi(), nt = u.grid_n_theta();
  const double dphi = std::numbers::pi / np, dth = 2.0 * std::numbers::pi / nt;
  double s = 0.0;
  std::array<double, 2> ang;
  for (int i = 0; i < np; ++i) {
    ang[0] = dphi * (i + 0.5);
    const double w = std::sin(ang[0]) * dphi * dth;
    for (int j = 0; j < nt; ++j) {
      ang[1] = dth * j;
      s += w * f(ang);
    }
  }
  return s;
}

}  // namespace detail

/// Perimeter of the radial graph set {rho <= u(theta)}:
/// int_{S^{n-1}} psi(u)^{n-1} sqrt(1 + |grad u|^2 / psi(u)^2) dS.
inline double graph_perimeter(const ManifoldSpec& M, const SphereFunction& u,
                              int nodes_per_angle = 64) {
  if (u.ambient_dimension() != M.n)
    throw DomainError("graph_perimeter: sphere function dimension mismatch");
  const int p = M.n - 1;
  auto integrand = [&](std::span<const double> ang) {
    const double uu = u.value(ang);
    if (!(uu > 0.0)) throw NonPositiveU("graph_perimeter: u <= 0 on the sphere");
    const double psi = M.psi.eval(uu);
    const double g2 = u.grad_norm_sq(ang);
    return std::pow(psi, p) * std::sqrt(1.0 + g2 / (psi * psi));
  };
  if (u.repr() == SphereFunction::Repr::LatLongGrid)
    return detail::integrate_on_grid(u, integrand);
  detail::SphereQuadrature quad(M.n, nodes_per_angle);
  return quad.integrate(integrand);
}

/// Volume of the radial graph set via the cached antiderivative.
inline double graph_volume(const ManifoldSpec& M, const SphereFunction& u,
                           int nodes_per_angle = 64) {
  if (u.ambient_dimension() != M.n)
    throw DomainError("graph_volume: sphere function dimension mismatch");
  // bound the support radius first so the cache can cover it
  detail::SphereQuadrature probe(M.n, 16);
  double u_max = 0.0;
  auto scan = [&](std::span<const double> ang) {
    u_max = std::max(u_max, u.value(ang));
    return 0.0;
  };
  if (u.repr() == SphereFunction::Repr::LatLongGrid)
    detail::integrate_on_grid(u, scan);
  else
    probe.integrate(scan);
  VolumeKernelCache G(M, 1.25 * u_max + 1e-4);
  auto integrand = [&](std::span<const double> ang) {
    const double uu = u.value(ang);
    if (!(uu > 0.0)) throw NonPositiveU("graph_volume: u <= 0 on the sphere");
    return G(uu);
  };
  if (u.repr() == SphereFunction::Repr::LatLongGrid)
    return detail::integrate_on_grid(u, integrand);
  detail::SphereQuadrature quad(M.n, nodes_per_angle);
  return quad.integrate(integrand);
}

/// Radius of the centered ball with volume V_target: solves G(r) = V/omega_n
/// by bracketing plus safeguarded Newton (G' = psi^{n-1}).
inline double matched_ball_radius(const ManifoldSpec& M, double V_target) {
  if (!(V_target > 0.0)) throw DomainError("matched_ball_radius: volume must be > 0");
  const double om = omega(M.n);
  const double target = V_target / om;
  // bracket
  double hi = 1.0;
  double Ghi = volume_kernel(M, 0.0, hi);
  int guard = 0;
  while (Ghi < target) {
    hi *= 2.0;
    Ghi = volume_kernel(M, 0.0, hi);
    if (++guard > 60 || !std::isfinite(Ghi))
      throw BracketFailure("matched_ball_radius: target volume exceeds computable range");
  }
  double lo = 0.0;
  double r = std::min(hi, std::pow(double(M.n) * target, 1.0 / M.n));  // Euclidean guess
  double G = volume_kernel(M, 0.0, r);
  const int p = M.n - 1;
  for (int it = 0; it < 200; ++it) {
    if (G > target)
      hi = r;
    else
      lo = r;
    const double f = G - target;
    if (std::abs(f) <= 1e-12 * target) break;
    const double dG = std::pow(M.psi.eval(r), p);
    double step = f / dG;
    double next = r - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // safeguard
    G += volume_kernel(M, r, next);  // incremental update keeps each quadrature short
    r = next;
  }
  return r;
}

struct GraphSetReport {
  double volume = 0.0;
  double perimeter = 0.0;
  double matched_ball_radius = 0.0;
  double ball_perimeter = 0.0;
  double cii_gap = 0.0;  // perimeter - ball perimeter; < 0 flags a counterexample candidate
};

/// Compares a radial graph set against the centered ball of equal volume.
inline GraphSetReport cii_probe(const ManifoldSpec& M, const SphereFunction& u,
                                int nodes_per_angle = 64) {
  GraphSetReport rep;
  rep.volume = graph_volume(M, u, nodes_per_angle);
  rep.perimeter = graph_perimeter(M, u, nodes_per_angle);
  rep.matched_ball_radius = matched_ball_radius(M, rep.volume);
  rep.ball_perimeter = omega(M.n) * std::pow(M.psi.eval(rep.matched_ball_radius), M.n - 1);
  rep.cii_gap = rep.perimeter - rep.ball_perimeter;
  return rep;
}

}  // namespace warpgeo

#endif
