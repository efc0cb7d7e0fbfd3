#ifndef WARPGEO_SPHERE_FUNCTION_HPP
#define WARPGEO_SPHERE_FUNCTION_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

/// Positive C^1 function on S^{n-1} describing a radial-graph hypersurface.
///
/// Representations:
///  * Fourier (n = 2): u(theta) = c0 + sum a_k cos k theta + b_k sin k theta.
///  * LatLongGrid (n = 3): samples on an n_theta x n_phi grid; gradients via
///    trigonometric differentiation in theta and centered differences in phi.
///  * Callback (any n): value and squared tangential gradient as functions of
///    the angular chart (phi_1..phi_{n-2}, theta).
class SphereFunction {
 public:
  enum class Repr { Fourier, LatLongGrid, Callback };

  /// angles layout: polar angles first, azimuth last (n=2 has just theta).
  using ValueFn = std::function<double(std::span<const double>)>;

  static SphereFunction fourier(std::vector<double> cos_coef, std::vector<double> sin_coef,
                                double c0) {
    SphereFunction f;
    f.n_ = 2;
    f.repr_ = Repr::Fourier;
    f.c0_ = c0;
    f.a_ = std::move(cos_coef);
    f.b_ = std::move(sin_coef);
    return f;
  }

  /// n=3 samples: row-major [i_phi][i_theta], phi in (0, pi) at midpoints,
  /// theta uniform on [0, 2pi).
  static SphereFunction lat_long_grid(std::vector<double> samples, int n_phi, int n_theta) {
    if (n_phi < 4 || n_theta < 4 || int(samples.size()) != n_phi * n_theta)
      throw DomainError("SphereFunction::lat_long_grid: bad grid shape");
    SphereFunction f;
    f.n_ = 3;
    f.repr_ = Repr::LatLongGrid;
    f.grid_ = std::move(samples);
    f.n_phi_ = n_phi;
    f.n_theta_ = n_theta;
    return f;
  }

  static SphereFunction callback(int n, ValueFn value, ValueFn grad_norm_sq) {
    if (n < 2) throw DomainError("SphereFunction::callback: n must be >= 2");
    SphereFunction f;
    f.n_ = n;
    f.repr_ = Repr::Callback;
    f.value_ = std::move(value);
    f.grad_sq_ = std::move(grad_norm_sq);
    return f;
  }

  int ambient_dimension() const { return n_; }
  Repr repr() const { return repr_; }

  /// u at the chart point.
  double value(std::span<const double> angles) const {
    switch (repr_) {
      case Repr::Fourier: {
        const double th = angles.back();
        double v = c0_;
        for (std::size_t k = 0; k < a_.size(); ++k) v += a_[k] * std::cos((k + 1) * th);
        for (std::size_t k = 0; k < b_.size(); ++k) v += b_[k] * std::sin((k + 1) * th);
        return v;
      }
      case Repr::LatLongGrid:
        return grid_bilinear(angles[0], angles[1]);
      case Repr::Callback:
        return value_(angles);
    }
    return 0.0;
  }

  /// |grad_{S^{n-1}} u|^2 at the chart point.
  double grad_norm_sq(std::span<const double> angles) const {
    switch (repr_) {
      case Repr::Fourier: {
        const double th = angles.back();
        double d = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) d += -double(k + 1) * a_[k] * std::sin((k + 1) * th);
        for (std::size_t k = 0; k < b_.size(); ++k) d += double(k + 1) * b_[k] * std::cos((k + 1) * th);
        return d * d;
      }
      case Repr::LatLongGrid:
        return grid_grad_sq(angles[0], angles[1]);
      case Repr::Callback:
        return grad_sq_(angles);
    }
    return 0.0;
  }

  double fourier_derivative(double th) const {
    double d = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) d += -double(k + 1) * a_[k] * std::sin((k + 1) * th);
    for (std::size_t k = 0; k < b_.size(); ++k) d += double(k + 1) * b_[k] * std::cos((k + 1) * th);
    return d;
  }

  int grid_n_phi() const { return n_phi_; }
  int grid_n_theta() const { return n_theta_; }

 private:
  // --- LatLongGrid helpers -------------------------------------------------
  double phi_node(int i) const { return std::numbers::pi * (i + 0.5) / n_phi_; }

  double grid_at(int ip, int it) const {
    it = ((it % n_theta_) + n_theta_) % n_theta_;
    return grid_[std::size_t(ip) * n_theta_ + it];
  }

  double grid_bilinear(double phi, double theta) const {
    const double dphi = std::numbers::pi / n_phi_;
    const double dth = 2.0 * std::numbers::pi / n_theta_;
    double fp = (phi - 0.5 * dphi) / dphi;
    int ip = int(std::floor(fp));
    double wp = fp - ip;
    if (ip < 0) {
      ip = 0;
      wp = 0.0;
    }
    if (ip >= n_phi_ - 1) {
      ip = n_phi_ - 2;
      wp = 1.0;
    }
    const double ft = theta / dth;
    const int it = int(std::floor(ft));
    const double wt = ft - it;
    const double v00 = grid_at(ip, it), v01 = grid_at(ip, it + 1);
    const double v10 = grid_at(ip + 1, it), v11 = grid_at(ip + 1, it + 1);
    return (1 - wp) * ((1 - wt) * v00 + wt * v01) + wp * ((1 - wt) * v10 + wt * v11);
  }

  // du/dtheta via trigonometric (DFT) differentiation along the row, du/dphi
  // via centered differences with one-sided stencils at the first/last rows.
  double grid_grad_sq(double phi, double theta) const {
    const double dphi = std::numbers::pi / n_phi_;
    int ip = int(std::floor((phi - 0.5 * dphi) / dphi + 0.5));
    ip = std::max(0, std::min(n_phi_ - 1, ip));
    const double dth = 2.0 * std::numbers::pi / n_theta_;
    int it = int(std::floor(theta / dth + 0.5)) % n_theta_;

    double du_dth = 0.0;
    {
      // spectral derivative of the periodic row at node it
      const int m = n_theta_;
      for (int j = 0; j < m; ++j) {
        if (j == it) continue;
        const int d = ((it - j) % m + m) % m;
        // derivative weights of the trigonometric cardinal function (even m)
        const double w = 0.5 * std::pow(-1.0, d) / std::tan(0.5 * d * dth);
        du_dth += w * grid_at(ip, j);
      }
    }
    double du_dphi;
    if (ip == 0)
      du_dphi = (-1.5 * grid_at(0, it) + 2.0 * grid_at(1, it) - 0.5 * grid_at(2, it)) / dphi;
    else if (ip == n_phi_ - 1)
      du_dphi = (1.5 * grid_at(ip, it) - 2.0 * grid_at(ip - 1, it) + 0.5 * grid_at(ip - 2, it)) /
                dphi;
    else
      du_dphi = (grid_at(ip + 1, it) - grid_at(ip - 1, it)) / (2.0 * dphi);

    const double sp = std::sin(phi_node(ip));
    return du_dphi * du_dphi + du_dth * du_dth / (sp * sp);
  }

  int n_ = 2;
  Repr repr_ = Repr::Fourier;
  // Fourier
  double c0_ = 1.0;
  std::vector<double> a_, b_;
  // LatLongGrid
  std::vector<double> grid_;
  int n_phi_ = 0, n_theta_ = 0;
  // Callback
  ValueFn value_, grad_sq_;
};

/// Real spherical harmonics on S^2 for the low modes used in perturbation
/// probes, with analytic tangential gradients. Normalization is irrelevant for
/// the probes; these are the plain polynomial forms.
struct SphereHarmonic {
  int l = 1, m = 0;

  double value(double phi, double theta) const {
    const double c = std::cos(phi), s = std::sin(phi);
    switch (l * 10 + m) {
      case 10: return c;                                     // Y_1,0
      case 11: return s * std::cos(theta);                   // Y_1,1
      case 20: return 0.5 * (3 * c * c - 1);                 // Y_2,0
      case 21: return 3 * s * c * std::cos(theta);           // Y_2,1
      case 22: return 3 * s * s * std::cos(2 * theta);       // Y_2,2
      case 30: return 0.5 * (5 * c * c * c - 3 * c);         // Y_3,0
      default: throw DomainError("SphereHarmonic: unsupported (l, m)");
    }
  }

  double dphi(double phi, double theta) const {
    const double c = std::cos(phi), s = std::sin(phi);
    switch (l * 10 + m) {
      case 10: return -s;
      case 11: return c * std::cos(theta);
      case 20: return -3 * s * c;
      case 21: return 3 * (c * c - s * s) * std::cos(theta);
      case 22: return 6 * s * c * std::cos(2 * theta);
      case 30: return 0.5 * (-15 * c * c * s + 3 * s);
      default: throw DomainError("SphereHarmonic: unsupported (l, m)");
    }
  }

  double dtheta(double phi, double theta) const {
    const double s = std::sin(phi);
    switch (l * 10 + m) {
      case 10: return 0.0;
      case 11: return -s * std::sin(theta);
      case 20: return 0.0;
      case 21: return -3 * s * std::cos(phi) * std::sin(theta);
      case 22: return -6 * s * s * std::sin(2 * theta);
      case 30: return 0.0;
      default: throw DomainError("SphereHarmonic: unsupported (l, m)");
    }
  }
};

/// u = R (1 + sum eps_i Y_i) on S^2 as a Callback sphere function.
inline SphereFunction make_harmonic_graph(double R, const std::vector<std::pair<SphereHarmonic, double>>& terms) {
  auto value = [R, terms](std::span<const double> ang) {
    double v = 1.0;
    for (const auto& [Y, eps] : terms) v += eps * Y.value(ang[0], ang[1]);
    return R * v;
  };
  auto grad_sq = [R, terms](std::span<const double> ang) {
    double gp = 0.0, gt = 0.0;
    for (const auto& [Y, eps] : terms) {
      gp += eps * Y.dphi(ang[0], ang[1]);
      gt += eps * Y.dtheta(ang[0], ang[1]);
    }
    const double s = std::sin(ang[0]);
    const double tangential = (gt == 0.0) ? 0.0 : gt * gt / (s * s);
    return R * R * (gp * gp + tangential);
  };
  return SphereFunction::callback(3, value, grad_sq);
}

}  // namespace warpgeo

#endif
