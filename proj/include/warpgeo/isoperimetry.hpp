#ifndef WARPGEO_ISOPERIMETRY_HPP
#define WARPGEO_ISOPERIMETRY_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "warpgeo/errors.hpp"
#include "warpgeo/geometry.hpp"
#include "warpgeo/grid.hpp"
#include "warpgeo/monotonicity.hpp"
#include "warpgeo/quadrature.hpp"
#include "warpgeo/warping.hpp"

namespace warpgeo {

namespace detail {

struct BallData {
  double V = 0.0, P = 0.0, logV = 0.0, logP = 0.0;
};

inline BallData ball_data(const ManifoldSpec& M, double r) {
  require_positive_radius(r, "ball_data");
  const double om = omega(M.n);
  BallData d;
  d.V = om * volume_kernel(M, 0.0, r);
  d.logV = std::log(d.V);
  d.logP = std::log(om) + (M.n - 1) * M.psi.log_psi(r);
  d.P = std::exp(d.logP);
  return d;
}

}  // namespace detail

/// Isoperimetric quotient of centered balls, P(r)^n / V(r)^{n-1}.
/// The powers are combined in log space, so the result is exact up to the
/// point where the quotient itself leaves double range.
inline double quotient_Q(const ManifoldSpec& M, double r) {
  const auto d = detail::ball_data(M, r);
  return std::exp(M.n * d.logP - (M.n - 1) * d.logV);
}

/// log of quotient_Q; always finite, used for monotonicity classification.
inline double quotient_logQ(const ManifoldSpec& M, double r) {
  const auto d = detail::ball_data(M, r);
  return M.n * d.logP - (M.n - 1) * d.logV;
}

/// Cheeger-type quotient of centered balls, P(r) / V(r).
inline double quotient_I(const ManifoldSpec& M, double r) {
  const auto d = detail::ball_data(M, r);
  return std::exp(d.logP - d.logV);
}

/// Auxiliary comparison function J(r) = n psi' V - psi P, computed in the
/// factored form psi * V * (n psi'/psi - P/V) to avoid cancellation between
/// two nearly equal large terms.
inline double auxiliary_J(const ManifoldSpec& M, double r) {
  const auto d = detail::ball_data(M, r);
  const double s = M.psi.log_derivative(r);
  const double I = std::exp(d.logP - d.logV);
  return M.psi.eval(r) * d.V * (M.n * s - I);
}

/// Bishop-type ratio V(r) / r^n; monotone increasing on Cartan-Hadamard inputs.
inline double bishop_f(const ManifoldSpec& M, double r) {
  const auto d = detail::ball_data(M, r);
  return std::exp(d.logV - M.n * std::log(r));
}

/// Second-variation stability margin of the centered sphere of radius R.
/// Two algebraically equal forms are evaluated and cross-checked:
///   1/psi^2 - (k_rad + (psi'/psi)^2)   and   k_tan - k_rad.
inline double stability_margin(const ManifoldSpec& M, double R) {
  detail::require_positive_radius(R, "stability_margin");
  const double inv = 1.0 / M.psi.eval(R);
  const double s = M.psi.log_derivative(R);
  const double kr = k_rad(M, R);
  const double form1 = inv * inv - (kr + s * s);
  const double form2 = k_tan(M, R) - kr;
  const double scale = std::max({1.0, inv * inv, s * s, std::abs(kr)});
  if (std::abs(form1 - form2) > 1e-10 * scale)
    throw EvaluationFailure("stability_margin: algebraic forms disagree at R=" + std::to_string(R));
  return form2;
}

/// Small-volume isoperimetric quotient around a center at distance r_center:
/// n omega_n^{1/n} (1 - S(r_center) (V/omega_n)^{2/n} / (2n(n+2))).
inline double small_volume_quotient(const ManifoldSpec& M, double r_center, double V_small) {
  detail::require_positive_radius(r_center, "small_volume_quotient");
  const double om = omega(M.n);
  const double eps = std::pow(V_small / om, 1.0 / M.n);
  if (!(eps < 0.1)) throw VolumeTooLarge("small_volume_quotient: (V/omega_n)^{1/n} must be < 0.1");
  const double S = scalar_curvature(M, r_center);
  const int n = M.n;
  return n * std::pow(om, 1.0 / n) *
         (1.0 - S * std::pow(V_small / om, 2.0 / n) / (2.0 * n * (n + 2)));
}

struct QuotientProfile {
  std::vector<double> grid;
  std::vector<double> Q, I, J, f;
  std::vector<double> logQ;  // finite even where Q overflows
};

/// Samples Q, I, J, f on a grid, accumulating the volume integral segment by
/// segment so the profile costs one quadrature sweep instead of one per point.
inline QuotientProfile quotient_profile(const ManifoldSpec& M, const std::vector<double>& grid) {
  QuotientProfile p;
  p.grid = grid;
  const double om = omega(M.n);
  const std::size_t m = grid.size();
  p.Q.reserve(m);
  p.I.reserve(m);
  p.J.reserve(m);
  p.f.reserve(m);
  p.logQ.reserve(m);
  double G = 0.0, prev = 0.0;
  for (double r : grid) {
    G += volume_kernel(M, prev, r);
    prev = r;
    const double V = om * G;
    const double logV = std::log(V);
    const double logP = std::log(om) + (M.n - 1) * M.psi.log_psi(r);
    const double s = M.psi.log_derivative(r);
    const double I = std::exp(logP - logV);
    p.Q.push_back(std::exp(M.n * logP - (M.n - 1) * logV));
    p.logQ.push_back(M.n * logP - (M.n - 1) * logV);
    p.I.push_back(I);
    p.J.push_back(M.psi.eval(r) * V * (M.n * s - I));
    p.f.push_back(std::exp(logV - M.n * std::log(r)));
  }
  return p;
}

struct CiiReport {
  bool cond_i = false;    // K_rad not increasing
  bool cond_ii = false;   // K_rad <= K_tan pointwise
  bool cond_iii = false;  // K_tan decreasing (constant counts)
  std::vector<double> cond_ii_margins;
  double stability_margin_min = 0.0;
  bool necessary_conditions_hold = false;
  std::string violated;  // comma-separated list of failed conditions
};

/// Checks the three necessary curvature conditions for the centered
/// isoperimetric inequality on a geometric grid.
inline CiiReport cii_necessary_check(const ManifoldSpec& M, double r_max = 30.0, int n_pts = 400,
                                     double tol = 1e-9) {
  require_pole_valid(M, "cii_necessary_check");
  const auto grid = make_grid(1e-3, r_max, n_pts);
  RadialProfile kr_prof, kt_prof;
  kr_prof.grid = kt_prof.grid = grid;
  CiiReport rep;
  rep.cond_ii_margins.reserve(grid.size());
  double min_margin = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const double kr = k_rad(M, r), kt = k_tan(M, r);
    kr_prof.values.push_back(kr);
    kt_prof.values.push_back(kt);
    const double margin = kt - kr;
    rep.cond_ii_margins.push_back(margin);
    min_margin = std::min(min_margin, margin);
  }
  rep.stability_margin_min = min_margin;
  const auto cls_kr = classify_monotonicity(kr_prof, 1e-7);
  const auto cls_kt = classify_monotonicity(kt_prof, 1e-7);
  rep.cond_i = cls_kr.classification != Monotonicity::Increasing;
  rep.cond_ii = min_margin >= -std::max(tol, 1e-9);
  rep.cond_iii = cls_kt.classification == Monotonicity::Decreasing ||
                 cls_kt.classification == Monotonicity::Constant;
  rep.necessary_conditions_hold = rep.cond_i && rep.cond_ii && rep.cond_iii;
  if (!rep.cond_i) rep.violated += "i,";
  if (!rep.cond_ii) rep.violated += "ii,";
  if (!rep.cond_iii) rep.violated += "iii,";
  if (!rep.violated.empty()) rep.violated.pop_back();
  return rep;
}

}  // namespace warpgeo

#endif
