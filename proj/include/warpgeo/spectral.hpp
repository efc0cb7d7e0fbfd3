#ifndef WARPGEO_SPECTRAL_HPP
#define WARPGEO_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "warpgeo/errors.hpp"
#include "warpgeo/geometry.hpp"
#include "warpgeo/grid.hpp"
#include "warpgeo/monotonicity.hpp"
#include "warpgeo/quadrature.hpp"
#include "warpgeo/warping.hpp"

namespace warpgeo {

enum class SpectralMethod {
  RadialFD,
  PerssonLimit,
  PerssonWithTildeL,
  CheegerBound,
  McKeanBound,
  BallLowerBound
};

inline std::string to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::RadialFD: return "radial_fd";
    case SpectralMethod::PerssonLimit: return "persson_limit";
    case SpectralMethod::PerssonWithTildeL: return "persson_with_tilde_l";
    case SpectralMethod::CheegerBound: return "cheeger_bound";
    case SpectralMethod::McKeanBound: return "mckean_bound";
    case SpectralMethod::BallLowerBound: return "ball_lower_bound";
  }
  return "?";
}

struct SpectralEstimate {
  double value = 0.0;
  SpectralMethod method = SpectralMethod::RadialFD;
  double R_max = 0.0;
  int N = 0;
  double error_indicator = 0.0;  // change under grid refinement
};

namespace detail {

// Symmetric tridiagonal pencil from the radial quadratic form on (0, R_max]:
// stiffness uses midpoint weights psi^{n-1}(r_{i+1/2})/h, the diagonal mass is
// psi^{n-1}(r_i) h; the flux through r=0 is omitted (psi^{n-1}(0)=0 for
// pole-valid psi makes this exact). The generalized problem is reduced to a
// standard one by diagonal mass scaling, assembled from log weights so the
// entries stay finite wherever psi^{n-1} itself would overflow.
struct Tridiag {
  std::vector<double> diag;  // N-1 entries
  std::vector<double> off;   // N-2 entries
};

inline Tridiag assemble_radial(const ManifoldSpec& M, double R, int N) {
  const double h = R / N;
  const int p = M.n - 1;
  auto lw = [&](double x) { return p * M.psi.log_psi(x); };
  Tridiag T;
  T.diag.resize(N - 1);
  T.off.resize(N - 2);
  std::vector<double> lw_node(N), lw_mid(N);
  for (int i = 1; i <= N - 1; ++i) lw_node[i] = lw(i * h);
  for (int i = 1; i <= N; ++i) lw_mid[i - 1] = lw((i - 0.5) * h);
  const double h2 = h * h;
  for (int i = 1; i <= N - 1; ++i) {
    const double left = (i >= 2) ? std::exp(lw_mid[i - 1] - lw_node[i]) : 0.0;
    const double right = std::exp(lw_mid[i] - lw_node[i]);
    T.diag[i - 1] = (left + right) / h2;
    if (!std::isfinite(T.diag[i - 1]))
      throw OverflowAtWeight("assemble_radial: weight ratio overflow at node " +
                             std::to_string(i));
    if (i <= N - 2)
      T.off[i - 1] = -std::exp(lw_mid[i] - 0.5 * (lw_node[i] + lw_node[i + 1])) / h2;
  }
  return T;
}

// number of eigenvalues of T strictly below sigma (Sturm sequence on LDL^T)
inline int sturm_count(const Tridiag& T, double sigma) {
  int count = 0;
  double d = T.diag[0] - sigma;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < T.diag.size(); ++i) {
    const double e = T.off[i - 1];
    if (d == 0.0) d = -1e-300;
    d = T.diag[i] - sigma - e * e / d;
    if (d < 0) ++count;
  }
  return count;
}

inline double smallest_eigenvalue(const Tridiag& T) {
  double hi = 0.0;
  for (std::size_t i = 0; i < T.diag.size(); ++i) {
    double row = T.diag[i];
    if (i > 0) row += std::abs(T.off[i - 1]);
    if (i < T.off.size()) row += std::abs(T.off[i]);
    hi = std::max(hi, row);
  }
  double lo = 0.0;
  if (sturm_count(T, lo) > 0) lo = -hi;  // the form is PSD; tolerate rounding
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(T, mid) >= 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-12) return 0.5 * (lo + hi);
  }
  throw NonConvergedBisection("smallest_eigenvalue: bisection did not reach tolerance");
}

}  // namespace detail

/// First radial Dirichlet eigenvalue estimate on (0, R_max]: discretizes
/// inf int a'^2 psi^{n-1} / int a^2 psi^{n-1} with a Dirichlet condition at
/// R_max and the natural condition at 0, on a uniform N-point grid. The
/// variational construction makes the estimate an upper bound for the true
/// infimum; error_indicator compares against the N/2 grid.
inline SpectralEstimate lambda1_radial(const ManifoldSpec& M, double R_max, int N) {
  require_pole_valid(M, "lambda1_radial");
  if (!(R_max > 0.0) || N < 100) throw DomainError("lambda1_radial: need R_max > 0, N >= 100");
  const double lam = detail::smallest_eigenvalue(detail::assemble_radial(M, R_max, N));
  const double lam_coarse = detail::smallest_eigenvalue(detail::assemble_radial(M, R_max, N / 2));
  SpectralEstimate est;
  est.value = lam;
  est.method = SpectralMethod::RadialFD;
  est.R_max = R_max;
  est.N = N;
  est.error_indicator = std::abs(lam - lam_coarse);
  return est;
}

/// Same discretization restricted to a centered ball of radius r.
inline SpectralEstimate ball_lambda1_numeric(const ManifoldSpec& M, double r, int N = 2000) {
  return lambda1_radial(M, r, N);
}

/// Schroedinger potential of the Liouville-transformed radial form:
/// W = s^2/4 + s'/2 with s = (n-1) psi'/psi.
inline double persson_potential(const ManifoldSpec& M, double r) {
  detail::require_positive_radius(r, "persson_potential");
  const double s = (M.n - 1) * M.psi.log_derivative(r);
  const double sp = (M.n - 1) * (M.psi.d2_over_psi(r) - std::pow(M.psi.log_derivative(r), 2));
  return 0.25 * s * s + 0.5 * sp;
}

struct PotentialProfile {
  std::vector<double> grid;
  std::vector<double> W;
  double L_estimate = 0.0;
  double tildeL_estimate = 0.0;
};

struct LimitResult {
  double L = 0.0;       // lim (n-1) psi'/psi
  double tildeL = 0.0;  // lim (psi'/psi)'
  bool converged = false;
};

namespace detail {

// Limit of a sampled sequence along geometrically growing probes. Raw tail
// agreement wins outright; otherwise corrections must decay (ratio test) and
// successive Aitken extrapolations must stabilise.
inline std::pair<double, bool> extrapolate_limit(const std::vector<double>& x, double tol) {
  const std::size_t m = x.size();
  if (m < 3) return {x.back(), false};
  auto aitken = [](double a, double b, double c) {
    const double d1 = b - a, d2 = c - b;
    const double den = d2 - d1;
    if (std::abs(den) < 1e-300) return c;
    const double est = c - d2 * d2 / den;
    return std::isfinite(est) ? est : c;
  };
  const double last_est = aitken(x[m - 3], x[m - 2], x[m - 1]);
  if (std::abs(x[m - 1] - x[m - 2]) <= tol * (1.0 + std::abs(x[m - 1]))) return {last_est, true};
  const double dn = x[m - 1] - x[m - 2], dp = x[m - 2] - x[m - 3];
  if (!(std::abs(dn) <= 0.9 * std::abs(dp))) return {x[m - 1], false};
  if (m >= 4) {
    const double prev_est = aitken(x[m - 4], x[m - 3], x[m - 2]);
    if (std::abs(last_est - prev_est) <= tol * (1.0 + std::abs(last_est))) return {last_est, true};
  }
  return {last_est, false};
}

}  // namespace detail

/// Extrapolates L = (n-1) lim psi'/psi and tildeL = lim (psi'/psi)' along the
/// probe list (geometric probes assumed; default 10,20,...,160).
inline LimitResult limit_L(const ManifoldSpec& M,
                           std::vector<double> probes = {10, 20, 40, 80, 160}) {
  if (probes.size() < 3) throw DomainError("limit_L: need at least 3 probes");
  for (std::size_t i = 1; i < probes.size(); ++i)
    if (!(probes[i] > probes[i - 1])) throw DomainError("limit_L: probes must increase");
  std::vector<double> s, sp;
  for (double r : probes) {
    const double d1r = M.psi.log_derivative(r);
    const double d2r = M.psi.d2_over_psi(r);
    if (!std::isfinite(d1r) || !std::isfinite(d2r))
      throw EvaluationFailure("limit_L: ratio evaluation failed at r=" + std::to_string(r) +
                              " (probe beyond overflow radius?)");
    s.push_back((M.n - 1) * d1r);
    sp.push_back(d2r - d1r * d1r);
  }
  LimitResult res;
  auto [Lv, okL] = detail::extrapolate_limit(s, 1e-6);
  auto [Tv, okT] = detail::extrapolate_limit(sp, 1e-6);
  res.L = Lv;
  res.tildeL = Tv;
  res.converged = okL && okT;
  return res;
}

/// lambda_1 of the manifold from the Persson limit: L^2/4 + (n-1) tildeL / 2.
inline SpectralEstimate lambda1_via_persson(const ManifoldSpec& M,
                                            std::vector<double> probes = {10, 20, 40, 80, 160}) {
  const LimitResult lim = limit_L(M, probes);
  if (!lim.converged)
    throw HypothesisNotMet("lambda1_via_persson: limit_L did not converge for " + M.name());
  SpectralEstimate est;
  est.value = lim.L * lim.L / 4.0 + (M.n - 1) * lim.tildeL / 2.0;
  est.method = std::abs(lim.tildeL) <= 1e-9 ? SpectralMethod::PerssonLimit
                                            : SpectralMethod::PerssonWithTildeL;
  return est;
}

/// Samples W on a grid and extrapolates its limit; the limit estimates are the
/// directly computed counterparts of the Persson formula inputs.
inline PotentialProfile potential_profile(const ManifoldSpec& M, const std::vector<double>& grid,
                                          std::vector<double> probes = {10, 20, 40, 80, 160}) {
  PotentialProfile p;
  p.grid = grid;
  p.W.reserve(grid.size());
  for (double r : grid) p.W.push_back(persson_potential(M, r));
  LimitResult lim = limit_L(M, probes);
  p.L_estimate = lim.L;
  p.tildeL_estimate = lim.tildeL;
  return p;
}

enum class DiscretenessVerdict { Discrete, NotDiscrete, Inconclusive };

inline std::string to_string(DiscretenessVerdict v) {
  switch (v) {
    case DiscretenessVerdict::Discrete: return "discrete";
    case DiscretenessVerdict::NotDiscrete: return "not_discrete";
    case DiscretenessVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct DiscretenessReport {
  std::vector<double> R_samples;
  std::vector<double> product_values;  // (int_0^R psi^{n-1}) * (int_R^inf psi^{1-n})
  double limit_estimate = 0.0;
  DiscretenessVerdict verdict = DiscretenessVerdict::Inconclusive;
  std::string note;
};

/// Discreteness criterion: the spectrum is discrete iff the head*tail volume
/// product tends to zero. The limit is extrapolated with a quadratic model in
/// 1/R^2, which captures both the algebraically and exponentially convergent
/// families in scope.
inline DiscretenessReport discreteness_criterion(const ManifoldSpec& M,
                                                 std::vector<double> R_list = {6, 10, 14, 18}) {
  if (R_list.size() < 3) throw DomainError("discreteness_criterion: need >= 3 probes");
  DiscretenessReport rep;
  rep.R_samples = R_list;
  const int p = M.n - 1;
  // infinite-volume precheck across the probe span
  const double head_first = volume_kernel(M, 0.0, R_list.front());
  double head = head_first, prevR = R_list.front();
  std::vector<double> heads{head_first};
  for (std::size_t i = 1; i < R_list.size(); ++i) {
    head += volume_kernel(M, prevR, R_list[i]);
    prevR = R_list[i];
    heads.push_back(head);
  }
  if (!(heads.back() > 4.0 * heads.front())) {
    rep.note = "volume growth too slow across probes; infinite-volume hypothesis unverified";
    rep.verdict = DiscretenessVerdict::Inconclusive;
    return rep;
  }
  QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  try {
    for (std::size_t i = 0; i < R_list.size(); ++i) {
      const double R = R_list[i];
      const double tail =
          integrate_tail([&](double t) { return std::exp(-p * M.psi.log_psi(t)); }, R, opt).value;
      rep.product_values.push_back(heads[i] * tail);
    }
  } catch (const TailDivergence&) {
    rep.note = "tail integral of psi^{1-n} diverges: criterion presupposes non-parabolicity";
    rep.verdict = DiscretenessVerdict::Inconclusive;
    return rep;
  }
  // quadratic fit in u = 1/R^2 through the last three samples, value at u = 0
  {
    const std::size_t m = rep.product_values.size();
    const double u1 = 1.0 / (R_list[m - 3] * R_list[m - 3]);
    const double u2 = 1.0 / (R_list[m - 2] * R_list[m - 2]);
    const double u3 = 1.0 / (R_list[m - 1] * R_list[m - 1]);
    const double p1 = rep.product_values[m - 3], p2 = rep.product_values[m - 2],
                 p3 = rep.product_values[m - 1];
    // Lagrange evaluation at u = 0
    const double L0 = p1 * (u2 * u3) / ((u1 - u2) * (u1 - u3)) +
                      p2 * (u1 * u3) / ((u2 - u1) * (u2 - u3)) +
                      p3 * (u1 * u2) / ((u3 - u1) * (u3 - u2));
    rep.limit_estimate = std::max(0.0, L0);
  }
  const std::size_t m = rep.product_values.size();
  const double tail_min =
      std::min({rep.product_values[m - 1], rep.product_values[m - 2], rep.product_values[m - 3]});
  if (rep.limit_estimate <= 1e-6)
    rep.verdict = DiscretenessVerdict::Discrete;
  else if (tail_min >= 1e-4)
    rep.verdict = DiscretenessVerdict::NotDiscrete;
  else
    rep.verdict = DiscretenessVerdict::Inconclusive;
  return rep;
}

/// Cheeger lower bound h^2/4.
inline double cheeger_bound(double h) {
  if (!(h >= 0.0)) throw DomainError("cheeger_bound: h must be >= 0");
  return 0.25 * h * h;
}

/// McKean lower bound -(n-1)^2 kappa / 4 for curvature <= kappa < 0.
inline double mckean_bound(int n, double kappa) {
  if (n < 2) throw DomainError("mckean_bound: n must be >= 2");
  if (!(kappa < 0.0)) throw DomainError("mckean_bound: kappa must be < 0");
  return -0.25 * double(n - 1) * (n - 1) * kappa;
}

/// Ball lower bound n^2 / (4 r^2) for centered balls under increasing t psi'/psi.
inline double ball_lower_bound(int n, double r) {
  if (n < 2) throw DomainError("ball_lower_bound: n must be >= 2");
  if (!(r > 0.0)) throw DomainError("ball_lower_bound: r must be > 0");
  return 0.25 * double(n) * n / (r * r);
}

/// Classifies g(t) = t psi'(t)/psi(t) on (0, r_max]; g(0+) = 1 for pole-valid
/// warping functions and C for psi = t^C, both covered by t * (psi'/psi).
inline MonotonicityReport g_monotone_check(const ManifoldSpec& M, double r_max = 30.0,
                                           double tol = 1e-7) {
  if (!(r_max > 0.0)) throw DomainError("g_monotone_check: r_max must be > 0");
  const auto grid = make_grid(1e-4, r_max, 600);
  const auto prof =
      sample_profile(grid, [&](double t) { return t * M.psi.log_derivative(t); }, "g");
  return classify_monotonicity(prof, tol);
}

struct VolumeBoundResult {
  double lhs = 0.0;  // omega_n int g(t) psi^{n-1} over the annulus
  double rhs = 0.0;  // volume of the annulus
  bool holds = false;
};

/// Annulus probe of the volume upper bound: int_A g dV >= Vol(A) whenever g is
/// nondecreasing on [0, r].
inline VolumeBoundResult volume_bound_check(const ManifoldSpec& M, double r, double a_inner,
                                            double a_outer) {
  if (!(0.0 <= a_inner && a_inner < a_outer && a_outer <= r))
    throw DomainError("volume_bound_check: need 0 <= a_inner < a_outer <= r");
  const auto g_cls = g_monotone_check(M, r).classification;
  if (g_cls != Monotonicity::Increasing && g_cls != Monotonicity::Constant)
    throw HypothesisNotMet("volume_bound_check: g = t psi'/psi is not nondecreasing on [0, r]");
  const double om = omega(M.n);
  const int p = M.n - 1;
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  VolumeBoundResult res;
  res.lhs = om * integrate(
                     [&](double t) {
                       return t * M.psi.eval_d1(t) * std::pow(M.psi.eval(t), p - 1);
                     },
                     a_inner, a_outer, opt)
                     .value;
  res.rhs = om * volume_kernel(M, a_inner, a_outer);
  res.holds = res.lhs >= res.rhs - 1e-10 * res.rhs;
  return res;
}

/// A compactly supported smooth test function with analytic derivative.
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double support_lo = 0.0;
  double support_hi = 0.0;
};

/// Standard C^inf bump on (a, b).
inline TestFunction make_bump(double a, double b) {
  if (!(b > a)) throw DomainError("make_bump: need b > a");
  TestFunction f;
  f.support_lo = a;
  f.support_hi = b;
  f.value = [a, b](double x) {
    const double t = (2 * x - a - b) / (b - a);
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  f.derivative = [a, b](double x) {
    const double t = (2 * x - a - b) / (b - a);
    if (std::abs(t) >= 1.0) return 0.0;
    const double w = 1.0 - t * t;
    return std::exp(-1.0 / w) * (-2.0 * t / (w * w)) * (2.0 / (b - a));
  };
  return f;
}

/// Verifies the Liouville-transform energy identity for one test function:
///   int (u')^2 psi^{n-1}  ==  int (v')^2 + W v^2,   v = u psi^{(n-1)/2}.
inline std::pair<double, double> liouville_transform_check(const ManifoldSpec& M,
                                                           const TestFunction& u, double R_max) {
  if (!(u.support_lo > 0.0) || !(u.support_hi < R_max))
    throw DomainError("liouville_transform_check: support must lie inside (0, R_max)");
  const double p = 0.5 * (M.n - 1);
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  const double a = u.support_lo, b = u.support_hi;
  const double lhs =
      integrate(
          [&](double r) {
            const double du = u.derivative(r);
            return du * du * std::pow(M.psi.eval(r), M.n - 1);
          },
          a, b, opt)
          .value;
  const double rhs =
      integrate(
          [&](double r) {
            const double psi = M.psi.eval(r);
            const double v = u.value(r) * std::pow(psi, p);
            const double dv = u.derivative(r) * std::pow(psi, p) +
                              u.value(r) * p * std::pow(psi, p - 1) * M.psi.eval_d1(r);
            return dv * dv + persson_potential(M, r) * v * v;
          },
          a, b, opt)
          .value;
  return {lhs, rhs};
}

}  // namespace warpgeo

#endif
