#ifndef WARPGEO_WARPING_HPP
#define WARPGEO_WARPING_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

enum class WarpKind { Euclidean, Hyperbolic, PowerExp, Power, SinhPlusBump, Custom };

enum class DerivativeMode { Analytic, FiniteDifference };

inline std::string to_string(WarpKind k) {
  switch (k) {
    case WarpKind::Euclidean: return "euclidean";
    case WarpKind::Hyperbolic: return "hyperbolic";
    case WarpKind::PowerExp: return "power_exp";
    case WarpKind::Power: return "power";
    case WarpKind::SinhPlusBump: return "sinh_plus_bump";
    case WarpKind::Custom: return "custom";
  }
  return "?";
}

/// Central finite-difference first/second derivatives of a scalar callable.
/// Falls back to one-sided 4-point stencils when r - 2h would leave [0, inf).
inline std::pair<double, double> fd_derivatives(const std::function<double(double)>& f,
                                                double r, double h) {
  if (!(h > 0.0)) throw StepTooLarge("fd_derivatives: step h must be positive");
  if (r - 2.0 * h >= 0.0) {
    const double fm2 = f(r - 2 * h), fm1 = f(r - h), f0 = f(r), fp1 = f(r + h), fp2 = f(r + 2 * h);
    const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    const double d2 = (fm1 - 2 * f0 + fp1) / (h * h);
    return {d1, d2};
  }
  // one-sided forward stencils for nodes too close to the pole
  const double f0 = f(r), f1 = f(r + h), f2 = f(r + 2 * h), f3 = f(r + 3 * h), f4 = f(r + 4 * h);
  const double d1 = (-25 * f0 + 48 * f1 - 36 * f2 + 16 * f3 - 3 * f4) / (12 * h);
  const double d2 = (2 * f0 - 5 * f1 + 4 * f2 - f3) / (h * h);
  return {d1, d2};
}

/// Default FD step: balances truncation against rounding for 2nd-order stencils.
inline double default_fd_step(double r) { return 1e-5 * std::max(1.0, std::abs(r)); }

/// A warping function psi on [0, inf) together with its first two derivatives.
///
/// Presets carry analytic derivatives plus numerically stable evaluators for
/// log psi and the ratios psi'/psi, psi''/psi, so curvature-type quotients stay
/// finite long after psi itself overflows.
struct WarpingFunction {
  WarpKind kind = WarpKind::Custom;
  std::vector<double> params;
  DerivativeMode derivative_mode = DerivativeMode::Analytic;
  double fd_step = 1e-6;

  std::function<double(double)> eval;
  std::function<double(double)> eval_d1;
  std::function<double(double)> eval_d2;

  // optional stable evaluators (always set on presets)
  std::function<double(double)> log_eval;      // log psi(r), r > 0
  std::function<double(double)> ratio_d1;      // psi'(r)/psi(r)
  std::function<double(double)> ratio_d2;      // psi''(r)/psi(r)

  double operator()(double r) const { return eval(r); }

  double d1(double r) const { return eval_d1(r); }
  double d2(double r) const { return eval_d2(r); }

  /// psi'(r)/psi(r), preferring the overflow-safe form when available.
  double log_derivative(double r) const {
    if (ratio_d1) return ratio_d1(r);
    return eval_d1(r) / eval(r);
  }

  /// psi''(r)/psi(r), preferring the overflow-safe form when available.
  double d2_over_psi(double r) const {
    if (ratio_d2) return ratio_d2(r);
    return eval_d2(r) / eval(r);
  }

  /// log psi(r); exact for presets, log(eval) otherwise.
  double log_psi(double r) const {
    if (log_eval) return log_eval(r);
    const double v = eval(r);
    if (!(v > 0.0)) throw EvaluationFailure("log_psi: psi <= 0 at r=" + std::to_string(r));
    return std::log(v);
  }

  std::string name() const {
    std::string s = to_string(kind);
    if (!params.empty()) {
      s += "(";
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(params[i]);
      }
      s += ")";
    }
    return s;
  }
};

namespace detail {

// log(sinh r) without overflow: r - log 2 + log1p(-e^{-2r})
inline double log_sinh(double r) { return r - M_LN2 + std::log1p(-std::exp(-2.0 * r)); }

// coth r, exact to the last bit for large r
inline double coth(double r) {
  if (r > 19.0) return 1.0 + 2.0 / std::expm1(2.0 * r);
  return std::cosh(r) / std::sinh(r);
}

}  // namespace detail

/// Builds one of the named warping-function presets.
///
///   Euclidean          psi(r) = r
///   Hyperbolic         psi(r) = sinh r
///   Power(C)           psi(r) = r^C
///   PowerExp(C, a)     psi(r) = r^C exp(a r^2),  a >= 0
///   SinhPlusBump(A)    psi(r) = sinh r + A r^2 e^{r/2},  A > 0
inline WarpingFunction make_preset(WarpKind kind, const std::vector<double>& params = {}) {
  WarpingFunction w;
  w.kind = kind;
  w.params = params;
  w.derivative_mode = DerivativeMode::Analytic;

  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw BadArity("make_preset(" + to_string(kind) + "): expected " + std::to_string(k) +
                     " parameter(s), got " + std::to_string(params.size()));
  };

  switch (kind) {
    case WarpKind::Euclidean: {
      need(0);
      w.eval = [](double r) { return r; };
      w.eval_d1 = [](double) { return 1.0; };
      w.eval_d2 = [](double) { return 0.0; };
      w.log_eval = [](double r) { return std::log(r); };
      w.ratio_d1 = [](double r) { return 1.0 / r; };
      w.ratio_d2 = [](double) { return 0.0; };
      break;
    }
    case WarpKind::Hyperbolic: {
      need(0);
      w.eval = [](double r) { return std::sinh(r); };
      w.eval_d1 = [](double r) { return std::cosh(r); };
      w.eval_d2 = [](double r) { return std::sinh(r); };
      w.log_eval = [](double r) { return detail::log_sinh(r); };
      w.ratio_d1 = [](double r) { return detail::coth(r); };
      w.ratio_d2 = [](double) { return 1.0; };
      break;
    }
    case WarpKind::Power: {
      need(1);
      const double C = params[0];
      w.eval = [C](double r) { return std::pow(r, C); };
      w.eval_d1 = [C](double r) { return C * std::pow(r, C - 1); };
      w.eval_d2 = [C](double r) { return C * (C - 1) * std::pow(r, C - 2); };
      w.log_eval = [C](double r) { return C * std::log(r); };
      w.ratio_d1 = [C](double r) { return C / r; };
      w.ratio_d2 = [C](double r) { return C * (C - 1) / (r * r); };
      break;
    }
    case WarpKind::PowerExp: {
      need(2);
      const double C = params[0], a = params[1];
      if (a < 0.0) throw NonpositiveParameter("make_preset(power_exp): alpha must be >= 0");
      w.eval = [C, a](double r) { return std::pow(r, C) * std::exp(a * r * r); };
      w.eval_d1 = [C, a](double r) {
        return std::exp(a * r * r) * (C * std::pow(r, C - 1) + 2 * a * std::pow(r, C + 1));
      };
      w.eval_d2 = [C, a](double r) {
        return std::exp(a * r * r) * (C * (C - 1) * std::pow(r, C - 2) +
                                      2 * a * (2 * C + 1) * std::pow(r, C) +
                                      4 * a * a * std::pow(r, C + 2));
      };
      w.log_eval = [C, a](double r) { return C * std::log(r) + a * r * r; };
      w.ratio_d1 = [C, a](double r) { return C / r + 2 * a * r; };
      w.ratio_d2 = [C, a](double r) {
        return C * (C - 1) / (r * r) + 2 * a * (2 * C + 1) + 4 * a * a * r * r;
      };
      break;
    }
    case WarpKind::SinhPlusBump: {
      need(1);
      const double A = params[0];
      if (!(A > 0.0)) throw NonpositiveParameter("make_preset(sinh_plus_bump): A must be > 0");
      w.eval = [A](double r) { return std::sinh(r) + A * r * r * std::exp(0.5 * r); };
      w.eval_d1 = [A](double r) {
        return std::cosh(r) + A * std::exp(0.5 * r) * (2 * r + 0.5 * r * r);
      };
      w.eval_d2 = [A](double r) {
        return std::sinh(r) + A * std::exp(0.5 * r) * (2 + 2 * r + 0.25 * r * r);
      };
      // divide numerator and denominator by e^r so the ratios never overflow
      w.ratio_d1 = [A](double r) {
        if (r < 1.0) {
          const double p = std::sinh(r) + A * r * r * std::exp(0.5 * r);
          return (std::cosh(r) + A * std::exp(0.5 * r) * (2 * r + 0.5 * r * r)) / p;
        }
        const double em2r = std::exp(-2.0 * r), emh = std::exp(-0.5 * r);
        const double num = 0.5 * (1 + em2r) + A * emh * (2 * r + 0.5 * r * r);
        const double den = 0.5 * (1 - em2r) + A * emh * r * r;
        return num / den;
      };
      w.ratio_d2 = [A](double r) {
        if (r < 1.0) {
          const double p = std::sinh(r) + A * r * r * std::exp(0.5 * r);
          return (std::sinh(r) + A * std::exp(0.5 * r) * (2 + 2 * r + 0.25 * r * r)) / p;
        }
        const double em2r = std::exp(-2.0 * r), emh = std::exp(-0.5 * r);
        const double num = 0.5 * (1 - em2r) + A * emh * (2 + 2 * r + 0.25 * r * r);
        const double den = 0.5 * (1 - em2r) + A * emh * r * r;
        return num / den;
      };
      w.log_eval = [A](double r) {
        if (r < 1.0) return std::log(std::sinh(r) + A * r * r * std::exp(0.5 * r));
        const double em2r = std::exp(-2.0 * r), emh = std::exp(-0.5 * r);
        return r - M_LN2 + std::log1p(-em2r + 2.0 * A * emh * r * r);
      };
      break;
    }
    case WarpKind::Custom:
      throw UnknownKind("make_preset: Custom requires make_custom()");
  }
  return w;
}

/// Wraps user callbacks as a warping function with analytic derivatives.
inline WarpingFunction make_custom(std::function<double(double)> f,
                                   std::function<double(double)> f1,
                                   std::function<double(double)> f2) {
  WarpingFunction w;
  w.kind = WarpKind::Custom;
  w.derivative_mode = DerivativeMode::Analytic;
  w.eval = std::move(f);
  w.eval_d1 = std::move(f1);
  w.eval_d2 = std::move(f2);
  return w;
}

/// Wraps a single callback; derivatives come from finite differences of step h.
inline WarpingFunction make_custom_fd(std::function<double(double)> f, double h = 1e-6) {
  if (!(h > 0.0)) throw StepTooLarge("make_custom_fd: step must be positive");
  WarpingFunction w;
  w.kind = WarpKind::Custom;
  w.derivative_mode = DerivativeMode::FiniteDifference;
  w.fd_step = h;
  w.eval = f;
  w.eval_d1 = [f, h](double r) { return fd_derivatives(f, r, h).first; };
  w.eval_d2 = [f, h](double r) { return fd_derivatives(f, r, h).second; };
  return w;
}

/// Convenience dispatch from a kind name, as written in config files.
inline WarpingFunction make_preset(const std::string& kind, const std::vector<double>& params) {
  if (kind == "euclidean") return make_preset(WarpKind::Euclidean, params);
  if (kind == "hyperbolic") return make_preset(WarpKind::Hyperbolic, params);
  if (kind == "power") return make_preset(WarpKind::Power, params);
  if (kind == "power_exp") return make_preset(WarpKind::PowerExp, params);
  if (kind == "sinh_plus_bump") return make_preset(WarpKind::SinhPlusBump, params);
  throw UnknownKind("make_preset: unknown kind '" + kind + "'");
}

struct PoleReport {
  double psi_at_zero = 0.0;
  double dpsi_at_zero = 0.0;
  bool positivity_ok = false;
  bool valid = false;
};

/// Checks psi(0)=0, psi'(0)=1 and positivity of psi on a log-spaced grid.
/// Validity is reported, never enforced: psi = r^C with C != 1 is a legitimate
/// input for the operations that do not touch the pole.
inline PoleReport validate_pole(const WarpingFunction& psi) {
  PoleReport rep;
  try {
    if (psi.derivative_mode == DerivativeMode::FiniteDifference) {
      const double h = 1e-6;
      rep.psi_at_zero = psi.eval(0.0);
      rep.dpsi_at_zero = fd_derivatives(psi.eval, 0.0, h).first;
    } else {
      rep.psi_at_zero = psi.eval(0.0);
      rep.dpsi_at_zero = psi.eval_d1(0.0);
    }
  } catch (const std::exception& e) {
    throw EvaluationFailure(std::string("validate_pole: ") + e.what());
  }
  rep.positivity_ok = true;
  const int n_pts = 200;
  const double lo = 1e-6, hi = 1e3;
  for (int i = 0; i < n_pts; ++i) {
    const double r = lo * std::pow(hi / lo, double(i) / (n_pts - 1));
    const double v = psi.eval(r);
    if (std::isnan(v) || v <= 0.0) {
      rep.positivity_ok = false;
      break;
    }
  }
  rep.valid = std::abs(rep.psi_at_zero) <= 1e-12 && std::abs(rep.dpsi_at_zero - 1.0) <= 1e-10 &&
              rep.positivity_ok;
  return rep;
}

enum class TriState { Yes, No, Unchecked };

inline std::string to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Unchecked: return "unchecked";
  }
  return "?";
}

/// Dimension n >= 2 plus a warping function: the immutable input to all analysis.
struct ManifoldSpec {
  int n = 2;
  WarpingFunction psi;
  TriState cartan_hadamard = TriState::Unchecked;
  PoleReport pole;

  bool pole_valid() const { return pole.valid; }
  std::string name() const { return psi.name() + "[n=" + std::to_string(n) + "]"; }
};

/// Builds a manifold spec; the pole report is computed once at construction.
inline ManifoldSpec make_manifold(int n, WarpingFunction psi) {
  if (n < 2) throw DomainError("make_manifold: dimension must be >= 2");
  ManifoldSpec M{n, std::move(psi), TriState::Unchecked, {}};
  M.pole = validate_pole(M.psi);
  return M;
}

inline void require_pole_valid(const ManifoldSpec& M, const char* where) {
  if (!M.pole_valid())
    throw PoleSingularity(std::string(where) + ": " + M.name() +
                          " is not pole-valid (psi(0)=0, psi'(0)=1 required)");
}

/// Scans psi'' on a uniform grid; Yes means psi'' >= -tol everywhere sampled.
/// Records the verdict on the spec (setup-time mutation).
inline TriState convexity_scan(ManifoldSpec& M, double r_max = 50.0, int n_pts = 2000,
                               double tol = 1e-9) {
  if (!(r_max > 0.0) || n_pts < 2) throw DomainError("convexity_scan: bad grid");
  TriState verdict = TriState::Yes;
  for (int i = 1; i <= n_pts; ++i) {
    const double r = r_max * double(i) / n_pts;
    const double v = M.psi.eval_d2(r);
    if (std::isnan(v)) throw EvaluationFailure("convexity_scan: psi'' NaN at r=" + std::to_string(r));
    if (v < -tol) {
      verdict = TriState::No;
      break;
    }
  }
  M.cartan_hadamard = verdict;
  return verdict;
}

}  // namespace warpgeo

#endif
