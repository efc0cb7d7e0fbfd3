#ifndef WARPGEO_QUADRATURE_HPP
#define WARPGEO_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;        // global error estimate
  std::size_t evals = 0;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  std::size_t max_evals = 1'000'000;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; node 0 once).
inline constexpr double kGk15Nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529224964, 0.063092092629978553291, 0.10479001032225018384,
    0.14065325971552591875,  0.16900472663926790283,  0.19035057806478540991,
    0.20443294007529889241,  0.20948214108472782801};
// embedded 7-point Gauss weights (odd-indexed Kronrod nodes + center)
inline constexpr double kG7Weights[4] = {0.12948496616887065, 0.2797053914892766,
                                         0.3818300505051183, 0.41795918367346896};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(c - h * kGk15Nodes[i]);
    fk[14 - i] = f(c + h * kGk15Nodes[i]);
  }
  fk[7] = f(c);
  double sk = kGk15Weights[7] * fk[7];
  for (int i = 0; i < 7; ++i) sk += kGk15Weights[i] * (fk[i] + fk[14 - i]);
  double sg = kG7Weights[3] * fk[7];
  for (int i = 0; i < 3; ++i) sg += kG7Weights[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
  value = sk * h;
  // conservative estimate; the K15-G7 difference overestimates smooth panels,
  // which only costs a few extra bisections
  err = std::max(std::abs((sk - sg) * h), 2e-16 * std::abs(value));
}

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 15 integration of f over [a, b].
/// Refines the worst panel until the summed error estimate drops below
/// max(abs_tol * (1 + |value|), rel_tol * |value|); throws on budget exhaustion.
template <class F>
inline QuadResult integrate(const F& f, double a, double b, QuadOptions opt = {}) {
  QuadResult res;
  if (a == b) return res;
  std::priority_queue<detail::Panel> heap;
  double v, e;
  detail::gk15(f, a, b, v, e);
  res.evals = 15;
  heap.push({a, b, v, e});
  double total_v = v, total_e = e;
  while (true) {
    const double goal = std::max(opt.abs_tol * (1.0 + std::abs(total_v)),
                                 opt.rel_tol * std::abs(total_v));
    if (total_e <= goal) break;
    if (res.evals + 30 > opt.max_evals)
      throw QuadratureNonConvergence("integrate: evaluation budget exceeded on [" +
                                     std::to_string(a) + ", " + std::to_string(b) + "]");
    detail::Panel p = heap.top();
    heap.pop();
    total_v -= p.value;
    total_e -= p.err;
    const double m = 0.5 * (p.a + p.b);
    double v1, e1, v2, e2;
    detail::gk15(f, p.a, m, v1, e1);
    detail::gk15(f, m, p.b, v2, e2);
    res.evals += 30;
    if (m <= p.a || m >= p.b) {  // interval at machine resolution: accept as-is
      total_v += p.value;
      total_e += 0.0;
      heap.push({p.a, p.b, p.value, 0.0});
      continue;
    }
    heap.push({p.a, m, v1, e1});
    heap.push({m, p.b, v2, e2});
    total_v += v1 + v2;
    total_e += e1 + e2;
    if (total_e < 0.0) total_e = 0.0;
  }
  res.value = total_v;
  res.error = total_e;
  return res;
}

/// Improper integral of f over [a, inf) by geometrically widening panels.
/// Stops once three consecutive panel contributions fall below 1e-16 of the
/// accumulated sum; throws TailDivergence when the panel contributions fail
/// to decay.
template <class F>
inline QuadResult integrate_tail(const F& f, double a, QuadOptions opt = {}) {
  QuadResult total;
  double width = std::max(1.0, 0.1 * std::abs(a));
  double lo = a;
  int quiet = 0;
  int growing = 0;
  double prev = 0.0;
  for (int panel = 0; panel < 250; ++panel) {
    QuadResult part = integrate(f, lo, lo + width, opt);
    total.value += part.value;
    total.error += part.error;
    total.evals += part.evals;
    if (std::abs(part.value) < 1e-16 * std::abs(total.value)) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
    if (panel > 0 && std::abs(part.value) >= std::abs(prev) && std::abs(part.value) > 0.0) {
      if (++growing >= 40)
        throw TailDivergence("integrate_tail: contributions do not decay from a=" +
                             std::to_string(a));
    } else {
      growing = 0;
    }
    if (!std::isfinite(total.value))
      throw TailDivergence("integrate_tail: accumulated value is not finite");
    prev = part.value;
    lo += width;
    width *= 2.0;
  }
  throw TailDivergence("integrate_tail: no convergence after widening panels");
}

}  // namespace warpgeo

#endif
