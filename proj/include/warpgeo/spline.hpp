#ifndef WARPGEO_SPLINE_HPP
#define WARPGEO_SPLINE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "warpgeo/errors.hpp"

namespace warpgeo {

/// Natural cubic spline through strictly increasing nodes.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw DomainError("CubicSpline: need >= 3 matching nodes");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1])) throw DomainError("CubicSpline: nodes must strictly increase");
    // second derivatives from the natural tridiagonal system
    m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0), w(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hi = x_[i] - x_[i - 1], hj = x_[i + 1] - x_[i];
      const double sig = hi / (hi + hj);
      const double p = sig * w[i - 1] + 2.0;
      w[i] = (sig - 1.0) / p;
      u[i] = (y_[i + 1] - y_[i]) / hj - (y_[i] - y_[i - 1]) / hi;
      u[i] = (6.0 * u[i] / (hi + hj) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 2; i >= 1; --i) m_[i] = w[i] * m_[i + 1] + u[i];
  }

  double operator()(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  double derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3 * b * b - 1) * m_[i + 1] - (3 * a * a - 1) * m_[i]) * h / 6.0;
  }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t locate(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
      throw DomainError("CubicSpline: query outside node range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = std::size_t(std::distance(x_.begin(), it));
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace warpgeo

#endif
