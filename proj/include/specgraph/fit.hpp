// fit.hpp — small least-squares helpers for tail extrapolation of sequences.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace specgraph {

struct LinearFit {
  double a = 0.0;  // intercept
  double b = 0.0;  // slope
  bool ok = false;
};

// Ordinary least squares y ~ a + b*x.
inline LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  LinearFit f;
  size_t n = xs.size();
  if (n < 2 || ys.size() != n) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double d = static_cast<double>(n) * sxx - sx * sx;
  if (d == 0.0) return f;
  f.b = (static_cast<double>(n) * sxy - sx * sy) / d;
  f.a = (sy - f.b * sx) / static_cast<double>(n);
  f.ok = true;
  return f;
}

// Fit y ~ a + b/x over the tail x >= max(x)/2; a is the extrapolated limit.
inline LinearFit tail_fit_reciprocal(std::span<const double> xs, std::span<const double> ys) {
  size_t n = xs.size();
  if (n == 0 || ys.size() != n) return {};
  double xmax = xs[0];
  for (double x : xs) xmax = std::max(xmax, x);
  std::vector<double> u, v;
  for (size_t i = 0; i < n; ++i) {
    if (xs[i] >= 0.5 * xmax && xs[i] > 0.0) {
      u.push_back(1.0 / xs[i]);
      v.push_back(ys[i]);
    }
  }
  if (u.size() < 2) return {};
  return linear_fit(u, v);
}

// Exponent p of y ~ c * x^p from a log-log fit over the tail x >= max(x)/3.
// Only strictly positive samples participate.
inline LinearFit loglog_tail_exponent(std::span<const double> xs, std::span<const double> ys) {
  size_t n = xs.size();
  if (n == 0 || ys.size() != n) return {};
  double xmax = xs[0];
  for (double x : xs) xmax = std::max(xmax, x);
  std::vector<double> u, v;
  for (size_t i = 0; i < n; ++i) {
    if (xs[i] >= xmax / 3.0 && xs[i] > 0.0 && ys[i] > 0.0) {
      u.push_back(std::log(xs[i]));
      v.push_back(std::log(ys[i]));
    }
  }
  if (u.size() < 2) return {};
  return linear_fit(u, v);  // b is the exponent
}

}  // namespace specgraph
