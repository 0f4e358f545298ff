#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "confluentia/errors.hpp"

namespace confluentia {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

namespace detail {

/// Number of eigenvalues strictly below x (Sturm count via the LDL^T pivots).
inline int sturm_count(const SymTridiag& t, double x) {
  const int n = t.size();
  int count = 0;
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    double offsq = (i == 0) ? 0.0 : t.off[i - 1] * t.off[i - 1];
    d = t.diag[i] - x - offsq / d;
    if (d == 0.0) d = 1e-300;  // keep the recurrence moving past exact pivots
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace detail

/// k-th smallest eigenvalue (k = 0 based) by bisection on the Sturm count.
inline double tridiag_eigenvalue(const SymTridiag& t, int k) {
  const int n = t.size();
  double lo = t.diag[0], hi = t.diag[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= 1e-12 * scale;
  hi += 1e-12 * scale;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (detail::sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

/// Eigenvector for an eigenvalue estimate by inverse iteration with a
/// partially pivoted tridiagonal solve; returns a unit 2-norm vector and
/// refines lambda by one Rayleigh quotient.
inline std::vector<double> tridiag_eigenvector(const SymTridiag& t, double& lambda) {
  const int n = t.size();
  // shift slightly off the eigenvalue so the factorization stays regular
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(t.diag[i]));
  for (int i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(t.off[i]));
  const double shift = lambda + 1e-13 * std::max(scale, 1.0);

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> a(n), b(n), c(n), d(n);
  for (int pass = 0; pass < 3; ++pass) {
    // Gaussian elimination with row swaps on [sub | diag-shift | super | super2]
    for (int i = 0; i < n; ++i) {
      a[i] = t.diag[i] - shift;
      b[i] = (i + 1 < n) ? t.off[i] : 0.0;
      c[i] = 0.0;
      d[i] = x[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
      double sub = t.off[i];
      if (std::abs(sub) > std::abs(a[i])) {
        std::swap(a[i], sub);
        std::swap(b[i], a[i + 1]);
        std::swap(c[i], b[i + 1]);
        std::swap(d[i], d[i + 1]);
      }
      if (a[i] == 0.0) a[i] = 1e-300;
      double m = sub / a[i];
      a[i + 1] -= m * b[i];
      b[i + 1] -= m * c[i];
      d[i + 1] -= m * d[i];
    }
    if (a[n - 1] == 0.0) a[n - 1] = 1e-300;
    for (int i = n - 1; i >= 0; --i) {
      double v = d[i];
      if (i + 1 < n) v -= b[i] * x[i + 1];
      if (i + 2 < n) v -= c[i] * x[i + 2];
      x[i] = v / a[i];
    }
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  // Rayleigh refinement
  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    double tv = t.diag[i] * x[i];
    if (i > 0) tv += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) tv += t.off[i] * x[i + 1];
    num += x[i] * tv;
  }
  lambda = num;
  return x;
}

}  // namespace confluentia
