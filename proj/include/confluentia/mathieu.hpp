#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "confluentia/errors.hpp"
#include "confluentia/hermite.hpp"
#include "confluentia/tridiag.hpp"

namespace confluentia {

/// Solution family of the Mathieu equation y'' + (a - 2q cos 2s) y = 0.
enum class Parity { EvenCe, OddSe };

inline const char* parity_name(Parity p) { return p == Parity::EvenCe ? "even" : "odd"; }

/// One periodic Mathieu eigensolution: characteristic value plus truncated
/// Fourier coefficients in the Abramowitz-Stegun normalization
/// (integral of ce_n^2 over [0,2pi] equals pi, coefficient of the order-n
/// harmonic positive; same for se_n).
struct MathieuEigen {
  Parity parity;
  int order;      // n of ce_n / se_n
  double q;
  double a;       // characteristic value a_n(q) or b_n(q)
  std::vector<double> coeffs;  // A_k (ce) or B_k (se), k = k_start, k_start+2, ...
  int truncation;              // number of retained coefficients
  double truncation_error;     // size of the last retained coefficients

  /// Smallest Fourier index of the coefficient list.
  int k_start() const {
    if (parity == Parity::EvenCe) return order % 2 == 0 ? 0 : 1;
    return order % 2 == 0 ? 2 : 1;
  }
};

namespace detail {

enum class MathieuClass { CeEven, CeOdd, SeOdd, SeEven };

inline MathieuClass mathieu_class(Parity p, int n) {
  if (p == Parity::EvenCe) return n % 2 == 0 ? MathieuClass::CeEven : MathieuClass::CeOdd;
  return n % 2 == 0 ? MathieuClass::SeEven : MathieuClass::SeOdd;
}

/// Index of order n inside its class matrix.
inline int class_index(Parity p, int n) {
  if (p == Parity::EvenCe) return n % 2 == 0 ? n / 2 : (n - 1) / 2;
  return n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2;
}

inline SymTridiag mathieu_matrix(MathieuClass cls, double q, int dim) {
  SymTridiag t;
  t.diag.resize(dim);
  t.off.assign(dim - 1, q);
  switch (cls) {
    case MathieuClass::CeEven:
      t.diag[0] = 0.0;
      for (int m = 1; m < dim; ++m) t.diag[m] = 4.0 * m * m;
      t.off[0] = std::sqrt(2.0) * q;  // scaled basis keeps the matrix symmetric
      break;
    case MathieuClass::CeOdd:
      t.diag[0] = 1.0 + q;
      for (int m = 1; m < dim; ++m) t.diag[m] = (2.0 * m + 1) * (2.0 * m + 1);
      break;
    case MathieuClass::SeOdd:
      t.diag[0] = 1.0 - q;
      for (int m = 1; m < dim; ++m) t.diag[m] = (2.0 * m + 1) * (2.0 * m + 1);
      break;
    case MathieuClass::SeEven:
      for (int m = 0; m < dim; ++m) t.diag[m] = (2.0 * m + 2) * (2.0 * m + 2);
      break;
  }
  return t;
}

inline int truncation_cap() {
  if (const char* env = std::getenv("CONFLUENTIA_MAX_TRUNCATION")) {
    int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return 2048;
}

inline void check_order(Parity parity, int n) {
  if (n < 0) throw Error("Mathieu order must be nonnegative");
  if (parity == Parity::OddSe && n < 1) throw Error("se_n starts at n = 1");
}

/// Characteristic value with the truncation grown until two successive sizes
/// agree to 1e-10 relative. Returns the converged dimension through `dim`.
inline double char_converged(Parity parity, int n, double q, int& dim) {
  check_order(parity, n);
  if (q < 0) throw Error("q must be nonnegative");
  const MathieuClass cls = mathieu_class(parity, n);
  const int idx = class_index(parity, n);
  const int cap = truncation_cap();
  int k = std::max(16, 2 * n + 8);
  if (k > cap) throw NoConvergenceError("truncation cap below required start size");
  double prev = tridiag_eigenvalue(mathieu_matrix(cls, q, k), idx);
  while (true) {
    if (2 * k > cap) {
      throw NoConvergenceError("Mathieu eigenvalue did not stabilize below truncation cap " +
                               std::to_string(cap));
    }
    k *= 2;
    double cur = tridiag_eigenvalue(mathieu_matrix(cls, q, k), idx);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) {
      dim = k;
      return cur;
    }
    prev = cur;
  }
}

}  // namespace detail

/// Characteristic value a_n(q) (even) or b_n(q) (odd).
inline double mathieu_char(Parity parity, int n, double q) {
  int dim = 0;
  return detail::char_converged(parity, n, q, dim);
}

/// Characteristic value plus normalized Fourier coefficients. When
/// requested_truncation is 0 the converged size from the eigenvalue stage is
/// used.
inline MathieuEigen mathieu_eigenpair(Parity parity, int n, double q,
                                      int requested_truncation = 0) {
  detail::check_order(parity, n);
  if (q < 0) throw Error("q must be nonnegative");
  const detail::MathieuClass cls = detail::mathieu_class(parity, n);
  const int idx = detail::class_index(parity, n);

  MathieuEigen e;
  e.parity = parity;
  e.order = n;
  e.q = q;

  if (q == 0.0) {
    // decoupled limit: single harmonic
    int dim = requested_truncation > 0 ? requested_truncation : std::max(16, 2 * n + 8);
    e.a = static_cast<double>(n) * n;
    e.coeffs.assign(dim, 0.0);
    e.coeffs[idx] = (cls == detail::MathieuClass::CeEven && idx == 0) ? 1.0 / std::sqrt(2.0) : 1.0;
    e.truncation = dim;
    e.truncation_error = 0.0;
    return e;
  }

  int dim = requested_truncation;
  if (dim > 0) {
    if (dim <= idx + 2) throw Error("requested truncation too small for the order");
    e.a = tridiag_eigenvalue(detail::mathieu_matrix(cls, q, dim), idx);
  } else {
    e.a = detail::char_converged(parity, n, q, dim);
  }
  SymTridiag t = detail::mathieu_matrix(cls, q, dim);
  std::vector<double> v = tridiag_eigenvector(t, e.a);

  // back to natural Fourier coefficients (undo the sqrt(2) scaling of A_0)
  if (cls == detail::MathieuClass::CeEven) v[0] /= std::sqrt(2.0);
  // sign: the coefficient of the order-n harmonic is positive
  double pivot = v[idx];
  if (pivot == 0.0) {
    double best = 0.0;
    for (double x : v)
      if (std::abs(x) > std::abs(best)) best = x;
    pivot = best;
  }
  if (pivot < 0)
    for (double& x : v) x = -x;

  e.coeffs = std::move(v);
  e.truncation = dim;
  double tail = std::max(std::abs(e.coeffs[dim - 1]), std::abs(e.coeffs[dim - 2]));
  double peak = 0.0;
  for (double x : e.coeffs) peak = std::max(peak, std::abs(x));
  e.truncation_error = tail / peak;
  return e;
}

/// Fourier synthesis of ce_n(s,q) / se_n(s,q).
inline double mathieu_eval(const MathieuEigen& e, double s) {
  double acc = 0.0;
  int k = e.k_start();
  if (e.parity == Parity::EvenCe) {
    for (double c : e.coeffs) {
      acc += c * std::cos(k * s);
      k += 2;
    }
  } else {
    for (double c : e.coeffs) {
      acc += c * std::sin(k * s);
      k += 2;
    }
  }
  return acc;
}

/// d/ds of the synthesis.
inline double mathieu_eval_deriv(const MathieuEigen& e, double s) {
  double acc = 0.0;
  int k = e.k_start();
  if (e.parity == Parity::EvenCe) {
    for (double c : e.coeffs) {
      acc -= c * k * std::sin(k * s);
      k += 2;
    }
  } else {
    for (double c : e.coeffs) {
      acc += c * k * std::cos(k * s);
      k += 2;
    }
  }
  return acc;
}

/// Termwise second derivative, for residual checks.
inline double mathieu_eval_deriv2(const MathieuEigen& e, double s) {
  double acc = 0.0;
  int k = e.k_start();
  if (e.parity == Parity::EvenCe) {
    for (double c : e.coeffs) {
      acc -= c * k * k * std::cos(k * s);
      k += 2;
    }
  } else {
    for (double c : e.coeffs) {
      acc -= c * k * k * std::sin(k * s);
      k += 2;
    }
  }
  return acc;
}

/// Large-q characteristic value: the three explicit terms
/// a = -2q + 2(2n+1) sqrt(q) - ((2n+1)^2 + 1)/8.
inline double char_asymptotic(int n, double q) {
  double s = 2.0 * n + 1;
  return -2.0 * q + 2.0 * s * std::sqrt(q) - (s * s + 1.0) / 8.0;
}

/// Parabolic-cylinder approximant of ce_n (even) or se_{n+1} (odd):
/// (pi sqrt(q)/2)^{1/4} (n!)^{-1/2} D_n(2 q^{1/4} cos z).
inline double meixner_approx(int n, double q, double z) {
  double pref = std::pow(M_PI * std::sqrt(q) / 2.0, 0.25) * std::exp(-0.5 * std::lgamma(n + 1.0));
  return pref * parabolic_cylinder_d(n, 2.0 * std::pow(q, 0.25) * std::cos(z));
}

/// |ce_n(z,q) - approximant| (even) or |se_{n+1}(z,q) - approximant| (odd).
inline double meixner_error(Parity parity, int n, double q, double z) {
  int order = parity == Parity::EvenCe ? n : n + 1;
  MathieuEigen e = mathieu_eigenpair(parity, order, q);
  return std::abs(mathieu_eval(e, z) - meixner_approx(n, q, z));
}

/// Max residual of the class-specific three-term recursion over all rows,
/// relative to the coefficient norm and the matrix scale.
inline double recursion_residual(const MathieuEigen& e) {
  const auto& c = e.coeffs;
  const int n = static_cast<int>(c.size());
  const double a = e.a, q = e.q;
  auto at = [&](int i) { return (i >= 0 && i < n) ? c[i] : 0.0; };
  double worst = 0.0;
  const int k0 = e.k_start();
  for (int i = 0; i < n; ++i) {
    double k = k0 + 2.0 * i;
    double r = (a - k * k) * at(i) - q * (at(i + 1) + at(i - 1));
    if (k0 == 0) {
      if (i == 0) r = a * at(0) - q * at(1);
      if (i == 1) r = (a - 4.0) * at(1) - q * (at(2) + 2.0 * at(0));
    } else if (k0 == 1 && i == 0) {
      double sign = (e.parity == Parity::EvenCe) ? 1.0 : -1.0;
      r = (a - 1.0 - sign * q) * at(0) - q * at(1);
    }
    worst = std::max(worst, std::abs(r));
  }
  double norm = 0.0;
  for (double x : c) norm += x * x;
  return worst / std::sqrt(norm);
}

/// Residual of the pseudo-periodic recursion
/// (a - (2k+lambda)^2) C_k - q (C_{k+2} + C_{k-2}) over interior indices, for
/// coefficients C in the exponential basis e^{i(2k+lambda)s}. Exposed for
/// general real Floquet exponents; out-of-range neighbors count as zero.
inline double floquet_recursion_residual(double a, double q, double lambda,
                                         const std::vector<double>& c, int k_first) {
  const int n = static_cast<int>(c.size());
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    double f = 2.0 * (k_first + i) + lambda;
    double r = (a - f * f) * c[i] - q * (c[i + 1] + c[i - 1]);
    worst = std::max(worst, std::abs(r));
  }
  double norm = 0.0;
  for (double x : c) norm += x * x;
  return worst / std::sqrt(norm);
}

}  // namespace confluentia
