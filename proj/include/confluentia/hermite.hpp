#pragma once

#include <cmath>

namespace confluentia {

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}. Works over double and over exact rationals.
template <typename T>
T hermite(int n, const T& x) {
  if (n == 0) return T(1);
  T hm(1), h = 2 * x;
  for (int k = 1; k < n; ++k) {
    T hn = 2 * x * h - T(2 * k) * hm;
    hm = h;
    h = hn;
  }
  return h;
}

/// Weber parabolic cylinder function of nonnegative integer order,
/// D_m(z) = 2^{-m/2} e^{-z^2/4} H_m(z/sqrt(2)).
inline double parabolic_cylinder_d(int m, double z) {
  return std::exp2(-0.5 * m) * std::exp(-0.25 * z * z) * hermite(m, z / std::sqrt(2.0));
}

/// Quantum harmonic oscillator eigenfunction parameters.
struct HermiteBundle {
  int n;     // level, n >= 0
  double h;  // frequency parameter, h > 0
};

/// Normalized oscillator eigenfunction
/// e^h_n(x) = (2^n n!)^{-1/2} (pi/h)^{-1/4} e^{-h x^2/2} H_n(sqrt(h) x).
/// Satisfies y'' + ((2n+1)h - h^2 x^2) y = 0 and has unit L^2 norm.
inline double ho_eigenfunction(const HermiteBundle& b, double x) {
  double log_norm = -0.5 * (b.n * std::log(2.0) + std::lgamma(b.n + 1.0)) -
                    0.25 * std::log(M_PI / b.h);
  return std::exp(log_norm - 0.5 * b.h * x * x) * hermite(b.n, std::sqrt(b.h) * x);
}

}  // namespace confluentia
