#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "confluentia/errors.hpp"

namespace confluentia {

using Complex = std::complex<double>;

inline bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT. Forward uses kernel e^{-i 2 pi k j / N};
/// the inverse includes the 1/N factor.
inline void fft_inplace(std::vector<Complex>& a, bool inverse = false) {
  const size_t n = a.size();
  if (!is_power_of_two(n)) throw GridTooCoarseError("FFT size must be a power of two");
  // bit reversal
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    Complex wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

/// Signed mode number of FFT bin i for size n: 0..n/2-1, then -n/2..-1.
inline long fft_mode(size_t i, size_t n) {
  return i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

/// Spectral derivative of order `order` of samples of a period-L function.
inline std::vector<Complex> spectral_derivative(std::vector<Complex> vals, double period,
                                                int order = 1) {
  const size_t n = vals.size();
  fft_inplace(vals, false);
  for (size_t i = 0; i < n; ++i) {
    Complex ik(0.0, 2.0 * M_PI * fft_mode(i, n) / period);
    Complex f(1.0, 0.0);
    for (int d = 0; d < order; ++d) f *= ik;
    vals[i] *= f;
  }
  fft_inplace(vals, true);
  return vals;
}

/// Samples of f(x + shift) for a period-L function (exact for band-limited f).
inline std::vector<Complex> spectral_shift(std::vector<Complex> vals, double period,
                                           double shift) {
  const size_t n = vals.size();
  fft_inplace(vals, false);
  for (size_t i = 0; i < n; ++i) {
    double phase = 2.0 * M_PI * fft_mode(i, n) * shift / period;
    vals[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  fft_inplace(vals, true);
  return vals;
}

/// Fourier coefficients c_k (k = fft_mode) with f(x) = sum c_k e^{i 2pi k (x-lo)/L}.
inline std::vector<Complex> fourier_coefficients(std::vector<Complex> vals) {
  const size_t n = vals.size();
  fft_inplace(vals, false);
  for (auto& v : vals) v /= static_cast<double>(n);
  return vals;
}

/// Evaluate the trigonometric interpolant at one point.
inline Complex trig_eval(const std::vector<Complex>& coeff, double lo, double period, double x) {
  const size_t n = coeff.size();
  Complex acc(0.0, 0.0);
  double base = 2.0 * M_PI * (x - lo) / period;
  for (size_t i = 0; i < n; ++i) {
    double phase = base * fft_mode(i, n);
    acc += coeff[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace confluentia
