#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "confluentia/fft.hpp"

namespace confluentia {

/// Uniform samples over one pseudo-period [0, 2 pi / alpha) of a function
/// with f(psi + 2 pi k / alpha) = e^{2 pi i k lambda} f(psi).
struct PseudoPeriodicSample {
  double alpha = 1.0;
  double lambda = 0.0;  // twist in [0,1)
  std::vector<Complex> values;

  double period() const { return 2.0 * M_PI / alpha; }
  size_t size() const { return values.size(); }
  double step() const { return period() / static_cast<double>(values.size()); }
  double psi(size_t j) const { return step() * static_cast<double>(j); }

  static PseudoPeriodicSample from_function(double alpha, double lambda, size_t n,
                                            const std::function<Complex(double)>& f) {
    PseudoPeriodicSample s;
    s.alpha = alpha;
    s.lambda = lambda;
    s.values.resize(n);
    for (size_t j = 0; j < n; ++j) s.values[j] = f(s.psi(j));
    return s;
  }

  /// L^2 norm over the pseudo-period (rectangle rule, exact for trig series).
  double norm() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return std::sqrt(acc * step());
  }

  /// Value at psi + any number of pseudo-periods, twist applied.
  /// Uses the trig interpolant of the detwisted periodic part.
  Complex eval(double psi_point) const {
    const double per = period();
    double wrapped = std::fmod(psi_point, per);
    double k = std::round((psi_point - wrapped) / per);
    if (wrapped < 0) {
      wrapped += per;
      k -= 1.0;
    }
    Complex twist = std::polar(1.0, 2.0 * M_PI * k * lambda);
    if (lambda == 0.0) {
      ensure_coeffs();
      return twist * trig_eval(coeffs_, 0.0, per, wrapped);
    }
    // detwist: g(psi) = e^{-i lambda alpha psi} f(psi) is periodic
    ensure_coeffs();
    Complex g = trig_eval(coeffs_, 0.0, per, wrapped);
    return twist * std::polar(1.0, lambda * alpha * wrapped) * g;
  }

  /// Samples of f(psi + theta) with the pseudo-periodic wrap handled exactly.
  PseudoPeriodicSample shifted(double theta) const {
    PseudoPeriodicSample out;
    out.alpha = alpha;
    out.lambda = lambda;
    out.values.resize(values.size());
    std::vector<Complex> g = detwisted();
    g = spectral_shift(std::move(g), period(), theta);
    for (size_t j = 0; j < g.size(); ++j)
      out.values[j] = std::polar(1.0, lambda * alpha * (psi(j) + theta)) * g[j];
    return out;
  }

 private:
  // periodic part e^{-i lambda alpha psi} f(psi)
  std::vector<Complex> detwisted() const {
    std::vector<Complex> g(values.size());
    for (size_t j = 0; j < values.size(); ++j)
      g[j] = std::polar(1.0, -lambda * alpha * psi(j)) * values[j];
    return g;
  }
  void ensure_coeffs() const {
    if (coeffs_.size() == values.size()) return;
    coeffs_ = fourier_coefficients(detwisted());
  }
  mutable std::vector<Complex> coeffs_;
};

/// Uniform samples on [-L, L), step 2L/N; the carrier for line-side operators.
/// FFT-based operations treat the window as one period, which is accurate for
/// functions that have decayed below roundoff at the edges.
struct LineSample {
  double half_width = 1.0;  // L
  std::vector<Complex> values;

  size_t size() const { return values.size(); }
  double step() const { return 2.0 * half_width / static_cast<double>(values.size()); }
  double x(size_t j) const { return -half_width + step() * static_cast<double>(j); }
  double period() const { return 2.0 * half_width; }

  static LineSample from_function(double L, size_t n, const std::function<Complex(double)>& f) {
    LineSample s;
    s.half_width = L;
    s.values.resize(n);
    for (size_t j = 0; j < n; ++j) s.values[j] = f(s.x(j));
    return s;
  }

  double norm() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return std::sqrt(acc * step());
  }

  Complex eval(double xp) const {
    if (xp < -half_width || xp >= half_width) return Complex(0.0, 0.0);
    ensure_coeffs();
    return trig_eval(coeffs_, -half_width, period(), xp);
  }

  LineSample shifted(double b) const {
    LineSample out = *this;
    out.values = spectral_shift(out.values, period(), b);
    out.coeffs_.clear();
    return out;
  }

  LineSample derivative(int order) const {
    LineSample out = *this;
    out.values = spectral_derivative(out.values, period(), order);
    out.coeffs_.clear();
    return out;
  }

 private:
  void ensure_coeffs() const {
    if (coeffs_.size() == values.size()) return;
    coeffs_ = fourier_coefficients(values);
  }
  mutable std::vector<Complex> coeffs_;
};

inline Complex inner_product(const LineSample& a, const LineSample& b) {
  Complex acc(0.0, 0.0);
  for (size_t j = 0; j < a.values.size(); ++j) acc += a.values[j] * std::conj(b.values[j]);
  return acc * a.step();
}

inline Complex inner_product(const PseudoPeriodicSample& a, const PseudoPeriodicSample& b) {
  Complex acc(0.0, 0.0);
  for (size_t j = 0; j < a.values.size(); ++j) acc += a.values[j] * std::conj(b.values[j]);
  return acc * a.step();
}

inline double sup_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

}  // namespace confluentia
