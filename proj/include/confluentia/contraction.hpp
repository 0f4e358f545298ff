#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "confluentia/hermite.hpp"
#include "confluentia/mathieu.hpp"
#include "confluentia/ode.hpp"
#include "confluentia/sampling.hpp"

namespace confluentia {

/// Mathieu parameters reached from the deformation parameters:
/// a = mu/alpha^2 - 2q, q = h^2 / (4 alpha^4).
struct MathieuParams {
  double a;
  double q;
};

inline MathieuParams param_map(double alpha, double h, double mu) {
  double q = h * h / (4.0 * alpha * alpha * alpha * alpha);
  return {mu / (alpha * alpha) - 2.0 * q, q};
}

/// t(1 - alpha^2 t) y'' + (1 - 2 alpha^2 t)/2 y' + (mu - h^2 t)/4 y = 0.
/// At alpha = 0 this is the quadratic-variable oscillator equation
/// t y'' + y'/2 + (mu - h^2 t)/4 y = 0.
inline OdeSpec deformed_mathieu_ode(const Rational& alpha, const Rational& h,
                                    const Rational& mu) {
  OdeSpec spec;
  Rational a2 = alpha * alpha;
  if (a2 == 0) {
    spec.p0_leading = Rational(1);
    spec.p0_roots = {{Rational(0), 1}};
  } else {
    spec.p0_leading = -a2;
    spec.p0_roots = {{Rational(0), 1}, {Rational(1) / a2, 1}};
  }
  spec.p1 = RationalPoly({Rational(1, 2), -a2});
  spec.p2 = RationalPoly({mu / 4, -h * h / 4});
  return validate(spec);
}

/// Cleared-denominator form of
/// y'' + [1/x + alpha^2/(alpha^2 x - 1) + alpha^4 k^2/(alpha^4 k^2 x + 1)]/2 y'
///     + (-mu - alpha^6 k^2 l(l+1) x) / (4 x (alpha^2 x - 1)(alpha^4 k^2 x + 1)) y = 0.
/// Parametrized by the product l(l+1) so principal-series values are exact.
inline OdeSpec deformed_lame_ode_ll(const Rational& alpha, const Rational& k,
                                    const Rational& l_l_plus_one, const Rational& mu) {
  Rational a2 = alpha * alpha;
  Rational a4k2 = a2 * a2 * k * k;
  // P0 = 4 x (alpha^2 x - 1)(alpha^4 k^2 x + 1)
  RationalPoly x = RationalPoly::monomial(1, Rational(1));
  RationalPoly f1({Rational(-1), a2});
  RationalPoly f2({Rational(1), a4k2});
  OdeSpec spec;
  if (a2 == 0) {
    spec.p0_leading = Rational(-4);
    spec.p0_roots = {{Rational(0), 1}};
  } else if (a4k2 == 0) {
    spec.p0_leading = Rational(4) * a2;
    spec.p0_roots = {{Rational(0), 1}, {Rational(1) / a2, 1}};
  } else {
    spec.p0_leading = Rational(4) * a2 * a4k2;
    spec.p0_roots = {{Rational(0), 1}, {Rational(1) / a2, 1}, {Rational(-1) / a4k2, 1}};
  }
  spec.p1 = Rational(2) * (f1 * f2 + a2 * (x * f2) + a4k2 * (x * f1));
  Rational a6k2 = a2 * a2 * a2 * k * k;
  spec.p2 = RationalPoly({-mu, -a6k2 * l_l_plus_one});
  return validate(spec);
}

inline OdeSpec deformed_lame_ode(const Rational& alpha, const Rational& k, const Rational& l,
                                 const Rational& mu) {
  return deformed_lame_ode_ll(alpha, k, l * (l + 1), mu);
}

/// Elliptic-coordinate operator d^2/dpsi^2 - h^2 alpha^{-2} sin^2(alpha psi)
/// applied on the pseudo-period grid with a spectral second derivative.
/// Requires at least 16 grid points per oscillation of f.
inline PseudoPeriodicSample l4_apply(const PseudoPeriodicSample& f, double alpha, double h) {
  const size_t n = f.size();
  // bandwidth check: largest mode carrying more than 1e-8 of the norm
  std::vector<Complex> g(f.values);
  for (size_t j = 0; j < n; ++j) g[j] *= std::polar(1.0, -f.lambda * f.alpha * f.psi(j));
  std::vector<Complex> spec = fourier_coefficients(std::move(g));
  double total = 0.0;
  for (const auto& c : spec) total += std::norm(c);
  total = std::sqrt(total);
  long kmax = 0;
  for (size_t i = 0; i < n; ++i)
    if (std::abs(spec[i]) > 1e-8 * total) kmax = std::max(kmax, std::labs(fft_mode(i, n)));
  if (kmax > 0 && static_cast<long>(n) < 16 * kmax)
    throw GridTooCoarseError("need at least 16 points per oscillation (" +
                             std::to_string(n) + " for mode " + std::to_string(kmax) + ")");

  PseudoPeriodicSample out = f;
  // f = e^{i lambda alpha psi} g, so mode k of g contributes the effective
  // frequency 2 pi k / period + lambda alpha to f''
  const double la = f.lambda * f.alpha;
  for (size_t i = 0; i < n; ++i) {
    Complex ik(0.0, 2.0 * M_PI * fft_mode(i, n) / f.period() + la);
    spec[i] *= ik * ik;
  }
  fft_inplace(spec, true);  // c_k were already 1/n-scaled, so rescale below
  for (size_t j = 0; j < n; ++j) {
    Complex second = std::polar(1.0, la * f.psi(j)) * spec[j] * static_cast<double>(n);
    double s = std::sin(alpha * f.psi(j)) / alpha;
    out.values[j] = second - h * h * s * s * f.values[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// limits of the transported Mathieu solutions
// ---------------------------------------------------------------------------

/// Gamma-function form of the published limit constants: even
/// Gamma(1/2-n)/(2^n sqrt(pi)), odd Gamma(-1/2-n)/(2^{n+1} sqrt(pi)).
inline double limit_constant_gamma_form(Parity parity, int n) {
  int m = parity == Parity::EvenCe ? n : n + 1;
  // Gamma(1/2 - m) = sqrt(pi) / prod_{j=1..m} (1/2 - j)
  double prod = 1.0;
  for (int j = 1; j <= m; ++j) prod *= 0.5 - j;
  double gamma_half_minus_m = std::sqrt(M_PI) / prod;
  return gamma_half_minus_m / (std::exp2(m) * std::sqrt(M_PI));
}

/// Factorial form of the published limit constants: even
/// (-1)^n 2^n n!/(2n)!, odd (-1)^{n+1} 2^{n+1} (n+1)!/(2n+2)!.
inline double limit_constant_factorial_form(Parity parity, int n) {
  if (parity == Parity::EvenCe) {
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp2(n) * std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0));
  }
  double sign = n % 2 == 0 ? -1.0 : 1.0;
  return sign * std::exp2(n + 1) * std::exp(std::lgamma(n + 2.0) - std::lgamma(2.0 * n + 3.0));
}

/// Hermite-Gaussian limit of the normalized transported eigenfunctions,
/// normalized the way the ratios are actually formed: the even ratio is 1 at
/// psi=0 and the odd ratio has unit d/dpsi slope there. Even target
/// (-1)^n n!/(2n)! e^{-h psi^2/2} H_{2n}(sqrt(h) psi); odd the analog with
/// constant (-1)^n n! / (2 sqrt(h) (2n+1) (2n)!).
inline double hermite_gaussian_target(Parity parity, int n, double h, double psi) {
  double sign = n % 2 == 0 ? 1.0 : -1.0;
  double envelope = std::exp(-0.5 * h * psi * psi);
  if (parity == Parity::EvenCe) {
    double c = sign * std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0));
    return c * envelope * hermite(2 * n, std::sqrt(h) * psi);
  }
  double c = sign * std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0)) /
             (2.0 * std::sqrt(h) * (2.0 * n + 1.0));
  return c * envelope * hermite(2 * n + 1, std::sqrt(h) * psi);
}

/// mu recovered from the computed characteristic value: mu = alpha^2 (a + 2q)
/// with q = h^2 alpha^{-4}/4; tends to (2n+1)h (even) / (2n-1)h (odd).
inline double mu_of(double alpha, double h, int n, Parity parity) {
  MathieuParams base = param_map(alpha, h, 0.0);
  double a = mathieu_char(parity, n, base.q);
  return alpha * alpha * (a + 2.0 * base.q);
}

/// Sips index of the large-q branch: 2n+1 for a_n, 2n-1 for b_n.
inline int sips_index(Parity parity, int n) {
  return parity == Parity::EvenCe ? 2 * n + 1 : 2 * n - 1;
}

/// Leading defect of mu against its limit: -(s^2+1) alpha^2 / 8.
inline double predicted_mu_defect(double alpha, Parity parity, int n) {
  double s = sips_index(parity, n);
  return -(s * s + 1.0) * alpha * alpha / 8.0;
}

/// One row of the confluence sweep: display index n pairs ce_{2n} with
/// H_{2n} and se_{2n+2} with H_{2n+1}.
struct SweepRecord {
  double alpha;
  double q;
  int n;
  Parity parity;
  double sup_err;           // sup over the psi window of |ratio - target|
  double mu;                // alpha^2 (a + 2q) for this row's eigenvalue
  double mu_defect;         // mu - s*h
  double predicted_defect;  // -(s^2+1) alpha^2 / 8
};

/// Transported-eigenfunction sweep over a decreasing alpha list. For each
/// (alpha, n): even ratio ce_{2n}(alpha psi + pi/2, q)/ce_{2n}(pi/2, q), odd
/// ratio se_{2n+2}(alpha psi + pi/2, q) / (alpha se'_{2n+2}(pi/2, q)), both
/// against their Hermite-Gaussian targets on [-psi_max, psi_max].
inline std::vector<SweepRecord> confluence_sweep(int n_max, double h,
                                                 std::span<const double> alphas,
                                                 double psi_max = 2.0, int grid = 201) {
  std::vector<SweepRecord> out;
  for (double alpha : alphas) {
    double q = h * h / (4.0 * std::pow(alpha, 4));
    for (int n = 0; n <= n_max; ++n) {
      for (Parity parity : {Parity::EvenCe, Parity::OddSe}) {
        int order = parity == Parity::EvenCe ? 2 * n : 2 * n + 2;
        MathieuEigen e = mathieu_eigenpair(parity, order, q);
        double denom = parity == Parity::EvenCe
                           ? mathieu_eval(e, M_PI / 2.0)
                           : alpha * mathieu_eval_deriv(e, M_PI / 2.0);
        double sup = 0.0;
        for (int g = 0; g < grid; ++g) {
          double psi = -psi_max + 2.0 * psi_max * g / (grid - 1);
          double ratio = mathieu_eval(e, alpha * psi + M_PI / 2.0) / denom;
          double target = hermite_gaussian_target(parity, n, h, psi);
          sup = std::max(sup, std::abs(ratio - target));
        }
        SweepRecord rec;
        rec.alpha = alpha;
        rec.q = q;
        rec.n = n;
        rec.parity = parity;
        rec.sup_err = sup;
        rec.mu = alpha * alpha * (e.a + 2.0 * q);
        double s = sips_index(parity, order);
        rec.mu_defect = rec.mu - s * h;
        rec.predicted_defect = -(s * s + 1.0) * alpha * alpha / 8.0;
        out.push_back(rec);
      }
    }
  }
  return out;
}

}  // namespace confluentia
