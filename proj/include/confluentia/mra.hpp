#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "confluentia/algebra.hpp"
#include "confluentia/sampling.hpp"

namespace confluentia {

// ---------------------------------------------------------------------------
// Littlewood-Paley-Meyer window
// ---------------------------------------------------------------------------

/// Smooth frequency window: 1 on |xi| <= 2pi/3, 0 beyond 4pi/3, strictly
/// between on the transition band, with phi^2(xi) + phi^2(2pi - xi) = 1.
struct WindowFn {
  std::function<double(double)> phi;

  double operator()(double xi) const { return phi(xi); }
};

namespace detail {

inline double bump_h(double t) {
  if (t <= 0.0) return 0.0;
  double inv = 1.0 / (t * t);
  return inv > 700.0 ? 0.0 : std::exp(-inv);
}

inline double bump_g(double p) {
  double num = bump_h(4.0 * M_PI / 3.0 - p);
  double den = bump_h(p - 2.0 * M_PI / 3.0) + num;
  if (den == 0.0) return p <= 2.0 * M_PI / 3.0 ? 1.0 : 0.0;
  return num / den;
}

}  // namespace detail

/// The concrete window phi(xi) = sqrt(g(xi) g(-xi)) built from
/// g = h(4pi/3 - .)/(h(. - 2pi/3) + h(4pi/3 - .)), h(t) = exp(-1/t^2) (t>0).
inline WindowFn lpm_window() {
  return WindowFn{[](double xi) {
    double prod = detail::bump_g(xi) * detail::bump_g(-xi);
    return prod <= 0.0 ? 0.0 : std::sqrt(prod);
  }};
}

/// Grid defects of the window conditions.
struct WindowDefects {
  double flat;        // max |phi - 1| on |xi| <= 2pi/3
  double band;        // how far phi escapes [0,1] on the transition band
  double support;     // max |phi| on |xi| >= 4pi/3 (probed past the edge)
  double symmetry;    // max |phi^2(xi) + phi^2(2pi-xi) - 1| on [0, 2pi]
  double partition;   // max |sum_k phi^2(xi + 2k pi) - 1|

  double worst() const {
    return std::max({flat, band, support, symmetry, partition});
  }
};

inline WindowDefects window_checks(const WindowFn& w, int grid) {
  WindowDefects d{0, 0, 0, 0, 0};
  const double two_thirds = 2.0 * M_PI / 3.0, four_thirds = 4.0 * M_PI / 3.0;
  for (int i = 0; i <= grid; ++i) {
    double xi = two_thirds * i / grid;
    d.flat = std::max({d.flat, std::abs(w(xi) - 1.0), std::abs(w(-xi) - 1.0)});
  }
  // strictness of 0 < phi < 1 is unverifiable in doubles near the band edges
  // (the window is 1 minus a quantity that underflows); check containment
  for (int i = 1; i < grid; ++i) {
    double xi = two_thirds + (four_thirds - two_thirds) * i / grid;
    double v = w(xi);
    d.band = std::max({d.band, -v, v - 1.0});
  }
  d.band = std::max(d.band, 0.0);
  for (int i = 0; i <= grid; ++i) {
    double xi = four_thirds + 4.0 * M_PI * i / grid;
    d.support = std::max({d.support, std::abs(w(xi)), std::abs(w(-xi))});
  }
  for (int i = 0; i <= grid; ++i) {
    double xi = 2.0 * M_PI * i / grid;
    double s = w(xi) * w(xi) + w(2.0 * M_PI - xi) * w(2.0 * M_PI - xi);
    d.symmetry = std::max(d.symmetry, std::abs(s - 1.0));
    double p = 0.0;
    for (int k = -2; k <= 2; ++k) {
      double v = w(xi + 2.0 * M_PI * k);
      p += v * v;
    }
    d.partition = std::max(d.partition, std::abs(p - 1.0));
  }
  return d;
}

// ---------------------------------------------------------------------------
// group elements, representations, exponentials
// ---------------------------------------------------------------------------

/// Heisenberg group element h(a,b,t) (upper-triangular realization).
struct H3Element {
  double a = 0, b = 0, t = 0;
};

/// Covering motion-group element (theta, v1, v2).
struct GalphaElement {
  double theta = 0, v1 = 0, v2 = 0;
};

/// Group law (theta, v).(theta', v') = (theta + theta', v + k_alpha(theta) v').
inline GalphaElement galpha_multiply(double alpha, const GalphaElement& g,
                                     const GalphaElement& gp) {
  double c = std::cos(alpha * g.theta);
  double s = std::sin(alpha * g.theta);
  return {g.theta + gp.theta,
          g.v1 + c * gp.v1 - alpha * s * gp.v2,
          g.v2 + s / alpha * gp.v1 + c * gp.v2};
}

/// exp of X = p P + q Q + e E in the covering motion group:
/// (theta, v) = (p, T(p) (q,e)) with T(theta) = int_0^1 k_alpha(s theta) ds.
inline GalphaElement exp_galpha(const AlgebraElement& x, double alpha) {
  double t = alpha * x.p;
  double cc, cs;  // int_0^1 cos(s t) ds and int_0^1 sin(s t) ds
  if (std::abs(t) < 1e-3) {
    // series; the closed forms lose digits to cancellation near t = 0
    double t2 = t * t;
    cc = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    cs = t / 2.0 - t * t2 / 24.0 + t * t2 * t2 / 720.0;
  } else {
    cc = std::sin(t) / t;
    cs = (1.0 - std::cos(t)) / t;
  }
  return {x.p, cc * x.q - alpha * cs * x.e, cs / alpha * x.q + cc * x.e};
}

/// Heisenberg limit of exp_galpha: the contraction identifies (theta,v1,v2)
/// with h(a,b,t) = h(v1, theta, v2), giving exp X = h(q, p, e + pq/2).
inline H3Element exp_h3(const AlgebraElement& x) {
  return {x.q, x.p, x.e + 0.5 * x.p * x.q};
}

/// Schroedinger-type representation: (R^h(h(a,b,t)) f)(x) = e^{iht} e^{ihax} f(x+b).
inline LineSample rep_h3(const H3Element& g, double h, const LineSample& f) {
  LineSample out = f.shifted(g.b);
  for (size_t j = 0; j < out.size(); ++j)
    out.values[j] *= std::polar(1.0, h * (g.t + g.a * out.x(j)));
  return out;
}

/// Principal-series action on the pseudo-period:
/// (R^{alpha,lambda}_h(g) f)(psi)
///   = e^{ih(v2 cos(alpha psi) + v1 sin(alpha psi)/alpha)} f(psi + theta).
inline PseudoPeriodicSample rep_galpha(const GalphaElement& g, double h,
                                       const PseudoPeriodicSample& f) {
  PseudoPeriodicSample out = f.shifted(g.theta);
  for (size_t j = 0; j < out.size(); ++j) {
    double psi = out.psi(j);
    double phase = h * (g.v2 * std::cos(f.alpha * psi) + g.v1 * std::sin(f.alpha * psi) / f.alpha);
    out.values[j] *= std::polar(1.0, phase);
  }
  return out;
}

// ---------------------------------------------------------------------------
// injections, periodizations, half-period operators
// ---------------------------------------------------------------------------

/// (I f)(psi) = phi(alpha psi) f(psi), sampled on a line grid.
inline LineSample inject_i(const PseudoPeriodicSample& f, const WindowFn& w, double half_width,
                           size_t n_line) {
  LineSample out;
  out.half_width = half_width;
  out.values.resize(n_line);
  for (size_t j = 0; j < n_line; ++j) {
    double psi = out.x(j);
    double window = w(f.alpha * psi);
    out.values[j] = window == 0.0 ? Complex(0.0, 0.0) : window * f.eval(psi);
  }
  return out;
}

/// (A u)(psi) = sum_k phi(alpha psi + 2k pi) e^{-2 i k pi lambda} u(psi + 2k pi / alpha);
/// only finitely many k contribute by the support of phi. The line grid must
/// cover the support of phi(alpha .).
inline PseudoPeriodicSample periodize_a(const LineSample& u, const WindowFn& w, double alpha,
                                        double lambda, size_t n_pp) {
  PseudoPeriodicSample out;
  out.alpha = alpha;
  out.lambda = lambda;
  out.values.assign(n_pp, Complex(0.0, 0.0));
  for (size_t j = 0; j < n_pp; ++j) {
    double psi = out.psi(j);
    Complex acc(0.0, 0.0);
    for (int k = -3; k <= 3; ++k) {
      double window = w(alpha * psi + 2.0 * M_PI * k);
      if (window == 0.0) continue;
      Complex phase = std::polar(1.0, -2.0 * M_PI * k * lambda);
      acc += window * phase * u.eval(psi + 2.0 * M_PI * k / alpha);
    }
    out.values[j] = acc;
  }
  return out;
}

/// Orthogonal projection P = I o A of the line onto the window-limited space.
inline LineSample project_p(const LineSample& u, const WindowFn& w, double alpha, double lambda,
                            size_t n_pp) {
  return inject_i(periodize_a(u, w, alpha, lambda, n_pp), w, u.half_width, u.size());
}

/// Half-period twist (U f)(psi) = e^{-i pi lambda} f(psi + pi/alpha).
inline PseudoPeriodicSample op_u(const PseudoPeriodicSample& f) {
  const size_t n = f.size();
  if (n % 2 != 0) throw OddGridError("half-period shift needs an even grid");
  PseudoPeriodicSample out = f;
  Complex front = std::polar(1.0, -M_PI * f.lambda);
  Complex wrap = std::polar(1.0, 2.0 * M_PI * f.lambda);  // pseudo-period twist
  for (size_t j = 0; j < n; ++j) {
    size_t k = j + n / 2;
    Complex v = k < n ? f.values[k] : wrap * f.values[k - n];
    out.values[j] = front * v;
  }
  return out;
}

/// Injection (J f)(psi) = (1 + e^{i alpha psi}) f(psi) from the half-density
/// space H^{2 alpha, lambda/2} (n' samples on [0, pi/alpha)) into
/// H^{alpha, lambda} (2n' samples).
inline PseudoPeriodicSample op_j(const PseudoPeriodicSample& f, double alpha_out,
                                 double lambda_out) {
  const size_t np = f.size();
  PseudoPeriodicSample out;
  out.alpha = alpha_out;
  out.lambda = lambda_out;
  out.values.resize(2 * np);
  Complex wrap = std::polar(1.0, M_PI * lambda_out);  // f(psi + pi/alpha) = e^{i pi lambda} f(psi)
  for (size_t j = 0; j < 2 * np; ++j) {
    double psi = out.psi(j);
    Complex base = j < np ? f.values[j] : wrap * f.values[j - np];
    out.values[j] = (1.0 + std::polar(1.0, alpha_out * psi)) * base;
  }
  return out;
}

/// Adjoint-side map (R f)(psi) = (1+e^{-i alpha psi}) f(psi)/4
///                             + (1-e^{-i alpha psi}) f(psi + pi/alpha)/4,
/// landing in H^{2 alpha, lambda/2}.
inline PseudoPeriodicSample op_r(const PseudoPeriodicSample& f) {
  const size_t n = f.size();
  if (n % 2 != 0) throw OddGridError("half-period shift needs an even grid");
  PseudoPeriodicSample out;
  out.alpha = 2.0 * f.alpha;
  out.lambda = f.lambda / 2.0;
  out.values.resize(n / 2);
  for (size_t j = 0; j < n / 2; ++j) {
    double psi = f.psi(j);
    Complex e = std::polar(1.0, -f.alpha * psi);
    out.values[j] = 0.25 * (1.0 + e) * f.values[j] + 0.25 * (1.0 - e) * f.values[j + n / 2];
  }
  return out;
}

// ---------------------------------------------------------------------------
// operator-convergence harness
// ---------------------------------------------------------------------------

struct HarnessRecord {
  double alpha;
  double err_sup;  // max over the two copies of sup |out - target|
  double err_d1;   // same for the first finite-difference derivative
  double err_d2;   // and the second
};

namespace detail {

inline std::array<double, 3> frechet_errors(const LineSample& out, const LineSample& target) {
  const size_t n = out.size();
  const double dx = out.step();
  std::vector<Complex> diff(n);
  for (size_t j = 0; j < n; ++j) diff[j] = out.values[j] - target.values[j];
  double e0 = 0, e1 = 0, e2 = 0;
  for (size_t j = 0; j < n; ++j) e0 = std::max(e0, std::abs(diff[j]));
  for (size_t j = 1; j + 1 < n; ++j) {
    e1 = std::max(e1, std::abs((diff[j + 1] - diff[j - 1]) / (2.0 * dx)));
    e2 = std::max(e2, std::abs((diff[j + 1] - 2.0 * diff[j] + diff[j - 1]) / (dx * dx)));
  }
  return {e0, e1, e2};
}

}  // namespace detail

/// One harness evaluation: sandwiches R^{alpha,0}_h(exp_alpha X) between the
/// two-copy identification (J, U o J) / (R; R o U) and the window maps, and
/// compares with the block target diag(R^h(exp_0 X), R^{-h}(exp_0 X)).
inline HarnessRecord harness_step(const LineSample& u, const LineSample& v,
                                  const AlgebraElement& x, double h, double alpha,
                                  const WindowFn& w, size_t n_pp) {
  PseudoPeriodicSample f1 = periodize_a(u, w, 2.0 * alpha, 0.0, n_pp / 2);
  PseudoPeriodicSample f2 = periodize_a(v, w, 2.0 * alpha, 0.0, n_pp / 2);
  PseudoPeriodicSample g = op_j(f1, alpha, 0.0);
  PseudoPeriodicSample g2 = op_u(op_j(f2, alpha, 0.0));
  for (size_t j = 0; j < g.size(); ++j) g.values[j] += g2.values[j];

  PseudoPeriodicSample acted = rep_galpha(exp_galpha(x, alpha), h, g);

  LineSample out1 = inject_i(op_r(acted), w, u.half_width, u.size());
  LineSample out2 = inject_i(op_r(op_u(acted)), w, v.half_width, v.size());

  H3Element limit = exp_h3(x);
  LineSample tgt1 = rep_h3(limit, h, u);
  LineSample tgt2 = rep_h3(limit, -h, v);

  auto e1 = detail::frechet_errors(out1, tgt1);
  auto e2 = detail::frechet_errors(out2, tgt2);
  return {alpha, std::max(e1[0], e2[0]), std::max(e1[1], e2[1]), std::max(e1[2], e2[2])};
}

/// Runs the harness along a decreasing alpha list.
inline std::vector<HarnessRecord> convergence_harness(const LineSample& u, const LineSample& v,
                                                      const AlgebraElement& x, double h,
                                                      std::span<const double> alphas,
                                                      const WindowFn& w, size_t n_pp = 1024) {
  std::vector<HarnessRecord> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) out.push_back(harness_step(u, v, x, h, alpha, w, n_pp));
  return out;
}

}  // namespace confluentia
