#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "confluentia/hermite.hpp"
#include "confluentia/mra.hpp"

using namespace confluentia;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PseudoPeriodicSample random_pp(double alpha, double lambda, size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-0.15, 0.15);
  // random low-order trig polynomial of roughly unit amplitude, twisted
  std::vector<Complex> modes(9);
  for (auto& m : modes) m = Complex(amp(rng), amp(rng));
  return PseudoPeriodicSample::from_function(alpha, lambda, n, [&](double psi) {
    Complex acc(0, 0);
    for (int k = -4; k <= 4; ++k)
      acc += modes[k + 4] * std::polar(1.0, (k + lambda) * alpha * psi);
    return acc;
  });
}

LineSample hermite_line(int n, double h, double L, size_t grid) {
  return LineSample::from_function(L, grid,
                                   [&](double x) { return Complex(ho_eigenfunction({n, h}, x), 0.0); });
}

}  // namespace

TEST_CASE("window conditions") {
  WindowFn w = lpm_window();
  CHECK(w(0.0) == 1.0);
  CHECK_THAT(w(M_PI), WithinRel(1.0 / std::sqrt(2.0), 1e-13));
  CHECK(w(4.0 * M_PI / 3.0 + 0.01) == 0.0);
  // strictly between 0 and 1 mid-band
  for (double xi : {2.3, M_PI, 3.6, 4.0}) {
    CHECK(w(xi) > 0.0);
    CHECK(w(xi) < 1.0);
  }
  WindowDefects d = window_checks(w, 4096);
  CHECK(d.flat < 1e-15);
  CHECK(d.band == 0.0);
  CHECK(d.support == 0.0);
  CHECK(d.symmetry < 1e-12);
  CHECK(d.partition < 1e-12);
}

TEST_CASE("heisenberg representation actions") {
  const double h = 1.3;
  LineSample f = hermite_line(1, 1.0, 16.0, 2048);
  SECTION("center acts by a phase") {
    LineSample out = rep_h3({0.0, 0.0, 0.7}, h, f);
    for (size_t j = 0; j < f.size(); ++j)
      CHECK(std::abs(out.values[j] - std::polar(1.0, h * 0.7) * f.values[j]) < 1e-12);
  }
  SECTION("a-coordinate multiplies by a phase function") {
    LineSample out = rep_h3({0.5, 0.0, 0.0}, h, f);
    for (size_t j = 0; j < f.size(); ++j)
      CHECK(std::abs(out.values[j] - std::polar(1.0, h * 0.5 * f.x(j)) * f.values[j]) < 1e-12);
  }
  SECTION("b-coordinate shifts the samples") {
    // shift by an exact grid multiple: compare against index shift
    double b = 8.0 * f.step();
    LineSample out = rep_h3({0.0, b, 0.0}, h, f);
    for (size_t j = 0; j + 8 < f.size(); ++j)
      CHECK(std::abs(out.values[j] - f.values[j + 8]) < 1e-9);
  }
  SECTION("unitarity") {
    LineSample out = rep_h3({0.4, 0.3, 0.2}, h, f);
    CHECK_THAT(out.norm(), WithinRel(f.norm(), 1e-10));
  }
}

TEST_CASE("motion-group representation actions") {
  const double h = 1.1, alpha = 0.5;
  PseudoPeriodicSample f = random_pp(alpha, 0.0, 256, 5);
  SECTION("identity") {
    PseudoPeriodicSample out = rep_galpha({0, 0, 0}, h, f);
    CHECK(sup_distance(out.values, f.values) < 1e-12);
  }
  SECTION("unitarity for random group elements") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> c(-1.5, 1.5);
    for (int t = 0; t < 5; ++t) {
      PseudoPeriodicSample out = rep_galpha({c(rng), c(rng), c(rng)}, h, f);
      CHECK_THAT(out.norm(), WithinRel(f.norm(), 1e-10));
    }
  }
  SECTION("infinitesimal generators by central differences") {
    const double eps = 1e-3;
    // v2 direction: i h cos(alpha psi) f
    PseudoPeriodicSample plus = rep_galpha({0, 0, eps}, h, f);
    PseudoPeriodicSample minus = rep_galpha({0, 0, -eps}, h, f);
    double worst = 0;
    for (size_t j = 0; j < f.size(); ++j) {
      Complex fd = (plus.values[j] - minus.values[j]) / (2.0 * eps);
      Complex expected = Complex(0, h * std::cos(alpha * f.psi(j))) * f.values[j];
      worst = std::max(worst, std::abs(fd - expected));
    }
    CHECK(worst < 1e-6);
    // v1 direction: i h sin(alpha psi)/alpha f (phase slope up to h/alpha)
    plus = rep_galpha({0, eps, 0}, h, f);
    minus = rep_galpha({0, -eps, 0}, h, f);
    worst = 0;
    for (size_t j = 0; j < f.size(); ++j) {
      Complex fd = (plus.values[j] - minus.values[j]) / (2.0 * eps);
      Complex expected = Complex(0, h * std::sin(alpha * f.psi(j)) / alpha) * f.values[j];
      worst = std::max(worst, std::abs(fd - expected));
    }
    CHECK(worst < 1e-5);
    // theta direction: df/dpsi (the difference quotient carries an
    // eps^2 f''' truncation term, hence the looser bound)
    plus = rep_galpha({eps, 0, 0}, h, f);
    minus = rep_galpha({-eps, 0, 0}, h, f);
    worst = 0;
    std::vector<Complex> deriv = spectral_derivative(f.values, f.period(), 1);
    for (size_t j = 0; j < f.size(); ++j) {
      Complex fd = (plus.values[j] - minus.values[j]) / (2.0 * eps);
      worst = std::max(worst, std::abs(fd - deriv[j]));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("group exponential") {
  SECTION("pure translations are fixed points") {
    GalphaElement g = exp_galpha({0.0, 0.7, -0.2}, 0.5);
    CHECK(g.theta == 0.0);
    CHECK_THAT(g.v1, WithinRel(0.7, 1e-14));
    CHECK_THAT(g.v2, WithinRel(-0.2, 1e-14));
  }
  SECTION("pure rotation") {
    GalphaElement g = exp_galpha({1.3, 0.0, 0.0}, 0.5);
    CHECK(g.theta == 1.3);
    CHECK(g.v1 == 0.0);
    CHECK(g.v2 == 0.0);
  }
  SECTION("one-parameter subgroup property") {
    const double alpha = 0.5, t = 0.3, s = 0.3;
    AlgebraElement x{1.0, 1.0, 0.0};
    GalphaElement a = exp_galpha({t * x.p, t * x.q, t * x.e}, alpha);
    GalphaElement b = exp_galpha({s * x.p, s * x.q, s * x.e}, alpha);
    GalphaElement ab = galpha_multiply(alpha, a, b);
    GalphaElement direct = exp_galpha({(t + s) * x.p, (t + s) * x.q, (t + s) * x.e}, alpha);
    CHECK_THAT(ab.theta, WithinAbs(direct.theta, 1e-10));
    CHECK_THAT(ab.v1, WithinAbs(direct.v1, 1e-10));
    CHECK_THAT(ab.v2, WithinAbs(direct.v2, 1e-10));
  }
  SECTION("matches the flow-integration oracle") {
    // gamma' = p, v' = k_alpha(theta(t)) (q,e): RK4 from the identity
    const double alpha = 0.7;
    AlgebraElement x{0.9, -0.4, 0.6};
    double theta = 0, v1 = 0, v2 = 0;
    const int steps = 2000;
    const double dt = 1.0 / steps;
    auto rhs = [&](double th, double& d1, double& d2) {
      d1 = std::cos(alpha * th) * x.q - alpha * std::sin(alpha * th) * x.e;
      d2 = std::sin(alpha * th) / alpha * x.q + std::cos(alpha * th) * x.e;
    };
    for (int i = 0; i < steps; ++i) {
      double t0 = i * dt;
      double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
      rhs(x.p * t0, k1a, k1b);
      rhs(x.p * (t0 + dt / 2), k2a, k2b);
      rhs(x.p * (t0 + dt / 2), k3a, k3b);
      rhs(x.p * (t0 + dt), k4a, k4b);
      v1 += dt / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
      v2 += dt / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
      theta += dt * x.p;
    }
    GalphaElement g = exp_galpha(x, alpha);
    CHECK_THAT(g.theta, WithinAbs(theta, 1e-10));
    CHECK_THAT(g.v1, WithinAbs(v1, 1e-10));
    CHECK_THAT(g.v2, WithinAbs(v2, 1e-10));
  }
  SECTION("heisenberg limit coordinates") {
    AlgebraElement x{0.8, 0.5, 0.3};
    H3Element g = exp_h3(x);
    CHECK(g.a == 0.5);
    CHECK(g.b == 0.8);
    CHECK_THAT(g.t, WithinRel(0.3 + 0.5 * 0.8 * 0.5, 1e-14));
    // exp_galpha tends to the same coordinates
    GalphaElement ga = exp_galpha(x, 1e-5);
    CHECK_THAT(ga.v1, WithinAbs(g.a, 1e-8));
    CHECK_THAT(ga.v2, WithinAbs(g.t, 1e-8));
  }
}

TEST_CASE("injection and periodization") {
  WindowFn w = lpm_window();
  const double alpha = 1.0;
  const size_t n_pp = 256, n_line = 4096;
  const double L = 4.0 * M_PI / (3.0 * alpha) + 2.0;

  SECTION("constant function maps to window samples") {
    auto f = PseudoPeriodicSample::from_function(alpha, 0.0, n_pp,
                                                 [](double) { return Complex(1.0, 0.0); });
    LineSample g = inject_i(f, w, L, n_line);
    for (size_t j = 0; j < g.size(); j += 37)
      CHECK_THAT(std::abs(g.values[j]), WithinAbs(w(alpha * g.x(j)), 1e-10));
  }
  SECTION("isometry and A o I = id on random samples") {
    for (unsigned seed : {1u, 2u, 3u}) {
      PseudoPeriodicSample f = random_pp(alpha, 0.0, n_pp, seed);
      LineSample g = inject_i(f, w, L, n_line);
      CHECK_THAT(g.norm() / f.norm(), WithinAbs(1.0, 1e-8));
      PseudoPeriodicSample back = periodize_a(g, w, alpha, 0.0, n_pp);
      CHECK(sup_distance(back.values, f.values) < 1e-10);
    }
  }
  SECTION("A restricted to core-supported data is the identity") {
    // u supported where phi(alpha psi) = 1: only k = 0 contributes
    LineSample u = LineSample::from_function(L, n_line, [&](double x) {
      double cut = 2.0 * M_PI / (3.0 * alpha) * 0.9;
      double envelope = std::exp(-x * x / (2.0 * 0.3 * 0.3));
      return std::abs(x) < cut ? Complex(envelope, 0) : Complex(0, 0);
    });
    PseudoPeriodicSample a = periodize_a(u, w, alpha, 0.0, n_pp);
    for (size_t j = 0; j < a.size(); ++j) {
      double psi = a.psi(j);
      if (psi > a.period() / 2) psi -= a.period();  // principal branch
      CHECK(std::abs(a.values[j] - u.eval(psi)) < 1e-9);
    }
  }
  SECTION("adjointness of I and A") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> amp(-1, 1);
    PseudoPeriodicSample f = random_pp(alpha, 0.0, n_pp, 11);
    LineSample u = LineSample::from_function(L, n_line, [&](double x) {
      return Complex(std::exp(-0.5 * x * x), 0.3 * std::exp(-0.3 * (x - 1) * (x - 1)));
    });
    Complex lhs = inner_product(inject_i(f, w, L, n_line), u);
    Complex rhs = inner_product(f, periodize_a(u, w, alpha, 0.0, n_pp));
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
  SECTION("projector is idempotent and self-adjoint") {
    LineSample u = LineSample::from_function(L, n_line, [&](double x) {
      return Complex(std::exp(-0.4 * x * x), std::sin(x) * std::exp(-0.2 * x * x));
    });
    LineSample v = LineSample::from_function(L, n_line, [&](double x) {
      return Complex(std::exp(-0.3 * (x + 0.5) * (x + 0.5)), 0.1);
    });
    LineSample pu = project_p(u, w, alpha, 0.0, n_pp);
    LineSample ppu = project_p(pu, w, alpha, 0.0, n_pp);
    double scale = u.norm();
    CHECK(sup_distance(ppu.values, pu.values) / scale < 1e-8);
    Complex lhs = inner_product(pu, v);
    Complex rhs = inner_product(u, project_p(v, w, alpha, 0.0, n_pp));
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("half-period operators") {
  const double alpha = 0.5;
  const size_t n = 256;

  SECTION("U twice is the identity, including twisted samples") {
    for (double lambda : {0.0, 0.25, 0.6}) {
      PseudoPeriodicSample f = random_pp(alpha, lambda, n, 21);
      PseudoPeriodicSample uu = op_u(op_u(f));
      CHECK(sup_distance(uu.values, f.values) < 1e-10);
    }
  }
  SECTION("J of the constant function is 1 + e^{i alpha psi}") {
    auto f = PseudoPeriodicSample::from_function(2 * alpha, 0.0, n / 2,
                                                 [](double) { return Complex(1.0, 0.0); });
    PseudoPeriodicSample jf = op_j(f, alpha, 0.0);
    for (size_t j = 0; j < jf.size(); j += 17) {
      Complex expected = 1.0 + std::polar(1.0, alpha * jf.psi(j));
      CHECK(std::abs(jf.values[j] - expected) < 1e-12);
    }
  }
  SECTION("R o J = id on the half-density space") {
    PseudoPeriodicSample f = random_pp(2 * alpha, 0.0, n / 2, 31);
    PseudoPeriodicSample rj = op_r(op_j(f, alpha, 0.0));
    CHECK(sup_distance(rj.values, f.values) < 1e-10);
  }
  SECTION("(J, UJ) then (R; RU) is the identity pair") {
    PseudoPeriodicSample f1 = random_pp(2 * alpha, 0.0, n / 2, 41);
    PseudoPeriodicSample f2 = random_pp(2 * alpha, 0.0, n / 2, 42);
    PseudoPeriodicSample g = op_j(f1, alpha, 0.0);
    PseudoPeriodicSample g2 = op_u(op_j(f2, alpha, 0.0));
    for (size_t j = 0; j < g.size(); ++j) g.values[j] += g2.values[j];
    PseudoPeriodicSample r1 = op_r(g);
    PseudoPeriodicSample r2 = op_r(op_u(g));
    CHECK(sup_distance(r1.values, f1.values) < 1e-10);
    CHECK(sup_distance(r2.values, f2.values) < 1e-10);
  }
  SECTION("odd grids are rejected") {
    PseudoPeriodicSample f = random_pp(alpha, 0.0, 255, 51);
    CHECK_THROWS_AS(op_u(f), OddGridError);
  }
}

TEST_CASE("windowed basis functions are orthonormal up to the transform convention") {
  // alpha^{1/2} e^{i k alpha xi} phi(alpha xi): inner products over the line
  // equal 2 pi delta_{jk} with the unnormalized transform convention
  WindowFn w = lpm_window();
  const double alpha = 0.5;
  const double L = 4.0 * M_PI / (3.0 * alpha) + 1.0;
  const size_t n = 8192;
  auto basis = [&](int k) {
    return LineSample::from_function(L, n, [&](double xi) {
      return std::sqrt(alpha) * std::polar(1.0, k * alpha * xi) * w(alpha * xi);
    });
  };
  for (int j = 0; j <= 2; ++j) {
    for (int k = j; k <= 2; ++k) {
      Complex ip = inner_product(basis(j), basis(k)) / (2.0 * M_PI);
      CHECK_THAT(ip.real(), WithinAbs(j == k ? 1.0 : 0.0, 1e-9));
      CHECK_THAT(ip.imag(), WithinAbs(0.0, 1e-9));
    }
  }
}

TEST_CASE("convergence harness") {
  WindowFn w = lpm_window();
  const double h = 1.0;
  const double alphas[] = {0.5, 0.25, 0.125};
  const double L = 4.0 * M_PI / (3.0 * 2.0 * alphas[2]) + 6.0;
  const size_t n_line = 4096;

  SECTION("X = 0 reduces to the projector pair") {
    LineSample u = hermite_line(0, h, L, n_line);
    LineSample v = hermite_line(1, h, L, n_line);
    auto recs = convergence_harness(u, v, {0, 0, 0}, h, alphas, w, 1024);
    CHECK(recs[0].err_sup < 0.05);
    CHECK(recs[1].err_sup < recs[0].err_sup);
    CHECK(recs[2].err_sup < 1e-6);
  }
  SECTION("center direction converges to opposite phases") {
    LineSample u = hermite_line(0, h, L, n_line);
    auto recs = convergence_harness(u, u, {0, 0, 0.3}, h, alphas, w, 1024);
    CHECK(recs[2].err_sup < recs[1].err_sup);
    CHECK(recs[1].err_sup < recs[0].err_sup);
    // explicit magnitude check at the smallest alpha
    HarnessRecord last = harness_step(u, u, {0, 0, 0.3}, h, alphas[2], w, 1024);
    CHECK(last.err_sup < 0.05);
  }
  SECTION("every basis direction decreases along the alpha list") {
    LineSample u = hermite_line(2, h, L, n_line);
    LineSample v = hermite_line(1, h, L, n_line);
    for (const AlgebraElement& x :
         {AlgebraElement{0.4, 0, 0}, AlgebraElement{0, 0.4, 0}, AlgebraElement{0, 0, 0.4}}) {
      auto recs = convergence_harness(u, v, x, h, alphas, w, 1024);
      CHECK(recs[1].err_sup < recs[0].err_sup);
      CHECK(recs[2].err_sup < recs[1].err_sup);
    }
  }
}
