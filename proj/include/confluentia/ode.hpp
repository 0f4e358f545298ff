#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "confluentia/errors.hpp"
#include "confluentia/polynomial.hpp"

namespace confluentia {

/// A point of the extended complex line restricted to rational locations.
struct Point {
  bool at_infinity = false;
  Rational z{0};

  static Point finite(Rational v) { return Point{false, std::move(v)}; }
  static Point infinity() { return Point{true, Rational(0)}; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || a.z == b.z);
  }
  std::string str() const { return at_infinity ? std::string("inf") : to_string(z); }
};

/// Second-order equation P0 y'' + P1 y' + P2 y = 0 with P0 kept factored:
/// P0 = p0_leading * prod (z - root)^mult. The factored form is what keeps
/// singular-point bookkeeping exact.
struct OdeSpec {
  Rational p0_leading{1};
  std::vector<std::pair<Rational, int>> p0_roots;
  RationalPoly p1;
  RationalPoly p2;

  RationalPoly p0_expanded() const { return RationalPoly::from_roots(p0_leading, p0_roots); }

  int p0_degree() const {
    int d = 0;
    for (const auto& [r, m] : p0_roots) d += m;
    return d;
  }

  /// Multiplicity of z0 as a root of P0 (0 when not a root).
  int root_multiplicity(const Rational& z0) const {
    for (const auto& [r, m] : p0_roots)
      if (r == z0) return m;
    return 0;
  }

  /// Finite singular locations, ascending.
  std::vector<Rational> singular_roots() const {
    std::vector<Rational> out;
    out.reserve(p0_roots.size());
    for (const auto& [r, m] : p0_roots) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Checks the spec invariants: P0 not identically zero, root list free of
/// duplicates and positive multiplicities, and gcd(P0,P1,P2) = 1.
inline OdeSpec validate(OdeSpec spec) {
  if (spec.p0_leading == 0) throw ZeroLeadingError("P0 has zero leading coefficient");
  for (size_t i = 0; i < spec.p0_roots.size(); ++i) {
    if (spec.p0_roots[i].second <= 0)
      throw ParseError("root multiplicity must be positive");
    for (size_t j = i + 1; j < spec.p0_roots.size(); ++j)
      if (spec.p0_roots[i].first == spec.p0_roots[j].first)
        throw ParseError("duplicate root in P0 factorization");
  }
  RationalPoly p0 = spec.p0_expanded();
  RationalPoly g = poly_gcd(poly_gcd(p0, spec.p1), spec.p2);
  if (g.degree() >= 1)
    throw CommonFactorError("P0, P1, P2 share the factor " + g.str());
  return spec;
}

namespace detail {

/// Vanishing order with the zero polynomial mapped to a large sentinel.
inline int order_or_inf(const RationalPoly& p, const Rational& x0) {
  if (p.is_zero()) return std::numeric_limits<int>::max() / 4;
  return p.order_at(x0);
}

}  // namespace detail

/// Chart change z = 1/w. The returned spec's point w=0 carries the input's
/// behavior at infinity; common linear factors introduced by the change are
/// cancelled so the result validates again.
inline OdeSpec invert_at_infinity(const OdeSpec& spec) {
  const int deg0 = spec.p0_degree();
  const int d = std::max({deg0, spec.p1.degree(), spec.p2.degree(), 0});

  // q_j(w) = w^d P_j(1/w)
  RationalPoly q0 = spec.p0_expanded().reversed(d);
  RationalPoly q1 = spec.p1.is_zero() ? RationalPoly() : spec.p1.reversed(d);
  RationalPoly q2 = spec.p2.is_zero() ? RationalPoly() : spec.p2.reversed(d);

  // y'' -> w^4 Y'' + 2 w^3 Y',  y' -> -w^2 Y'
  RationalPoly w2 = RationalPoly::monomial(2, Rational(1));
  RationalPoly w3 = RationalPoly::monomial(3, Rational(1));
  RationalPoly b = Rational(2) * (w3 * q0) - w2 * q1;
  RationalPoly c = q2;

  // Factored form of A = w^4 q0: roots 1/r for finite nonzero roots r of P0,
  // plus w = 0; roots at the origin of P0 leave the chart.
  OdeSpec out;
  out.p0_leading = spec.p0_leading;
  int zero_mult = 4 + d - deg0;
  std::vector<std::pair<Rational, int>> roots;
  for (const auto& [r, m] : spec.p0_roots) {
    if (r == 0) continue;
    out.p0_leading *= rational_pow(-r, m);
    roots.emplace_back(Rational(1) / r, m);
  }
  roots.emplace_back(Rational(0), zero_mult);
  out.p0_roots = std::move(roots);
  out.p1 = std::move(b);
  out.p2 = std::move(c);

  // cancel common linear factors (all of them divide A, which splits)
  std::vector<std::pair<Rational, int>> kept;
  for (auto& [root, mult] : out.p0_roots) {
    int cancel = std::min({mult, detail::order_or_inf(out.p1, root),
                           detail::order_or_inf(out.p2, root)});
    if (cancel > 0) {
      out.p1 = out.p1.is_zero() ? out.p1 : out.p1.deflate(root, cancel);
      out.p2 = out.p2.is_zero() ? out.p2 : out.p2.deflate(root, cancel);
      mult -= cancel;
    }
    if (mult > 0) kept.emplace_back(root, mult);
  }
  out.p0_roots = std::move(kept);
  std::sort(out.p0_roots.begin(), out.p0_roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// Leading branch exponents of the symbolic indicial equation
/// T(z,D) = P0 D^2 + P1 D + P2 at a point.
struct PuiseuxLeading {
  Point point;
  /// The two branch exponents, counted with multiplicity. At a finite point
  /// z_k the branch behaves like (z-z_k)^exponent and mu = -exponent; at
  /// infinity like z^exponent and mu = exponent + 2.
  std::array<Rational, 2> exponents;
  /// False when the point is not actually singular (exponents still computed).
  bool singular = true;

  std::array<Rational, 2> mu_values() const {
    if (point.at_infinity)
      return {exponents[0] + 2, exponents[1] + 2};
    return {-exponents[0], -exponents[1]};
  }
};

namespace detail {

/// Slopes of the lower convex hull of the marked points (j, ord P_{2-j}),
/// j = 0,1,2, each slope repeated per unit horizontal extent. These are the
/// mu values of the two branches at a finite point.
inline std::array<Rational, 2> newton_mu_finite(const OdeSpec& spec, const Rational& z0) {
  RationalPoly p0 = spec.p0_expanded();
  if (spec.p2.is_zero())
    throw DegenerateSymbolError("P2 is identically zero; the symbol degenerates");
  const Rational o2(order_or_inf(p0, z0));      // j = 2
  const Rational o0(spec.p2.order_at(z0));      // j = 0
  const bool have_mid = !spec.p1.is_zero();
  const Rational o1 = have_mid ? Rational(spec.p1.order_at(z0)) : Rational(0);

  // single segment (0,o0)-(2,o2) unless the middle point dips below it
  Rational chord_mid = (o0 + o2) / 2;
  if (!have_mid || o1 >= chord_mid) {
    Rational s = (o2 - o0) / 2;
    return {s, s};
  }
  return {o1 - o0, o2 - o1};
}

}  // namespace detail

/// Branch exponents from the Newton polygon of the marked points
/// (j, ord P_{2-j}) at the point; infinity is handled through the w = 1/z
/// chart. The `singular` flag is false at an ordinary point (finite point
/// where P0 does not vanish, or a non-singular infinity).
inline PuiseuxLeading newton_leading_exponents(const OdeSpec& spec, const Point& pt) {
  PuiseuxLeading out;
  out.point = pt;
  if (pt.at_infinity) {
    OdeSpec inv = invert_at_infinity(spec);
    auto mu = detail::newton_mu_finite(inv, Rational(0));
    out.singular = inv.root_multiplicity(Rational(0)) > 0;
    out.exponents = {mu[0] - 2, mu[1] - 2};
  } else {
    auto mu = detail::newton_mu_finite(spec, pt.z);
    out.singular = spec.root_multiplicity(pt.z) > 0;
    out.exponents = {-mu[0], -mu[1]};
  }
  if (out.exponents[0] > out.exponents[1]) std::swap(out.exponents[0], out.exponents[1]);
  return out;
}

}  // namespace confluentia
