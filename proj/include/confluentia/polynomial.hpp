#pragma once

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "confluentia/rational.hpp"

namespace confluentia {

/// Dense univariate polynomial over the exact rationals, coefficients in
/// ascending degree with no stored trailing zeros (the zero polynomial has an
/// empty coefficient list and degree -1).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }
  static RationalPoly monomial(int degree, Rational coeff) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = std::move(coeff);
    return RationalPoly(std::move(c));
  }
  /// leading * prod (z - root_i)^{mult_i}
  static RationalPoly from_roots(const Rational& leading,
                                 const std::vector<std::pair<Rational, int>>& roots) {
    RationalPoly p = constant(leading);
    for (const auto& [root, mult] : roots)
      for (int i = 0; i < mult; ++i) p = p * RationalPoly({-root, Rational(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  /// Coefficient of z^i (zero beyond the stored degree).
  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RationalPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return RationalPoly(std::move(d));
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const Rational& s, const RationalPoly& p) {
    if (s == 0) return {};
    std::vector<Rational> c(p.c_);
    for (auto& v : c) v *= s;
    return RationalPoly(std::move(c));
  }
  RationalPoly operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

  /// Vanishing order at x0 (multiplicity of x0 as a root); 0 when p(x0) != 0.
  /// Must not be called on the zero polynomial.
  int order_at(const Rational& x0) const {
    assert(!is_zero());
    RationalPoly p = *this;
    int ord = 0;
    while (p.eval(x0) == 0) {
      p = p.deflate_once(x0);
      ++ord;
    }
    return ord;
  }

  /// Exact division by (z - root)^times; the root must have at least that
  /// multiplicity.
  RationalPoly deflate(const Rational& root, int times) const {
    RationalPoly p = *this;
    for (int i = 0; i < times; ++i) {
      assert(p.eval(root) == 0);
      p = p.deflate_once(root);
    }
    return p;
  }

  /// w^d * p(1/w) as a polynomial in w; requires d >= degree().
  RationalPoly reversed(int d) const {
    assert(d >= degree());
    if (is_zero()) return {};
    std::vector<Rational> c(d + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) c[d - i] = c_[i];
    return RationalPoly(std::move(c));
  }

  /// p(scale*z + offset)
  RationalPoly compose_affine(const Rational& scale, const Rational& offset) const {
    RationalPoly arg({offset, scale});
    RationalPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + constant(*it);
    return acc;
  }

  RationalPoly monic() const {
    if (is_zero()) return {};
    return (Rational(1) / c_.back()) * *this;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += to_string(c_[i]);
      if (i > 0) out += "*z^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  // synthetic division by (z - root); remainder must be zero
  RationalPoly deflate_once(const Rational& root) const {
    std::vector<Rational> q(c_.size() - 1);
    Rational carry = c_.back();
    for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) {
      q[i] = carry;
      carry = c_[i] + root * carry;
    }
    assert(carry == 0);
    return RationalPoly(std::move(q));
  }

  std::vector<Rational> c_;
};

/// Euclidean remainder of a by b (b nonzero).
inline RationalPoly poly_rem(RationalPoly a, const RationalPoly& b) {
  assert(!b.is_zero());
  while (!a.is_zero() && a.degree() >= b.degree()) {
    Rational f = a.coeff(a.degree()) / b.coeff(b.degree());
    int shift = a.degree() - b.degree();
    a = a - f * (b * RationalPoly::monomial(shift, Rational(1)));
  }
  return a;
}

/// Monic gcd over Q[z]; gcd(0,0) = 0.
inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace confluentia
