#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace confluentia {

/// Element of the 3-dimensional vector space spanned by P, Q, E.
struct AlgebraElement {
  double p = 0, q = 0, e = 0;

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return {a.p + b.p, a.q + b.q, a.e + b.e};
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return {a.p - b.p, a.q - b.q, a.e - b.e};
  }
  friend AlgebraElement operator*(double s, const AlgebraElement& a) {
    return {s * a.p, s * a.q, s * a.e};
  }
  double norm_inf() const { return std::max({std::abs(p), std::abs(q), std::abs(e)}); }
};

inline AlgebraElement basis_P() { return {1, 0, 0}; }
inline AlgebraElement basis_Q() { return {0, 1, 0}; }
inline AlgebraElement basis_E() { return {0, 0, 1}; }

/// Structure constants of a bracket on span{P,Q,E}; c[k][i][j] is the
/// k-component of [e_i, e_j].
struct BracketTable {
  double alpha = 0;
  double c[3][3][3] = {};

  /// Deformation family joining the plane-motion bracket (alpha=1) to the
  /// Heisenberg bracket (alpha=0): [P,Q] = E, [P,E] = -alpha^2 Q, [E,Q] = 0.
  static BracketTable motion_contraction(double alpha) {
    BracketTable t;
    t.alpha = alpha;
    t.set(2, 0, 1, 1.0);            // [P,Q] = E
    t.set(1, 0, 2, -alpha * alpha); // [P,E] = -alpha^2 Q
    return t;
  }

  /// Family contracting so(2,1) generators onto the Heisenberg bracket:
  /// [P,Q] = E, [E,P] = alpha^2 Q, [E,Q] = alpha^4 P.
  static BracketTable so21_contraction(double alpha) {
    BracketTable t;
    t.alpha = alpha;
    double a2 = alpha * alpha;
    t.set(2, 0, 1, 1.0);       // [P,Q] = E
    t.set(1, 2, 0, a2);        // [E,P] = alpha^2 Q
    t.set(0, 2, 1, a2 * a2);   // [E,Q] = alpha^4 P
    return t;
  }

  void set(int k, int i, int j, double v) {
    c[k][i][j] = v;
    c[k][j][i] = -v;
  }

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    std::array<double, 3> xv{x.p, x.q, x.e}, yv{y.p, y.q, y.e}, out{0, 0, 0};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[k] += c[k][i][j] * xv[i] * yv[j];
    return {out[0], out[1], out[2]};
  }

  /// Max over basis triples of ||[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]||.
  double jacobi_defect() const {
    const AlgebraElement b[3] = {basis_P(), basis_Q(), basis_E()};
    double worst = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          AlgebraElement sum = bracket(bracket(b[i], b[j]), b[k]) +
                               bracket(bracket(b[j], b[k]), b[i]) +
                               bracket(bracket(b[k], b[i]), b[j]);
          worst = std::max(worst, sum.norm_inf());
        }
    return worst;
  }
};

}  // namespace confluentia
