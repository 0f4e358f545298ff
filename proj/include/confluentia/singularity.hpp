#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "confluentia/ode.hpp"

namespace confluentia {

/// Classification of one singular point.
struct SingularPoint {
  Point location;
  bool regular = false;
  /// Set for regular points only (|rho1 - rho2| == 1/2).
  std::optional<bool> elementary;
  Rational srank{0};
  /// Set for irregular points only (half-integer s-rank).
  std::optional<bool> ramified;
  /// Frobenius exponents when the point is regular and they are rational.
  std::optional<std::pair<Rational, Rational>> exponents;
  /// Regular with exponents {0,1}: could be an apparent singularity.
  bool possibly_apparent = false;
  /// Indicial discriminant, kept when the exponents are irrational.
  std::optional<Rational> indicial_discriminant;
};

/// Sorted multiset of the s-ranks of all singular points.
struct SMultisymbol {
  std::vector<Rational> ranks;

  friend bool operator==(const SMultisymbol& a, const SMultisymbol& b) {
    return a.ranks == b.ranks;
  }
  std::string str() const {
    std::string out = "{";
    for (size_t i = 0; i < ranks.size(); ++i) {
      if (i) out += ";";
      out += to_string(ranks[i]);
    }
    return out + "}";
  }
};

inline SMultisymbol make_symbol(std::vector<Rational> ranks) {
  std::sort(ranks.begin(), ranks.end());
  return SMultisymbol{std::move(ranks)};
}

/// True when the point is a singularity of the equation: a root of P0, or
/// infinity when w=0 stays a root of P0 after the chart change (the
/// normalization inside invert_at_infinity cancels removable factors, so
/// this test is exact).
inline bool is_singular(const OdeSpec& spec, const Point& pt) {
  if (!pt.at_infinity) return spec.root_multiplicity(pt.z) > 0;
  return invert_at_infinity(spec).root_multiplicity(Rational(0)) > 0;
}

/// Regularity test: ord(P1) >= ord(P0)-1 and ord(P2) >= ord(P0)-2 at the
/// point (after the chart change for infinity).
inline bool is_regular(const OdeSpec& spec, const Point& pt) {
  if (!is_singular(spec, pt)) throw NotASingularityError("point " + pt.str() + " is not singular");
  if (pt.at_infinity) return is_regular(invert_at_infinity(spec), Point::finite(Rational(0)));
  const int m = spec.root_multiplicity(pt.z);
  const int o1 = detail::order_or_inf(spec.p1, pt.z);
  const int o2 = detail::order_or_inf(spec.p2, pt.z);
  return o1 >= m - 1 && o2 >= m - 2;
}

namespace detail {

struct Indicial {
  Rational a0, b0;       // rho(rho-1) + a0 rho + b0 = 0
  Rational discriminant; // (a0-1)^2 - 4 b0
};

inline Indicial indicial_at(const OdeSpec& spec, const Rational& z0) {
  const int m = spec.root_multiplicity(z0);
  RationalPoly u = spec.p0_expanded().deflate(z0, m);
  const Rational uz = u.eval(z0);
  Rational a0(0), b0(0);
  if (!spec.p1.is_zero() && spec.p1.order_at(z0) >= m - 1)
    a0 = spec.p1.deflate(z0, m - 1).eval(z0) / uz;
  if (!spec.p2.is_zero()) {
    int need = std::max(m - 2, 0);
    if (spec.p2.order_at(z0) >= need) {
      RationalPoly w = spec.p2.deflate(z0, need);
      if (m >= 2) {
        b0 = w.eval(z0) / uz;
      } else {
        // m == 1: (z-z0)^2 P2/P0 = (z-z0) P2/u -> 0
        b0 = Rational(0);
      }
    }
  }
  Rational disc = (a0 - 1) * (a0 - 1) - 4 * b0;
  return {a0, b0, disc};
}

}  // namespace detail

/// Frobenius exponents at a regular singular point, exact. Throws
/// IrregularPointError off the regular case and IrrationalExponentsError when
/// the indicial roots are not rational (the discriminant is still available
/// through classify_point).
inline std::pair<Rational, Rational> frobenius_exponents(const OdeSpec& spec, const Point& pt) {
  if (pt.at_infinity)
    return frobenius_exponents(invert_at_infinity(spec), Point::finite(Rational(0)));
  if (!is_regular(spec, pt)) throw IrregularPointError("point " + pt.str() + " is irregular");
  auto ind = detail::indicial_at(spec, pt.z);
  auto root = exact_sqrt(ind.discriminant);
  if (!root)
    throw IrrationalExponentsError("indicial discriminant " + to_string(ind.discriminant) +
                                   " is not a rational square");
  Rational r1 = ((1 - ind.a0) - *root) / 2;
  Rational r2 = ((1 - ind.a0) + *root) / 2;
  return {r1, r2};
}

/// Full classification of one singular point. Regular points get s-rank 1/2
/// (elementary) or 1 by definition; irregular points get the maximal Newton
/// mu, ramified when it is a half-integer.
inline SingularPoint classify_point(const OdeSpec& spec, const Point& pt) {
  SingularPoint out;
  out.location = pt;
  if (pt.at_infinity) {
    if (!is_singular(spec, pt)) throw NotASingularityError("infinity is not singular");
    out = classify_point(invert_at_infinity(spec), Point::finite(Rational(0)));
    out.location = pt;
    return out;
  }
  out.regular = is_regular(spec, pt);
  if (out.regular) {
    auto ind = detail::indicial_at(spec, pt.z);
    const bool elementary = ind.discriminant == Rational(1, 4);
    out.elementary = elementary;
    out.srank = elementary ? Rational(1, 2) : Rational(1);
    auto root = exact_sqrt(ind.discriminant);
    if (root) {
      Rational r1 = ((1 - ind.a0) - *root) / 2;
      Rational r2 = ((1 - ind.a0) + *root) / 2;
      out.exponents = std::make_pair(r1, r2);
      out.possibly_apparent = (r1 == 0 && r2 == 1);
    } else {
      out.indicial_discriminant = ind.discriminant;
    }
  } else {
    auto mu = newton_leading_exponents(spec, pt).mu_values();
    out.srank = std::max(mu[0], mu[1]);
    out.ramified = is_half_integer(out.srank);
  }
  return out;
}

/// Classification of every singular point plus the assembled s-multisymbol.
struct SingularityReport {
  std::vector<SingularPoint> points;  // finite points ascending, infinity last
  SMultisymbol symbol;
};

inline SingularityReport classify_equation(const OdeSpec& spec) {
  SingularityReport rep;
  for (const Rational& r : spec.singular_roots())
    rep.points.push_back(classify_point(spec, Point::finite(r)));
  if (is_singular(spec, Point::infinity()))
    rep.points.push_back(classify_point(spec, Point::infinity()));
  std::vector<Rational> ranks;
  ranks.reserve(rep.points.size());
  for (const auto& p : rep.points) ranks.push_back(p.srank);
  rep.symbol = make_symbol(std::move(ranks));
  return rep;
}

inline SMultisymbol smultisymbol(const OdeSpec& spec) { return classify_equation(spec).symbol; }

/// Verdict on a single confluence step.
struct ConfluenceVerdict {
  enum class Kind { Strong, Weak };
  SMultisymbol before, after;
  std::pair<Rational, Rational> merged_ranks;
  Rational new_rank;
  Kind kind;

  bool strong() const { return kind == Kind::Strong; }
};

/// Types a confluence: removing the two merged ranks from `before` and adding
/// one new rank must reproduce `after` exactly; the confluence is strong when
/// the new rank equals the sum of the merged ones.
inline ConfluenceVerdict confluence_type(const SMultisymbol& before,
                                         std::pair<Rational, Rational> merged,
                                         const SMultisymbol& after) {
  if (after.ranks.size() + 1 != before.ranks.size())
    throw InconsistentSymbolsError("after-symbol must have exactly one fewer rank");
  std::vector<Rational> rest = before.ranks;
  for (const Rational& m : {merged.first, merged.second}) {
    auto it = std::find(rest.begin(), rest.end(), m);
    if (it == rest.end())
      throw InconsistentSymbolsError("merged rank " + to_string(m) + " not present in before-symbol");
    rest.erase(it);
  }
  // after \ rest must be exactly one element, rest \ after empty
  std::vector<Rational> extra = after.ranks;
  for (const Rational& r : rest) {
    auto it = std::find(extra.begin(), extra.end(), r);
    if (it == extra.end())
      throw InconsistentSymbolsError("surviving rank " + to_string(r) + " missing from after-symbol");
    extra.erase(it);
  }
  if (extra.size() != 1)
    throw InconsistentSymbolsError("after-symbol does not add exactly one new rank");
  Rational new_rank = extra.front();
  Rational mx = std::max(merged.first, merged.second);
  if (!(new_rank > mx))
    throw InconsistentSymbolsError("new rank " + to_string(new_rank) +
                                   " does not exceed the merged ranks");
  ConfluenceVerdict v;
  v.before = before;
  v.after = after;
  v.merged_ranks = merged;
  v.new_rank = new_rank;
  v.kind = (new_rank == merged.first + merged.second) ? ConfluenceVerdict::Kind::Strong
                                                      : ConfluenceVerdict::Kind::Weak;
  return v;
}

}  // namespace confluentia
