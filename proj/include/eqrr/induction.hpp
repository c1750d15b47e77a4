// Characters of G: the Weyl character formula, holomorphic induction from
// the maximal torus, and decomposition of Weyl-invariant torus characters.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqrr/characters.hpp"
#include "eqrr/lattice_weyl.hpp"

namespace eqrr {

/// Multiplicities of irreducible characters chi_lambda, lambda dominant.
/// With a bounded window only the lambda inside it are known, and only
/// those are stored.
class GCharacter {
 public:
  using Mults = std::map<WeightVector, Integer>;

  explicit GCharacter(RootDatum datum) : datum_(std::move(datum)), window_(datum_.gram()) {}
  GCharacter(RootDatum datum, ExactWindow window)
      : datum_(std::move(datum)), window_(std::move(window)) {}

  static GCharacter irreducible(const RootDatum& d, const WeightVector& lambda,
                                const Integer& m = 1) {
    GCharacter g(d);
    g.add(lambda, m);
    return g;
  }

  const RootDatum& datum() const { return datum_; }
  const Mults& mults() const { return mults_; }
  const ExactWindow& window() const { return window_; }
  bool is_zero() const { return mults_.empty(); }

  void add(const WeightVector& lambda, const Integer& m) {
    datum_.check(lambda);
    if (!datum_.is_dominant(lambda))
      throw Error(ErrorCode::kNotDominant, "weight " + lambda.str() + " is not dominant");
    if (m == 0 || !window_.contains(lambda)) return;
    auto [it, inserted] = mults_.emplace(lambda, m);
    if (!inserted) {
      it->second += m;
      if (it->second == 0) mults_.erase(it);
    }
  }

  Integer multiplicity(const WeightVector& lambda) const {
    if (!window_.contains(lambda))
      throw Error(ErrorCode::kOutsideWindow, "chi" + lambda.str() + " outside " + window_.str());
    auto it = mults_.find(lambda);
    return it == mults_.end() ? Integer(0) : it->second;
  }

  friend GCharacter operator+(const GCharacter& x, const GCharacter& y) {
    check_same(x, y);
    GCharacter r(x.datum_, x.window_.intersect(y.window_));
    for (const auto& [l, m] : x.mults_) r.add(l, m);
    for (const auto& [l, m] : y.mults_) r.add(l, m);
    return r;
  }
  friend GCharacter operator-(const GCharacter& x) {
    GCharacter r = x;
    for (auto& [l, m] : r.mults_) m = -m;
    return r;
  }
  friend GCharacter operator-(const GCharacter& x, const GCharacter& y) { return x + (-y); }
  friend GCharacter operator*(const Integer& k, const GCharacter& x) {
    GCharacter r(x.datum_, x.window_);
    for (const auto& [l, m] : x.mults_) r.add(l, k * m);
    return r;
  }

  /// Same multiplicities and compatible data; windows are not compared.
  bool same_mults(const GCharacter& o) const { return datum_.same_as(o.datum_) && mults_ == o.mults_; }

  /// Drop everything outside a smaller window.
  GCharacter restricted_to(const ExactWindow& w) const {
    GCharacter r(datum_, window_.intersect(w));
    for (const auto& [l, m] : mults_) r.add(l, m);
    return r;
  }

  std::string str() const {
    std::string s;
    for (const auto& [l, m] : mults_) s += m.str() + "*chi" + l.str() + "\n";
    return s;
  }

 private:
  static void check_same(const GCharacter& x, const GCharacter& y) {
    if (!x.datum_.same_as(y.datum_))
      throw Error(ErrorCode::kDatumMismatch, x.datum_.describe() + " vs " + y.datum_.describe());
  }

  RootDatum datum_;
  ExactWindow window_;
  Mults mults_;
};

/// prod over positive roots of (1 - h^{-alpha}), the normalized Weyl denominator.
inline LaurentElement weyl_denominator(const RootDatum& d) {
  return wedge_dual(d.positive_roots(), d.rank());
}

namespace detail {

// Monomial order for the division: level against theta, then lexicographic.
struct ThetaOrder {
  const RootDatum* d;
  bool operator()(const WeightVector& a, const WeightVector& b) const {
    const auto la = d->pair(a, d->theta()), lb = d->pair(b, d->theta());
    if (la != lb) return la < lb;
    return a < b;
  }
};

}  // namespace detail

/// chi_lambda restricted to the torus, by exact division of the alternating
/// sum over W of h^{w o lambda} by the Weyl denominator.
inline LaurentElement weyl_character(const WeightVector& lambda, const RootDatum& d) {
  d.check(lambda);
  if (!d.is_dominant(lambda))
    throw Error(ErrorCode::kNotDominant, "weight " + lambda.str() + " is not dominant");
  if (d.is_torus()) return LaurentElement::monomial(lambda);

  detail::ThetaOrder order{&d};
  std::map<WeightVector, Integer, detail::ThetaOrder> rem(order);
  for (const auto& w : d.weyl()) {
    auto [it, ins] = rem.emplace(affine_action(w, lambda, d), Integer(w.sign));
    if (!ins) {
      it->second += w.sign;
      if (it->second == 0) rem.erase(it);
    }
  }
  const LaurentElement den = weyl_denominator(d);
  // Lowest possible quotient level: lowest numerator level minus the lowest
  // denominator level (-<theta,theta>).
  const std::int64_t lowest = d.pair(rem.begin()->first, d.theta()) + d.pair(d.theta(), d.theta());

  LaurentElement q;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const WeightVector m = top->first;
    const Integer c = top->second;
    if (d.pair(m, d.theta()) < lowest)
      throw Error(ErrorCode::kInvalidArgument, "Weyl character division left a remainder");
    q.add_term(m, c);
    for (const auto& [a, e] : den.terms()) {
      auto [it, ins] = rem.emplace(m + a, -c * e);
      if (!ins) {
        it->second -= c * e;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return q;
}

/// Weyl dimension formula: prod over positive roots of <lambda+rho,a>/<rho,a>.
inline Integer weyl_dimension(const WeightVector& lambda, const RootDatum& d) {
  Rational r = 1;
  const WeightVector v = 2 * lambda + d.theta();
  for (const auto& a : d.positive_roots()) r *= Rational(d.pair(v, a), d.pair(d.theta(), a));
  return numerator(r);
}

inline GCharacter hol(const LaurentElement& x, const RootDatum& d) {
  GCharacter g(d);
  for (const auto& [a, c] : x.terms()) {
    auto wit = dominant_witness(a, d);
    if (wit) g.add(wit->mu, c * wit->w.sign);
  }
  return g;
}

/// Image of a window on torus weights: a dominant mu is exposed when every
/// affine preimage w^{-1} o mu lies in every half-space.
inline ExactWindow induced_window(const ExactWindow& window, const RootDatum& d) {
  ExactWindow out(d.gram());
  for (const auto& h : window.half_spaces()) {
    auto [dplus, w] = dominant_conjugate(h.direction, d);
    // <rho, d+ - d> = <theta, d+ - d>/2, rounded against us.
    const std::int64_t twice = d.pair(d.theta(), dplus - h.direction);
    const std::int64_t bound = h.bound - (twice + 1) / 2;
    if (bound < 0)
      throw Error(ErrorCode::kCutoffNotInduceable,
                  "cutoff " + std::to_string(h.bound) + " in direction " + h.direction.str() +
                      " leaves no exact multiplicity after induction (needs >= " +
                      std::to_string((twice + 1) / 2) + ")");
    out.add({dplus, bound});
  }
  return out;
}

inline GCharacter hol(const WindowedElement& x, const RootDatum& d) {
  GCharacter g(d, induced_window(x.window, d));
  for (const auto& [a, c] : x.terms.terms()) {
    auto wit = dominant_witness(a, d);
    if (wit) g.add(wit->mu, c * wit->w.sign);
  }
  return g;
}

inline GCharacter hol(const PolarizedSeries& x, const RootDatum& d) {
  return hol(WindowedElement::of(x), d);
}

inline LaurentElement restrict(const GCharacter& chi) {
  LaurentElement r;
  for (const auto& [l, m] : chi.mults()) r += m * weyl_character(l, chi.datum());
  return r;
}

inline Integer invariant_part(const GCharacter& chi) {
  return chi.multiplicity(WeightVector::zero(chi.datum().rank()));
}

/// First weight a with c(w a) != c(a), if any.
inline std::optional<std::pair<WeightVector, WeylElement>> weyl_asymmetry(const LaurentElement& c,
                                                                          const RootDatum& d) {
  for (const auto& w : d.weyl())
    for (const auto& [a, m] : c.terms())
      if (c.coefficient(w.apply(a)) != m) return std::make_pair(a, w);
  return std::nullopt;
}

inline GCharacter decompose_invariant(const LaurentElement& c, const RootDatum& d) {
  if (auto bad = weyl_asymmetry(c, d))
    throw Error(ErrorCode::kNotWeylInvariant,
                "coefficient of " + bad->first.str() + " differs from its image under " +
                    bad->second.word_str());
  GCharacter g(d);
  const LaurentElement prod = c * weyl_denominator(d);
  for (const auto& [a, m] : prod.terms())
    if (d.is_dominant(a)) g.add(a, m);
  return g;
}

inline bool is_subdatum(const RootDatum& sub, const RootDatum& d) {
  if (sub.rank() != d.rank() || !(sub.gram() == d.gram())) return false;
  for (const auto& a : sub.positive_roots())
    if (std::find(d.positive_roots().begin(), d.positive_roots().end(), a) ==
        d.positive_roots().end())
      return false;
  return true;
}

// A truncated character of the Levi factor does not determine a window on
// torus weights, so induction through it needs finite input.
inline void require_finite(const GCharacter& x) {
  if (!x.window().unbounded())
    throw Error(ErrorCode::kCutoffNotInduceable, "truncated input on " + x.window().str());
}

/// Induction from a Levi subgroup: the map with Hol_H^G = Hol_L^G o Hol_H^L,
/// i.e. hol over G of the torus restriction.
inline GCharacter hol_via_subgroup(const GCharacter& x, const RootDatum& d) {
  if (!is_subdatum(x.datum(), d))
    throw Error(ErrorCode::kNotSubDatum, x.datum().describe() + " is not inside " + d.describe());
  require_finite(x);
  return hol(restrict(x), d);
}

/// Positive roots of G that are not roots of the Levi sub-datum.
inline std::vector<WeightVector> complement_roots(const RootDatum& sub, const RootDatum& d) {
  std::vector<WeightVector> out;
  for (const auto& a : d.positive_roots())
    if (std::find(sub.positive_roots().begin(), sub.positive_roots().end(), a) ==
        sub.positive_roots().end())
      out.push_back(a);
  return out;
}

/// Hol_L^G(v * wedge_dual(g/l)), the form in which localized characters of
/// the Levi subgroup induce up to G.
inline GCharacter hol_via_subgroup_with_wedge(const GCharacter& x, const RootDatum& d) {
  if (!is_subdatum(x.datum(), d))
    throw Error(ErrorCode::kNotSubDatum, x.datum().describe() + " is not inside " + d.describe());
  require_finite(x);
  return hol(restrict(x) * wedge_dual(complement_roots(x.datum(), d), d.rank()), d);
}

}  // namespace eqrr
