// Fixed-point localization of the Riemann-Roch character, its splitting
// into contributions of the critical strata, induction to G, and the
// positivity, rigidity and rank-one checks built on top of it.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqrr/characters.hpp"
#include "eqrr/geometry.hpp"
#include "eqrr/induction.hpp"

namespace eqrr {

enum class VerificationStatus { kPass, kFail, kComputedUnverified };

inline const char* to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::kPass: return "pass";
    case VerificationStatus::kFail: return "fail";
    case VerificationStatus::kComputedUnverified: return "computed-unverified";
  }
  return "?";
}

struct VerificationRecord {
  std::string identity;
  std::string window;
  VerificationStatus status = VerificationStatus::kPass;
  std::optional<WeightVector> first_discrepancy;
  std::string detail;

  bool passed() const { return status != VerificationStatus::kFail; }
};

namespace detail {

inline LaurentElement fiber_character(const FixedPointDatum& p, const std::string& bundle) {
  LaurentElement x;
  for (const auto& a : p.fibers(bundle)) x.add_term(a, 1);
  return x;
}

inline std::int64_t min_level(const LaurentElement& x, const Polarization& pol) {
  std::int64_t lo = 0;
  bool first = true;
  for (const auto& [a, c] : x.terms()) {
    const auto l = pol.level(a);
    if (first || l < lo) lo = l;
    first = false;
  }
  return lo;
}

// First weight where two torus characters differ, in canonical order.
inline std::optional<WeightVector> first_difference(const LaurentElement& x, const LaurentElement& y) {
  const LaurentElement d = x - y;
  if (d.is_zero()) return std::nullopt;
  return d.terms().begin()->first;
}

inline std::optional<WeightVector> first_difference(const GCharacter& x, const GCharacter& y) {
  std::map<WeightVector, Integer> d = x.mults();
  for (const auto& [l, m] : y.mults()) {
    d[l] -= m;
    if (d[l] == 0) d.erase(l);
  }
  if (d.empty()) return std::nullopt;
  return d.begin()->first;
}

}  // namespace detail

/// (sum over fibre weights xi of h^xi) * polarized inverse of the tangent
/// weights, exact up to the cutoff.
inline PolarizedSeries point_contribution(const FixedPointDatum& p, const std::string& bundle,
                                          const Polarization& pol, std::int64_t cutoff) {
  const LaurentElement fib = detail::fiber_character(p, bundle);
  try {
    if (fib.is_zero()) {
      return PolarizedSeries(pol, cutoff, polarized_floor(p.tangent, pol));
    }
    const std::int64_t lo = detail::min_level(fib, pol);
    return (fib * polarized_inverse(p.tangent, pol, cutoff - lo)).truncated(cutoff);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOrthogonalWeight)
      throw Error(e.code(), std::string(e.what()) + " at point " + p.id);
    throw;
  }
}

/// A priori bound on the levels of the (finite) Riemann-Roch character: each
/// point contributes only at levels <= max fibre level minus the sum of the
/// absolute values of the negative tangent levels, as seen by expanding in
/// the opposite direction.
inline std::int64_t certified_bound(const ManifoldSpec& spec, const std::string& bundle,
                                    const Polarization& pol) {
  std::int64_t u = 0;
  bool first = true;
  for (const auto& p : spec.points) {
    const auto& f = p.fibers(bundle);
    if (f.empty()) continue;
    std::int64_t top = pol.level(f.front());
    for (const auto& a : f) top = std::max(top, pol.level(a));
    for (const auto& a : p.tangent) {
      const auto l = pol.level(a);
      if (l == 0)
        throw Error(ErrorCode::kOrthogonalWeight,
                    "tangent weight " + a.str() + " at point " + p.id + " is orthogonal to " +
                        pol.direction().str());
      if (l < 0) top += l;
    }
    if (first || top > u) u = top;
    first = false;
  }
  return u;
}

/// The torus character of RR(M, E), summed over fixed points.
inline LaurentElement rr_character(const ManifoldSpec& spec, const std::string& bundle,
                                   const WeightVector& gamma, std::int64_t cutoff) {
  spec.require_bundle(bundle);
  spec.datum.check(gamma);
  const Polarization pol(gamma, spec.datum);
  const std::int64_t u = certified_bound(spec, bundle, pol);
  if (cutoff < u)
    throw Error(ErrorCode::kTailNotCancelled,
                "cutoff " + std::to_string(cutoff) + " is below the certified support bound " +
                    std::to_string(u) + " in direction " + gamma.str());
  // Canonical point order keeps the reduction deterministic.
  LaurentElement total;
  for (const auto& p : spec.points) total += point_contribution(p, bundle, pol, cutoff).terms();
  LaurentElement result;
  std::optional<std::int64_t> tail;
  for (const auto& [a, c] : total.terms()) {
    const auto l = pol.level(a);
    if (l > u) {
      if (!tail || l > *tail) tail = l;
    } else {
      result.add_term(a, c);
    }
  }
  if (tail)
    throw Error(ErrorCode::kTailNotCancelled,
                "non-cancelled level " + std::to_string(*tail) + " above bound " + std::to_string(u));
  if (auto bad = weyl_asymmetry(result, spec.datum))
    throw Error(ErrorCode::kNotWeylInvariant,
                "character is not invariant at " + bad->first.str() + " under " +
                    bad->second.word_str());
  return result;
}

/// rr_character with a cutoff large enough to be certified.
inline LaurentElement rr_character_auto(const ManifoldSpec& spec, const std::string& bundle,
                                        const WeightVector& gamma) {
  const Polarization pol(gamma, spec.datum);
  return rr_character(spec, bundle, gamma, std::max<std::int64_t>(0, certified_bound(spec, bundle, pol)));
}

struct LocalizedCharacter {
  RationalVector beta;
  WeightVector direction;  // effective integer direction of the series
  std::optional<WeightVector> tiebreak;
  PolarizedSeries series;
  std::vector<std::string> provenance;
};

/// Direction polarizing every tangent weight of the stratum like beta, with
/// ties <alpha, beta> = 0 broken by the sign of <alpha, tiebreak>.
inline WeightVector effective_direction(const ManifoldSpec& spec, const std::vector<std::size_t>& pts,
                                        const RationalVector& beta,
                                        const std::optional<WeightVector>& tiebreak) {
  const WeightVector db = primitive_direction(beta);
  std::int64_t spread = 0;
  bool tie = false;
  for (auto i : pts)
    for (const auto& a : spec.points[i].tangent) {
      if (spec.datum.pair(a, db) == 0) {
        if (!tiebreak)
          throw Error(ErrorCode::kOrthogonalWeight,
                      "tangent weight " + a.str() + " at point " + spec.points[i].id +
                          " is orthogonal to beta = " + to_string(beta) + " and no tie-break is given");
        if (spec.datum.pair(a, *tiebreak) == 0)
          throw Error(ErrorCode::kOrthogonalWeight,
                      "tie-break " + tiebreak->str() + " is orthogonal to tangent weight " + a.str() +
                          " at point " + spec.points[i].id);
        tie = true;
      }
      if (tiebreak) spread = std::max<std::int64_t>(spread, std::abs(spec.datum.pair(a, *tiebreak)));
    }
  if (!tie) return db;
  return (spread + 1) * db + *tiebreak;
}

/// RR_beta over the torus: the polarized contributions of the fixed points
/// whose moment is exactly beta.
inline LocalizedCharacter rr_localized(const ManifoldSpec& spec, const std::string& bundle,
                                       const RationalVector& beta,
                                       const std::optional<WeightVector>& tiebreak,
                                       std::int64_t cutoff) {
  spec.require_bundle(bundle);
  if (beta.size() != spec.rank()) throw Error(ErrorCode::kRankMismatch, "beta " + to_string(beta));
  if (is_zero(beta))
    throw Error(ErrorCode::kEmptyStratum, "the zero stratum is computed by rr_localized_zero");
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < spec.points.size(); ++i)
    if (spec.points[i].moment == beta) pts.push_back(i);
  if (pts.empty()) throw Error(ErrorCode::kEmptyStratum, "no fixed point has moment " + to_string(beta));
  if (tiebreak) spec.datum.check(*tiebreak);

  const WeightVector dir = effective_direction(spec, pts, beta, tiebreak);
  const Polarization pol(dir, spec.datum);
  PolarizedSeries s(pol, cutoff, 0);
  bool first = true;
  LocalizedCharacter out{beta, dir, tiebreak, {}, {}};
  for (auto i : pts) {
    PolarizedSeries c = point_contribution(spec.points[i], bundle, pol, cutoff);
    s = first ? c : s + c;
    first = false;
    out.provenance.push_back(spec.points[i].id);
  }
  out.series = s;
  return out;
}

/// Nonzero moment values in canonical order.
inline std::vector<RationalVector> nonzero_moments(const ManifoldSpec& spec) {
  std::set<RationalVector> s;
  for (const auto& p : spec.points)
    if (!is_zero(p.moment)) s.insert(p.moment);
  return {s.begin(), s.end()};
}

struct Decomposition {
  LaurentElement rr;
  std::map<RationalVector, LocalizedCharacter> strata;
  WindowedElement rr0;
  VerificationRecord identity;
};

/// RR_0 = RR - sum of the RR_beta, on the window where every term is exact.
inline WindowedElement rr_localized_zero(const ManifoldSpec& spec, const std::string& bundle,
                                         const LaurentElement& rr,
                                         const std::map<RationalVector, LocalizedCharacter>& strata) {
  if (!spec.zero_regular)
    throw Error(ErrorCode::kInvalidArgument, "RR_0 needs 0 to be a regular value (zero_regular)");
  (void)bundle;
  WindowedElement r{rr, ExactWindow(spec.datum.gram())};
  for (const auto& [b, loc] : strata) r = r - WindowedElement::of(loc.series);
  return r;
}

inline WindowedElement rr_localized_zero(const ManifoldSpec& spec, const std::string& bundle,
                                         const WeightVector& gamma,
                                         const std::optional<WeightVector>& tiebreak,
                                         std::int64_t cutoff) {
  std::map<RationalVector, LocalizedCharacter> strata;
  for (const auto& b : nonzero_moments(spec))
    strata.emplace(b, rr_localized(spec, bundle, b, tiebreak, cutoff));
  return rr_localized_zero(spec, bundle, rr_character_auto(spec, bundle, gamma), strata);
}

/// Full decomposition.  The identity RR = RR_0 + sum RR_beta is checked
/// against RR recomputed in the opposite direction -gamma, so that it does
/// not hold by construction.
inline Decomposition decompose(const ManifoldSpec& spec, const std::string& bundle,
                               const WeightVector& gamma, const std::optional<WeightVector>& tiebreak,
                               std::int64_t cutoff) {
  Decomposition d;
  d.rr = rr_character_auto(spec, bundle, gamma);
  for (const auto& b : nonzero_moments(spec))
    d.strata.emplace(b, rr_localized(spec, bundle, b, tiebreak, cutoff));
  d.rr0 = rr_localized_zero(spec, bundle, d.rr, d.strata);

  WindowedElement sum = d.rr0;
  for (const auto& [b, loc] : d.strata) sum = sum + WindowedElement::of(loc.series);
  const LaurentElement other = rr_character_auto(spec, bundle, -gamma);
  WindowedElement check{{}, sum.window};
  for (const auto& [a, c] : other.terms())
    if (sum.window.contains(a)) check.terms.add_term(a, c);
  d.identity.identity = "RR = RR_0 + sum RR_beta";
  d.identity.window = sum.window.str();
  d.identity.first_discrepancy = detail::first_difference(sum.terms, check.terms);
  d.identity.status = d.identity.first_discrepancy ? VerificationStatus::kFail : VerificationStatus::kPass;
  return d;
}

/// sum over the W-orbit of beta of Hol(RR_beta').
inline GCharacter induce_localized(const std::vector<LocalizedCharacter>& family, const RootDatum& d,
                                   const RationalVector& beta) {
  auto [dom, w] = dominant_conjugate(beta, d);
  std::map<RationalVector, const LocalizedCharacter*> by;
  for (const auto& l : family) by[l.beta] = &l;
  std::optional<GCharacter> out;
  for (const auto& b : weyl_orbit(dom, d)) {
    auto it = by.find(b);
    if (it == by.end())
      throw Error(ErrorCode::kIncompleteOrbit, "orbit member " + to_string(b) + " of " +
                                                   to_string(dom) + " is missing");
    GCharacter g = hol(it->second->series, d);
    out = out ? *out + g : g;
  }
  return *out;
}

struct PositivityCertificate {
  RationalVector beta;
  Rational eta;
  bool strictly_positive = false;
  Rational theta_beta;                 // <theta, beta>
  std::optional<std::int64_t> min_power;  // least k with k*eta > <theta, beta>
  bool holds = false;                  // eta > <theta, beta> for the bundle itself
};

inline PositivityCertificate positivity_certificate(const ManifoldSpec& spec, const std::string& bundle,
                                                    const RationalVector& beta) {
  spec.require_bundle(bundle);
  if (beta.size() != spec.rank() || is_zero(beta))
    throw Error(ErrorCode::kEmptyStratum, "beta must be a nonzero moment value");
  PositivityCertificate c;
  c.beta = beta;
  bool any = false;
  for (const auto& p : spec.points) {
    if (p.moment != beta) continue;
    for (const auto& xi : p.fibers(bundle)) {
      const Rational v = spec.datum.pair(beta, xi);
      if (!any || v < c.eta) c.eta = v;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::kEmptyStratum, "no fibre weight over moment " + to_string(beta));
  c.strictly_positive = c.eta > 0;
  c.theta_beta = spec.datum.pair(beta, spec.datum.theta());
  if (c.strictly_positive) {
    const Rational q = c.theta_beta / c.eta;
    Integer k = numerator(q) / denominator(q);  // floor for q >= 0
    if (q < 0) k = 0;
    c.min_power = std::max<std::int64_t>(1, checked_int64(k + 1, "power"));
    c.holds = c.eta > c.theta_beta;
  }
  return c;
}

/// Every term a of the series satisfies <a, beta> >= eta.
inline bool multiplicity_support_check(const PolarizedSeries& s, const RationalVector& beta,
                                       const Rational& eta, const RootDatum& d) {
  for (const auto& [a, c] : s.terms().terms())
    if (d.pair(beta, a) < eta) return false;
  return true;
}

inline bool multiplicity_support_check(const GCharacter& g, const RationalVector& beta, const Rational& eta) {
  for (const auto& [l, m] : g.mults())
    if (g.datum().pair(beta, l) < eta) return false;
  return true;
}

struct RigidityReport {
  bool rigid = false;
  Integer constant = 0;
  VerificationRecord check;
};

inline RigidityReport rigidity_check(const ManifoldSpec& spec, const std::string& bundle,
                                     const WeightVector& gamma) {
  spec.require_bundle(bundle);
  RigidityReport r;
  r.rigid = true;
  for (const auto& p : spec.points)
    for (const auto& a : p.fibers(bundle))
      if (!a.is_zero()) r.rigid = false;
  r.check.identity = "rigidity";
  r.check.window = "all";
  if (!r.rigid) {
    r.check.status = VerificationStatus::kComputedUnverified;
    r.check.detail = "bundle is not rigid";
    return r;
  }
  const Polarization pol(gamma, spec.datum);
  for (const auto& p : spec.points) {
    bool all_negative = true;
    for (const auto& a : p.tangent) {
      const auto l = pol.level(a);
      if (l == 0)
        throw Error(ErrorCode::kOrthogonalWeight, "tangent weight " + a.str() + " at point " + p.id);
      if (l > 0) all_negative = false;
    }
    if (all_negative) r.constant += static_cast<std::int64_t>(p.fibers(bundle).size());
  }
  const LaurentElement rr = rr_character_auto(spec, bundle, gamma);
  const LaurentElement expected = r.constant * LaurentElement::one(spec.rank());
  r.check.first_discrepancy = detail::first_difference(rr, expected);
  r.check.status = r.check.first_discrepancy ? VerificationStatus::kFail : VerificationStatus::kPass;
  r.check.detail = "constant " + r.constant.str();
  return r;
}

struct ThetaReport {
  PolarizedSeries theta;
  GCharacter total;    // RR^G from the finite character
  GCharacter zero;     // Hol(RR_0)
  GCharacter induced;  // Hol(theta * (1 - h^{-2}))
  VerificationRecord identity;
  bool high_support = false;  // every theta term h^n has n >= 3
  bool induced_has_no_trivial = false;
};

inline bool is_su2(const RootDatum& d) { return d.same_as(presets::su2()); }

/// Rank-one specialization: theta is the sum of the positive-moment point
/// contributions, polarized by +1, and RR^G = Hol(RR_0) + Hol(theta*(1-h^{-2})).
inline ThetaReport su2_theta(const ManifoldSpec& spec, const std::string& bundle, std::int64_t cutoff) {
  if (!is_su2(spec.datum)) throw Error(ErrorCode::kNotSU2, spec.datum.describe());
  spec.require_bundle(bundle);
  const Polarization pol(WeightVector{1}, spec.datum);
  PolarizedSeries theta(pol, cutoff, 0);
  bool first = true;
  for (const auto& p : spec.points) {
    if (p.moment[0] <= 0) continue;
    auto c = point_contribution(p, bundle, pol, cutoff);
    theta = first ? c : theta + c;
    first = false;
  }
  const LaurentElement rr = rr_character_auto(spec, bundle, WeightVector{1});
  std::map<RationalVector, LocalizedCharacter> strata;
  for (const auto& b : nonzero_moments(spec)) strata.emplace(b, rr_localized(spec, bundle, b, std::nullopt, cutoff));
  const WindowedElement rr0 = rr_localized_zero(spec, bundle, rr, strata);

  const LaurentElement factor = LaurentElement::one(1) - LaurentElement::monomial(WeightVector{-2});
  const PolarizedSeries prod = factor * theta;

  ThetaReport r{theta, decompose_invariant(rr, spec.datum), hol(rr0, spec.datum),
                hol(prod, spec.datum), {}, false, false};
  const GCharacter rhs = r.zero + r.induced;
  const GCharacter lhs = r.total.restricted_to(rhs.window());
  r.identity.identity = "RR = Hol(RR_0) + Hol(theta*(1-h^-2))";
  r.identity.window = rhs.window().str();
  r.identity.first_discrepancy = detail::first_difference(lhs, rhs);
  r.identity.status = r.identity.first_discrepancy ? VerificationStatus::kFail : VerificationStatus::kPass;

  r.high_support = true;
  for (const auto& [a, c] : theta.terms().terms())
    if (a[0] < 3) r.high_support = false;
  r.induced_has_no_trivial = invariant_part(r.induced) == 0;
  return r;
}

}  // namespace eqrr

namespace eqrr {

/// Up to `count` generic integer directions (pairing nonzero with every
/// tangent weight), by increasing max-norm and then canonical order.
/// Primitive vectors come first; multiples fill up when there are too few
/// rays, as in rank one.
inline std::vector<WeightVector> generic_directions(const ManifoldSpec& spec, std::size_t count,
                                                    std::int64_t max_norm = 6) {
  std::vector<WeightVector> out;
  const std::size_t r = spec.rank();
  for (bool primitive : {true, false}) {
    for (std::int64_t n = 1; n <= max_norm && out.size() < count; ++n) {
      std::vector<std::int64_t> c(r, -n);
      for (;;) {
        std::int64_t top = 0, g = 0;
        for (auto x : c) {
          top = std::max<std::int64_t>(top, std::abs(x));
          g = std::gcd(g, std::abs(x));
        }
        if (top == n && (g == 1) == primitive) {
          WeightVector v(c);
          bool ok = true;
          for (const auto& p : spec.points)
            for (const auto& a : p.tangent)
              if (spec.datum.pair(a, v) == 0) ok = false;
          if (ok) {
            out.push_back(v);
            if (out.size() == count) break;
          }
        }
        std::size_t i = r;
        while (i > 0 && c[i - 1] == n) c[--i] = -n;
        if (i == 0) break;
        ++c[i - 1];
      }
    }
  }
  return out;
}

}  // namespace eqrr
