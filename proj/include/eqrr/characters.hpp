// Characters of the torus: finite Laurent elements h^a with integer
// coefficients, and slab-truncated polarized series.
//
// A PolarizedSeries stores an infinite sum by its terms whose level
// <a, direction> lies in [floor, cutoff].  Every stored coefficient is the
// exact coefficient of the infinite series; the arithmetic below shrinks the
// cutoff whenever a product would otherwise need terms beyond it.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqrr/core.hpp"
#include "eqrr/lattice_weyl.hpp"

namespace eqrr {

class LaurentElement {
 public:
  using Terms = std::map<WeightVector, Integer>;

  LaurentElement() = default;

  static LaurentElement monomial(const WeightVector& a, const Integer& c = 1) {
    LaurentElement x;
    x.add_term(a, c);
    return x;
  }
  static LaurentElement one(std::size_t rank) { return monomial(WeightVector::zero(rank)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const WeightVector& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const WeightVector& a, const Integer& c) {
    if (c == 0) return;
    if (!terms_.empty() && terms_.begin()->first.rank() != a.rank())
      throw Error(ErrorCode::kRankMismatch, "term " + a.str());
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentElement& operator+=(const LaurentElement& o) {
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  LaurentElement& operator-=(const LaurentElement& o) {
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  friend LaurentElement operator+(LaurentElement x, const LaurentElement& y) { return x += y; }
  friend LaurentElement operator-(LaurentElement x, const LaurentElement& y) { return x -= y; }
  friend LaurentElement operator-(LaurentElement x) {
    for (auto& [a, c] : x.terms_) c = -c;
    return x;
  }
  friend LaurentElement operator*(const Integer& k, LaurentElement x) {
    if (k == 0) return {};
    for (auto& [a, c] : x.terms_) c *= k;
    return x;
  }
  friend LaurentElement operator*(const LaurentElement& x, const LaurentElement& y) {
    LaurentElement r;
    for (const auto& [a, c] : x.terms_)
      for (const auto& [b, d] : y.terms_) r.add_term(a + b, c * d);
    return r;
  }

  /// Multiply by h^a.
  LaurentElement shifted(const WeightVector& a) const {
    LaurentElement r;
    for (const auto& [b, c] : terms_) r.terms_.emplace(a + b, c);
    return r;
  }

  friend bool operator==(const LaurentElement&, const LaurentElement&) = default;

  std::string str() const {
    std::string s;
    for (const auto& [a, c] : terms_) s += c.str() + "*h^" + a.str() + "\n";
    return s;
  }

 private:
  Terms terms_;
};

/// A polarization: the direction and the pairing used to grade weights by level.
class Polarization {
 public:
  Polarization() = default;
  Polarization(WeightVector direction, IntMatrix gram)
      : direction_(std::move(direction)), gram_(std::move(gram)) {
    if (gram_.size() != direction_.rank())
      throw Error(ErrorCode::kRankMismatch, "direction " + direction_.str());
    if (direction_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero direction");
    gd_.assign(direction_.rank(), 0);
    for (std::size_t i = 0; i < gd_.size(); ++i)
      for (std::size_t j = 0; j < gd_.size(); ++j) gd_[i] += gram_(i, j) * direction_[j];
  }
  Polarization(WeightVector direction, const RootDatum& d)
      : Polarization(std::move(direction), d.gram()) {}

  const WeightVector& direction() const { return direction_; }
  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return direction_.rank(); }

  std::int64_t level(const WeightVector& a) const {
    if (a.rank() != gd_.size())
      throw Error(ErrorCode::kRankMismatch, "weight " + a.str() + " against direction " +
                                                direction_.str());
    std::int64_t s = 0;
    for (std::size_t i = 0; i < gd_.size(); ++i) s += a[i] * gd_[i];
    return s;
  }

  friend bool operator==(const Polarization& a, const Polarization& b) {
    return a.direction_ == b.direction_ && a.gram_ == b.gram_;
  }

 private:
  WeightVector direction_;
  IntMatrix gram_;
  std::vector<std::int64_t> gd_;
};

class PolarizedSeries {
 public:
  PolarizedSeries() = default;
  PolarizedSeries(Polarization pol, std::int64_t cutoff, std::int64_t floor)
      : pol_(std::move(pol)), cutoff_(cutoff), floor_(floor) {}

  /// The finite element x viewed as a series; exact up to any cutoff.
  static PolarizedSeries from_laurent(const LaurentElement& x, Polarization pol,
                                      std::int64_t cutoff) {
    std::int64_t lo = 0;
    bool first = true;
    for (const auto& [a, c] : x.terms()) {
      const auto l = pol.level(a);
      if (first || l < lo) lo = l;
      first = false;
    }
    PolarizedSeries s(std::move(pol), cutoff, lo);
    for (const auto& [a, c] : x.terms()) s.add_term(a, c);
    return s;
  }

  const Polarization& polarization() const { return pol_; }
  const WeightVector& direction() const { return pol_.direction(); }
  std::int64_t cutoff() const { return cutoff_; }
  std::int64_t floor() const { return floor_; }
  const LaurentElement& terms() const { return terms_; }
  std::int64_t level(const WeightVector& a) const { return pol_.level(a); }

  Integer coefficient(const WeightVector& a) const {
    const auto l = level(a);
    if (l > cutoff_)
      throw Error(ErrorCode::kOutsideWindow, "level " + std::to_string(l) + " of " + a.str() +
                                                 " is above cutoff " + std::to_string(cutoff_));
    return terms_.coefficient(a);
  }

  /// Adds c*h^a if its level is inside the window; terms above the cutoff are
  /// dropped, terms below the floor are an invariant violation.
  void add_term(const WeightVector& a, const Integer& c) {
    const auto l = level(a);
    if (l > cutoff_) return;
    if (l < floor_)
      throw Error(ErrorCode::kInvalidArgument, "term " + a.str() + " below floor " +
                                                   std::to_string(floor_));
    terms_.add_term(a, c);
  }

  PolarizedSeries truncated(std::int64_t cutoff) const {
    PolarizedSeries s(pol_, std::min(cutoff, cutoff_), floor_);
    for (const auto& [a, c] : terms_.terms())
      if (level(a) <= s.cutoff_) s.terms_.add_term(a, c);
    return s;
  }

  PolarizedSeries operator-() const {
    PolarizedSeries s(pol_, cutoff_, floor_);
    s.terms_ = -terms_;
    return s;
  }

  friend PolarizedSeries operator+(const PolarizedSeries& x, const PolarizedSeries& y) {
    check_compatible(x, y);
    PolarizedSeries s(x.pol_, std::min(x.cutoff_, y.cutoff_), std::min(x.floor_, y.floor_));
    for (const auto& [a, c] : x.terms_.terms()) s.add_term(a, c);
    for (const auto& [a, c] : y.terms_.terms()) s.add_term(a, c);
    return s;
  }
  friend PolarizedSeries operator-(const PolarizedSeries& x, const PolarizedSeries& y) {
    return x + (-y);
  }

  friend PolarizedSeries operator*(const PolarizedSeries& x, const PolarizedSeries& y) {
    check_compatible(x, y);
    const std::int64_t cut = std::min(x.cutoff_ + y.floor_, y.cutoff_ + x.floor_);
    PolarizedSeries s(x.pol_, cut, x.floor_ + y.floor_);
    for (const auto& [a, c] : x.terms_.terms()) {
      const auto la = x.level(a);
      if (la + y.floor_ > cut) continue;
      for (const auto& [b, d] : y.terms_.terms())
        if (la + y.level(b) <= cut) s.terms_.add_term(a + b, c * d);
    }
    return s;
  }

  friend PolarizedSeries operator*(const LaurentElement& x, const PolarizedSeries& y) {
    return from_laurent(x, y.pol_, max_level(x, y.pol_) + y.cutoff_) * y;
  }

  std::string str() const { return terms_.str(); }

 private:
  static std::int64_t max_level(const LaurentElement& x, const Polarization& p) {
    std::int64_t hi = 0;
    bool first = true;
    for (const auto& [a, c] : x.terms()) {
      const auto l = p.level(a);
      if (first || l > hi) hi = l;
      first = false;
    }
    return hi;
  }

  static void check_compatible(const PolarizedSeries& x, const PolarizedSeries& y) {
    if (!(x.pol_ == y.pol_))
      throw Error(ErrorCode::kDirectionMismatch,
                  "directions " + x.direction().str() + " and " + y.direction().str());
  }

  Polarization pol_;
  std::int64_t cutoff_ = 0;
  std::int64_t floor_ = 0;
  LaurentElement terms_;
};

/// Expansion of 1/(1 - h^{-alpha}) polarized by the direction:
/// eps = +1 gives -sum_{k>=1} h^{k alpha}, eps = -1 gives sum_{k>=0} h^{-k alpha}.
inline PolarizedSeries geometric_expansion(const WeightVector& alpha, int eps,
                                           const Polarization& pol, std::int64_t cutoff) {
  const auto l = pol.level(alpha);
  if (l == 0)
    throw Error(ErrorCode::kOrthogonalWeight,
                "weight " + alpha.str() + " is orthogonal to " + pol.direction().str());
  if ((eps != 1 && eps != -1) || (l > 0) != (eps > 0))
    throw Error(ErrorCode::kSignMismatch, "eps = " + std::to_string(eps) + " but <" +
                                              alpha.str() + ",direction> = " + std::to_string(l));
  if (eps > 0) {
    PolarizedSeries s(pol, cutoff, l);
    WeightVector a = alpha;
    for (std::int64_t k = 1; k * l <= cutoff; ++k, a += alpha) s.add_term(a, -1);
    return s;
  }
  PolarizedSeries s(pol, cutoff, 0);
  WeightVector a = WeightVector::zero(alpha.rank());
  for (std::int64_t k = 0; -k * l <= cutoff; ++k, a -= alpha) s.add_term(a, 1);
  return s;
}

/// prod over the multiset of (1 - h^{-alpha}).
inline LaurentElement wedge_dual(const std::vector<WeightVector>& weights, std::size_t rank) {
  LaurentElement r = LaurentElement::one(rank);
  for (const auto& a : weights) r = r * (LaurentElement::one(rank) - LaurentElement::monomial(-a));
  return r;
}

inline LaurentElement wedge_dual(const std::vector<WeightVector>& weights) {
  if (weights.empty())
    throw Error(ErrorCode::kInvalidArgument, "rank of an empty weight list is unknown");
  return wedge_dual(weights, weights.front().rank());
}

/// Lowest level of the polarized inverse: sum of the positive levels.
inline std::int64_t polarized_floor(const std::vector<WeightVector>& weights,
                                    const Polarization& pol) {
  std::int64_t f = 0;
  for (const auto& a : weights) {
    const auto l = pol.level(a);
    if (l == 0)
      throw Error(ErrorCode::kOrthogonalWeight,
                  "weight " + a.str() + " is orthogonal to " + pol.direction().str());
    if (l > 0) f += l;
  }
  return f;
}

/// prod over the multiset of the expansion of 1/(1 - h^{-alpha}) with
/// eps = sign <alpha, direction>, exact up to the given cutoff.
inline PolarizedSeries polarized_inverse(const std::vector<WeightVector>& weights,
                                         const Polarization& pol, std::int64_t cutoff) {
  const std::int64_t total_floor = polarized_floor(weights, pol);
  PolarizedSeries r(pol, cutoff, 0);
  r.add_term(WeightVector::zero(pol.rank()), 1);
  for (const auto& a : weights) {
    const auto l = pol.level(a);
    const std::int64_t f = l > 0 ? l : 0;
    const std::int64_t ci = cutoff - (total_floor - f);
    r = r * geometric_expansion(a, l > 0 ? 1 : -1, pol, ci);
  }
  // The running cutoff never drops below the requested one; trim the excess.
  return r.truncated(cutoff);
}

}  // namespace eqrr

namespace eqrr {

/// {a : <a, direction> <= bound}
struct HalfSpace {
  WeightVector direction;
  std::int64_t bound = 0;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

/// Intersection of half-spaces on which a truncated character is exact.
/// The empty intersection means the character is finite and exact everywhere.
class ExactWindow {
 public:
  ExactWindow() = default;
  explicit ExactWindow(IntMatrix gram) : gram_(std::move(gram)) {}
  static ExactWindow of(const PolarizedSeries& s) {
    ExactWindow w(s.polarization().gram());
    w.add({s.direction(), s.cutoff()});
    return w;
  }

  const std::vector<HalfSpace>& half_spaces() const { return spaces_; }
  bool unbounded() const { return spaces_.empty(); }
  const IntMatrix& gram() const { return gram_; }

  void add(const HalfSpace& h) {
    if (gram_.size() == 0) gram_ = IntMatrix::identity(h.direction.rank());
    for (auto& s : spaces_)
      if (s.direction == h.direction) {
        s.bound = std::min(s.bound, h.bound);
        return;
      }
    spaces_.push_back(h);
  }

  ExactWindow intersect(const ExactWindow& o) const {
    if (unbounded()) return o;
    if (o.unbounded()) return *this;
    if (!(gram_ == o.gram_)) throw Error(ErrorCode::kDatumMismatch, "windows use different pairings");
    ExactWindow w = *this;
    for (const auto& h : o.spaces_) w.add(h);
    return w;
  }

  std::int64_t level(const WeightVector& a, const WeightVector& d) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < a.rank(); ++j) s += a[i] * gram_(i, j) * d[j];
    return s;
  }

  bool contains(const WeightVector& a) const {
    for (const auto& h : spaces_)
      if (level(a, h.direction) > h.bound) return false;
    return true;
  }

  std::string str() const {
    if (spaces_.empty()) return "all";
    std::string s;
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (i) s += " & ";
      s += "<a," + spaces_[i].direction.str() + "> <= " + std::to_string(spaces_[i].bound);
    }
    return s;
  }

 private:
  IntMatrix gram_;
  std::vector<HalfSpace> spaces_;
};

/// A torus character known exactly on a window; terms outside it are absent.
struct WindowedElement {
  LaurentElement terms;
  ExactWindow window;

  Integer coefficient(const WeightVector& a) const {
    if (!window.contains(a))
      throw Error(ErrorCode::kOutsideWindow, a.str() + " outside " + window.str());
    return terms.coefficient(a);
  }

  static WindowedElement of(const PolarizedSeries& s) {
    return {s.terms(), ExactWindow::of(s)};
  }

  /// Restrict both operands to the common window and combine.
  friend WindowedElement operator+(const WindowedElement& x, const WindowedElement& y) {
    WindowedElement r{{}, x.window.intersect(y.window)};
    for (const auto& [a, c] : x.terms.terms())
      if (r.window.contains(a)) r.terms.add_term(a, c);
    for (const auto& [a, c] : y.terms.terms())
      if (r.window.contains(a)) r.terms.add_term(a, c);
    return r;
  }
  friend WindowedElement operator-(const WindowedElement& x, const WindowedElement& y) {
    return x + WindowedElement{-y.terms, y.window};
  }
};

}  // namespace eqrr
