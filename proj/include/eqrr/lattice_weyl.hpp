// Root data on an integer weight lattice with a user supplied Gram pairing,
// Weyl group enumeration and the affine (rho-shifted) action.

#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqrr/core.hpp"

namespace eqrr {

inline constexpr std::size_t kDefaultWeylBound = 10000;

struct WeylElement {
  IntMatrix matrix;
  int sign = 1;
  int length = 0;
  std::vector<int> word;  // simple reflection indices, leftmost applied last

  WeightVector apply(const WeightVector& v) const { return matrix.apply(v); }
  RationalVector apply(const RationalVector& v) const { return matrix.apply(v); }

  std::string word_str() const {
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) s += '*';
      s += "s" + std::to_string(word[i] + 1);
    }
    return s;
  }
};

class RootDatum {
 public:
  std::size_t rank() const { return rank_; }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<WeightVector>& simple_roots() const { return simple_; }
  const std::vector<WeightVector>& positive_roots() const { return positive_; }
  const WeightVector& theta() const { return theta_; }
  // Only meaningful when rho_is_integral(); Levi sub-data may carry a
  // half-integral rho, in which case all rho-shifted work goes through theta.
  const WeightVector& rho() const {
    if (!rho_integral_) throw Error(ErrorCode::kNonIntegralRho, "rho of sub-datum");
    return rho_;
  }
  bool rho_is_integral() const { return rho_integral_; }
  bool is_torus() const { return simple_.empty(); }

  const std::vector<WeylElement>& weyl() const { return *weyl_; }
  const std::vector<IntMatrix>& simple_reflections() const { return reflections_; }

  std::int64_t pair(const WeightVector& a, const WeightVector& b) const {
    check(a);
    check(b);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) s += a[i] * gram_(i, j) * b[j];
    return s;
  }

  Rational pair(const RationalVector& a, const WeightVector& b) const {
    if (a.size() != rank_) throw Error(ErrorCode::kRankMismatch, "rational vector rank");
    check(b);
    Rational s = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      std::int64_t gb = 0;
      for (std::size_t j = 0; j < rank_; ++j) gb += gram_(i, j) * b[j];
      s += a[i] * gb;
    }
    return s;
  }

  Rational pair(const RationalVector& a, const RationalVector& b) const {
    if (a.size() != rank_ || b.size() != rank_)
      throw Error(ErrorCode::kRankMismatch, "rational vector rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) s += a[i] * gram_(i, j) * b[j];
    return s;
  }

  bool is_dominant(const WeightVector& v) const {
    for (const auto& a : simple_)
      if (pair(v, a) < 0) return false;
    return true;
  }
  bool is_dominant(const RationalVector& v) const {
    for (const auto& a : simple_)
      if (pair(v, a) < 0) return false;
    return true;
  }
  bool is_regular_dominant(const WeightVector& v) const {
    for (const auto& a : simple_)
      if (pair(v, a) <= 0) return false;
    return true;
  }

  bool same_as(const RootDatum& o) const {
    return rank_ == o.rank_ && gram_ == o.gram_ && simple_ == o.simple_;
  }

  void check(const WeightVector& v) const {
    if (v.rank() != rank_)
      throw Error(ErrorCode::kRankMismatch,
                  "weight " + v.str() + " has rank " + std::to_string(v.rank()) +
                      ", datum rank " + std::to_string(rank_));
  }

  std::string describe() const {
    std::string s = "rank " + std::to_string(rank_) + ", simple roots {";
    for (std::size_t i = 0; i < simple_.size(); ++i) s += (i ? "," : "") + simple_[i].str();
    return s + "}";
  }

 private:
  friend RootDatum build_root_datum_impl(std::size_t, const IntMatrix&,
                                         const std::vector<WeightVector>&, bool,
                                         std::size_t);

  std::size_t rank_ = 0;
  IntMatrix gram_;
  std::vector<WeightVector> simple_;
  std::vector<WeightVector> positive_;
  WeightVector rho_;
  WeightVector theta_;
  bool rho_integral_ = true;
  std::vector<IntMatrix> reflections_;
  std::shared_ptr<const std::vector<WeylElement>> weyl_;
};

namespace detail {

inline IntMatrix reflection_matrix(const IntMatrix& gram, const WeightVector& alpha) {
  const std::size_t r = gram.size();
  std::int64_t aa = 0;
  std::vector<std::int64_t> galpha(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) galpha[i] += gram(i, j) * alpha[j];
    aa += alpha[i] * galpha[i];
  }
  IntMatrix m = IntMatrix::identity(r);
  for (std::size_t j = 0; j < r; ++j) {
    // s(e_j) = e_j - (2<e_j,a>/<a,a>) a
    const std::int64_t num = 2 * galpha[j];
    if (num % aa != 0)
      throw Error(ErrorCode::kNonCrystallographic,
                  "2<e" + std::to_string(j + 1) + "," + alpha.str() + ">/<a,a> = " +
                      std::to_string(num) + "/" + std::to_string(aa));
    const std::int64_t c = num / aa;
    for (std::size_t i = 0; i < r; ++i) m(i, j) -= c * alpha[i];
  }
  return m;
}

inline std::vector<WeylElement> enumerate_weyl(const std::vector<IntMatrix>& refl,
                                               std::size_t rank, std::size_t bound) {
  std::vector<WeylElement> out;
  std::map<IntMatrix, std::size_t> seen;
  WeylElement id{IntMatrix::identity(rank), 1, 0, {}};
  seen.emplace(id.matrix, 0);
  out.push_back(id);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t i = 0; i < refl.size(); ++i) {
      IntMatrix m = refl[i] * out[head].matrix;
      if (seen.count(m)) continue;
      WeylElement w;
      w.matrix = m;
      w.length = out[head].length + 1;
      w.sign = -out[head].sign;
      w.word.push_back(static_cast<int>(i));
      w.word.insert(w.word.end(), out[head].word.begin(), out[head].word.end());
      seen.emplace(m, out.size());
      out.push_back(std::move(w));
      if (out.size() > bound)
        throw Error(ErrorCode::kGroupTooLarge,
                    "Weyl group order exceeds bound " + std::to_string(bound));
    }
  }
  return out;
}

}  // namespace detail

inline RootDatum build_root_datum_impl(std::size_t rank, const IntMatrix& gram,
                                       const std::vector<WeightVector>& simple_roots,
                                       bool require_integral_rho, std::size_t weyl_bound) {
  if (rank == 0) throw Error(ErrorCode::kInvalidArgument, "rank must be positive");
  if (gram.size() != rank) throw Error(ErrorCode::kRankMismatch, "gram size");
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      if (gram(i, j) != gram(j, i))
        throw Error(ErrorCode::kNotPositiveDefinite, "gram is not symmetric");
  for (std::size_t k = 1; k <= rank; ++k) {
    std::vector<std::int64_t> minor;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor.push_back(gram(i, j));
    if (IntMatrix(k, minor).determinant() <= 0)
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "leading minor " + std::to_string(k) + " is not positive");
  }

  RootDatum d;
  d.rank_ = rank;
  d.gram_ = gram;
  d.simple_ = simple_roots;
  for (const auto& a : simple_roots) {
    d.check(a);
    if (a.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero simple root");
  }
  if (simple_roots.size() > rank)
    throw Error(ErrorCode::kInvalidArgument, "more simple roots than the rank");
  {
    // Independence through the Gram determinant of the simple roots.
    const std::size_t s = simple_roots.size();
    std::vector<std::int64_t> g;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) g.push_back(d.pair(simple_roots[i], simple_roots[j]));
    if (s > 0 && IntMatrix(s, g).determinant() == 0)
      throw Error(ErrorCode::kInvalidArgument, "simple roots are linearly dependent");
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        if (g[i * s + j] > 0)
          throw Error(ErrorCode::kInvalidArgument,
                      "simple roots " + simple_roots[i].str() + " and " +
                          simple_roots[j].str() + " pair positively");
  }
  for (const auto& a : simple_roots) d.reflections_.push_back(detail::reflection_matrix(gram, a));

  std::set<WeightVector> roots(simple_roots.begin(), simple_roots.end());
  std::deque<WeightVector> queue(simple_roots.begin(), simple_roots.end());
  while (!queue.empty()) {
    WeightVector b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < simple_roots.size(); ++i) {
      if (b == simple_roots[i]) continue;
      WeightVector c = d.reflections_[i].apply(b);
      if (roots.insert(c).second) queue.push_back(c);
      if (roots.size() > 4 * weyl_bound)
        throw Error(ErrorCode::kGroupTooLarge, "root system too large");
    }
  }
  d.positive_.assign(roots.begin(), roots.end());
  d.theta_ = WeightVector::zero(rank);
  for (const auto& a : d.positive_) d.theta_ += a;
  d.rho_ = WeightVector::zero(rank);
  d.rho_integral_ = true;
  for (std::size_t i = 0; i < rank; ++i) {
    if (d.theta_[i] % 2 != 0) d.rho_integral_ = false;
    d.rho_[i] = d.theta_[i] / 2;
  }
  if (!d.rho_integral_ && require_integral_rho)
    throw Error(ErrorCode::kNonIntegralRho, "theta = " + d.theta_.str() + " is not even");
  d.weyl_ = std::make_shared<const std::vector<WeylElement>>(
      detail::enumerate_weyl(d.reflections_, rank, weyl_bound));
  return d;
}

inline RootDatum build_root_datum(std::size_t rank, const IntMatrix& gram,
                                  const std::vector<WeightVector>& simple_roots,
                                  std::size_t weyl_bound = kDefaultWeylBound) {
  return build_root_datum_impl(rank, gram, simple_roots, true, weyl_bound);
}

/// The sub-datum generated by a subset of the simple roots (a Levi factor).
inline RootDatum levi_subdatum(const RootDatum& d, const std::vector<std::size_t>& indices) {
  std::vector<WeightVector> s;
  for (auto i : indices) s.push_back(d.simple_roots().at(i));
  return build_root_datum_impl(d.rank(), d.gram(), s, false, kDefaultWeylBound);
}

/// Levi sub-datum of the stabilizer of a dominant rational point.
inline RootDatum stabilizer_subdatum(const RootDatum& d, const RationalVector& beta) {
  if (!d.is_dominant(beta))
    throw Error(ErrorCode::kNotDominant, "stabilizer of non-dominant " + to_string(beta));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.simple_roots().size(); ++i)
    if (d.pair(beta, d.simple_roots()[i]) == 0) idx.push_back(i);
  return levi_subdatum(d, idx);
}

inline const std::vector<WeylElement>& weyl_group(const RootDatum& d,
                                                  std::size_t bound = kDefaultWeylBound) {
  if (d.weyl().size() > bound)
    throw Error(ErrorCode::kGroupTooLarge, "Weyl group order " +
                                               std::to_string(d.weyl().size()) +
                                               " exceeds bound " + std::to_string(bound));
  return d.weyl();
}
// The list lives in the datum; a temporary datum would leave it dangling.
const std::vector<WeylElement>& weyl_group(const RootDatum&&, std::size_t = kDefaultWeylBound) = delete;

/// w o lambda = w(lambda + rho) - rho, computed as w(lambda) + (w(theta) - theta)/2
/// so that half-integral rho is handled exactly.
inline WeightVector affine_action(const WeylElement& w, const WeightVector& lambda,
                                  const RootDatum& d) {
  d.check(lambda);
  WeightVector shift = w.apply(d.theta()) - d.theta();
  WeightVector out = w.apply(lambda);
  for (std::size_t i = 0; i < d.rank(); ++i) out[i] += shift[i] / 2;
  return out;
}

struct DominantWitness {
  WeylElement w;
  WeightVector mu;
};

/// The unique w with w o lambda dominant, or nullopt when lambda + rho is singular.
inline std::optional<DominantWitness> dominant_witness(const WeightVector& lambda,
                                                       const RootDatum& d) {
  d.check(lambda);
  // Work with 2(lambda + rho) = 2 lambda + theta to stay integral.
  WeightVector v = 2 * lambda + d.theta();
  const auto& simple = d.simple_roots();
  WeylElement w{IntMatrix::identity(d.rank()), 1, 0, {}};
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < simple.size(); ++i) {
      const auto p = d.pair(v, simple[i]);
      if (p == 0) return std::nullopt;
      if (p < 0) {
        v = d.simple_reflections()[i].apply(v);
        w.matrix = d.simple_reflections()[i] * w.matrix;
        w.sign = -w.sign;
        w.length += 1;
        w.word.insert(w.word.begin(), static_cast<int>(i));
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return DominantWitness{w, affine_action(w, lambda, d)};
}

/// Dominant conjugate under the linear action, with the element reaching it.
template <class Vec>
std::pair<Vec, WeylElement> dominant_conjugate(const Vec& v0, const RootDatum& d) {
  Vec v = v0;
  const auto& simple = d.simple_roots();
  WeylElement w{IntMatrix::identity(d.rank()), 1, 0, {}};
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < simple.size(); ++i) {
      if (d.pair(v, simple[i]) < 0) {
        v = d.simple_reflections()[i].apply(v);
        w.matrix = d.simple_reflections()[i] * w.matrix;
        w.sign = -w.sign;
        w.length += 1;
        w.word.insert(w.word.begin(), static_cast<int>(i));
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {v, w};
}

/// Distinct images of v under W, in canonical order.
template <class Vec>
std::vector<Vec> weyl_orbit(const Vec& v, const RootDatum& d) {
  std::set<Vec> s;
  for (const auto& w : d.weyl()) s.insert(w.apply(v));
  return {s.begin(), s.end()};
}

namespace presets {

inline RootDatum torus(std::size_t rank) {
  return build_root_datum(rank, IntMatrix::identity(rank), {});
}
inline RootDatum su2() { return build_root_datum(1, IntMatrix(1, {1}), {WeightVector{2}}); }
inline RootDatum a2() {
  return build_root_datum(2, IntMatrix(2, {2, 1, 1, 2}), {WeightVector{2, -1}, WeightVector{-1, 2}});
}
inline RootDatum b2() {
  return build_root_datum(2, IntMatrix(2, {2, 1, 1, 1}), {WeightVector{2, -2}, WeightVector{-1, 2}});
}
inline RootDatum g2() {
  return build_root_datum(2, IntMatrix(2, {2, 3, 3, 6}), {WeightVector{2, -1}, WeightVector{-3, 2}});
}
inline RootDatum a1a1() {
  return build_root_datum(2, IntMatrix::identity(2), {WeightVector{2, 0}, WeightVector{0, 2}});
}

}  // namespace presets

}  // namespace eqrr
