// Basic value types shared by every eqrr module: exact integers and
// rationals, integer weight vectors, small integer matrices and the error
// type.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqrr {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  kInvalidArgument,
  kRankMismatch,
  kNotPositiveDefinite,
  kNonCrystallographic,
  kNonIntegralRho,
  kGroupTooLarge,
  kDirectionMismatch,
  kOrthogonalWeight,
  kSignMismatch,
  kNotDominant,
  kCutoffNotInduceable,
  kOutsideWindow,
  kNotSubDatum,
  kNotWeylInvariant,
  kNotALineBundle,
  kNonLatticeMoment,
  kRepeatedWeights,
  kNotRegularDominant,
  kDatumMismatch,
  kUnknownBundle,
  kTailNotCancelled,
  kEmptyStratum,
  kIncompleteOrbit,
  kNotSU2,
  kParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kRankMismatch: return "RankMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNonCrystallographic: return "NonCrystallographic";
    case ErrorCode::kNonIntegralRho: return "NonIntegralRho";
    case ErrorCode::kGroupTooLarge: return "GroupTooLarge";
    case ErrorCode::kDirectionMismatch: return "DirectionMismatch";
    case ErrorCode::kOrthogonalWeight: return "OrthogonalWeight";
    case ErrorCode::kSignMismatch: return "SignMismatch";
    case ErrorCode::kNotDominant: return "NotDominant";
    case ErrorCode::kCutoffNotInduceable: return "CutoffNotInduceable";
    case ErrorCode::kOutsideWindow: return "OutsideWindow";
    case ErrorCode::kNotSubDatum: return "NotSubDatum";
    case ErrorCode::kNotWeylInvariant: return "NotWeylInvariant";
    case ErrorCode::kNotALineBundle: return "NotALineBundle";
    case ErrorCode::kNonLatticeMoment: return "NonLatticeMoment";
    case ErrorCode::kRepeatedWeights: return "RepeatedWeights";
    case ErrorCode::kNotRegularDominant: return "NotRegularDominant";
    case ErrorCode::kDatumMismatch: return "DatumMismatch";
    case ErrorCode::kUnknownBundle: return "UnknownBundle";
    case ErrorCode::kTailNotCancelled: return "TailNotCancelled";
    case ErrorCode::kEmptyStratum: return "EmptyStratum";
    case ErrorCode::kIncompleteOrbit: return "IncompleteOrbit";
    case ErrorCode::kNotSU2: return "NotSU2";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An integer point of the weight lattice, in lattice coordinates.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<std::int64_t> coords)
      : coords_(std::move(coords)) {}
  WeightVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static WeightVector zero(std::size_t rank) {
    return WeightVector(std::vector<std::int64_t>(rank, 0));
  }
  static WeightVector basis(std::size_t rank, std::size_t i) {
    WeightVector v = zero(rank);
    v.coords_.at(i) = 1;
    return v;
  }

  std::size_t rank() const { return coords_.size(); }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](std::int64_t c) { return c == 0; });
  }

  WeightVector& operator+=(const WeightVector& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  WeightVector& operator-=(const WeightVector& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend WeightVector operator+(WeightVector a, const WeightVector& b) {
    return a += b;
  }
  friend WeightVector operator-(WeightVector a, const WeightVector& b) {
    return a -= b;
  }
  friend WeightVector operator-(WeightVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend WeightVector operator*(std::int64_t k, WeightVector a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }

  // Lexicographic on coordinates; this is the canonical term order.
  friend auto operator<=>(const WeightVector&, const WeightVector&) = default;
  friend bool operator==(const WeightVector&, const WeightVector&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) os << ',';
      os << coords_[i];
    }
    os << ']';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const WeightVector& w) {
    return os << w.str();
  }

 private:
  void check_rank(const WeightVector& o) const {
    if (o.rank() != rank())
      throw Error(ErrorCode::kRankMismatch,
                  "weights " + str() + " and " + o.str());
  }

  std::vector<std::int64_t> coords_;
};

/// A rational point of h* in lattice coordinates (moment values).
using RationalVector = std::vector<Rational>;

inline RationalVector to_rational(const WeightVector& w) {
  RationalVector r;
  r.reserve(w.rank());
  for (auto c : w.coords()) r.emplace_back(c);
  return r;
}

inline bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

inline std::string rational_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const RationalVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += rational_str(v[i]);
  }
  return s + "]";
}

/// Primitive integer vector on the ray of a nonzero rational vector.
inline WeightVector primitive_direction(const RationalVector& v) {
  Integer lcm = 1;
  for (const auto& c : v) {
    Integer d = denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> scaled;
  Integer g = 0;
  for (const auto& c : v) {
    Integer s = numerator(c) * (lcm / denominator(c));
    scaled.push_back(s);
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(s));
  }
  if (g == 0) throw Error(ErrorCode::kInvalidArgument, "zero direction");
  std::vector<std::int64_t> out;
  for (auto& s : scaled) out.push_back(static_cast<std::int64_t>(s / g));
  return WeightVector(std::move(out));
}

inline std::int64_t checked_int64(const Integer& x, const char* what) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " overflows int64");
  return static_cast<std::int64_t>(x);
}

/// Dense square integer matrix acting on lattice coordinates (column vectors).
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::size_t n, std::vector<std::int64_t> row_major)
      : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n)
      throw Error(ErrorCode::kRankMismatch, "matrix entry count");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const auto xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  WeightVector apply(const WeightVector& v) const {
    std::vector<std::int64_t> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return WeightVector(std::move(out));
  }

  RationalVector apply(const RationalVector& v) const {
    RationalVector out(n_, Rational(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += Rational((*this)(i, j)) * v[j];
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Integer determinant() const {
    // Bareiss fraction-free elimination.
    std::vector<Integer> m(a_.begin(), a_.end());
    const std::size_t n = n_;
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k * n + k] == 0) {
        std::size_t p = k + 1;
        while (p < n && m[p * n + k] == 0) ++p;
        if (p == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      prev = m[k * n + k];
    }
    return sign * m[n * n - 1];
  }

  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

}  // namespace eqrr
