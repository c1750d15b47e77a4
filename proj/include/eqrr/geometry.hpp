// Fixed-point data of a compact manifold with a torus (or G) action:
// isolated fixed points, tangent weights, bundle fibre weights and moment
// values, with validators and generators for the standard examples.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqrr/core.hpp"
#include "eqrr/lattice_weyl.hpp"

namespace eqrr {

struct FixedPointDatum {
  std::string id;
  std::vector<WeightVector> tangent;
  std::map<std::string, std::vector<WeightVector>> bundles;
  RationalVector moment;

  const std::vector<WeightVector>& fibers(const std::string& bundle) const {
    auto it = bundles.find(bundle);
    if (it == bundles.end())
      throw Error(ErrorCode::kUnknownBundle, "bundle '" + bundle + "' at point " + id);
    return it->second;
  }
};

struct ManifoldSpec {
  RootDatum datum;
  std::vector<FixedPointDatum> points;
  std::vector<std::string> bundle_names;
  bool zero_regular = false;
  // Line bundle whose fibre weight at each fixed point is the moment value.
  std::optional<std::string> moment_bundle;

  std::size_t rank() const { return datum.rank(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().tangent.size(); }
  bool has_bundle(const std::string& name) const {
    return std::find(bundle_names.begin(), bundle_names.end(), name) != bundle_names.end();
  }
  void require_bundle(const std::string& name) const {
    if (!has_bundle(name)) throw Error(ErrorCode::kUnknownBundle, "bundle '" + name + "'");
  }
};

struct Diagnostic {
  std::string kind;  // rank, isolation, dimension, bundle, weyl-symmetry, zero-regular, moment-bundle
  std::string point;
  std::string weyl_element;
  std::string message;

  std::string str() const {
    std::string s = kind + ": ";
    if (!point.empty()) s += "point " + point + ": ";
    if (!weyl_element.empty()) s += "under " + weyl_element + ": ";
    return s + message;
  }
};

namespace detail {

inline std::vector<WeightVector> sorted(std::vector<WeightVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Everything about a point that the Weyl group must permute.
struct PointSignature {
  std::vector<WeightVector> tangent;
  std::map<std::string, std::vector<WeightVector>> bundles;
  RationalVector moment;
  auto operator<=>(const PointSignature&) const = default;
};

inline PointSignature signature(const FixedPointDatum& p) {
  PointSignature s{sorted(p.tangent), {}, p.moment};
  for (const auto& [n, f] : p.bundles) s.bundles[n] = sorted(f);
  return s;
}

inline PointSignature transform(const PointSignature& s, const WeylElement& w) {
  PointSignature t;
  for (const auto& a : s.tangent) t.tangent.push_back(w.apply(a));
  t.tangent = sorted(t.tangent);
  for (const auto& [n, f] : s.bundles) {
    std::vector<WeightVector> g;
    for (const auto& a : f) g.push_back(w.apply(a));
    t.bundles[n] = sorted(g);
  }
  t.moment = w.apply(s.moment);
  return t;
}

}  // namespace detail

inline std::vector<Diagnostic> validate(const ManifoldSpec& spec) {
  std::vector<Diagnostic> out;
  const std::size_t r = spec.rank();
  bool ranks_ok = true;
  std::set<std::string> ids;
  for (const auto& p : spec.points) {
    if (!ids.insert(p.id).second) out.push_back({"bundle", p.id, "", "duplicate point id"});
    auto bad_rank = [&](const WeightVector& a, const std::string& what) {
      if (a.rank() != r) {
        out.push_back({"rank", p.id, "", what + " " + a.str() + " has rank " +
                                             std::to_string(a.rank()) + ", expected " +
                                             std::to_string(r)});
        ranks_ok = false;
      }
    };
    for (const auto& a : p.tangent) bad_rank(a, "tangent weight");
    for (const auto& [n, f] : p.bundles)
      for (const auto& a : f) bad_rank(a, "fibre weight of " + n);
    if (p.moment.size() != r) {
      out.push_back({"rank", p.id, "", "moment has rank " + std::to_string(p.moment.size())});
      ranks_ok = false;
    }
    for (const auto& a : p.tangent)
      if (a.is_zero()) out.push_back({"isolation", p.id, "", "zero tangent weight"});
    if (p.tangent.size() != spec.dimension())
      out.push_back({"dimension", p.id, "",
                     std::to_string(p.tangent.size()) + " tangent weights, expected " +
                         std::to_string(spec.dimension())});
    for (const auto& n : spec.bundle_names)
      if (!p.bundles.count(n)) out.push_back({"bundle", p.id, "", "missing bundle '" + n + "'"});
    for (const auto& [n, f] : p.bundles)
      if (!spec.has_bundle(n)) out.push_back({"bundle", p.id, "", "undeclared bundle '" + n + "'"});
    if (spec.zero_regular && p.moment.size() == r && is_zero(p.moment))
      out.push_back({"zero-regular", p.id, "", "moment is 0 but zero_regular is set"});
  }
  if (spec.moment_bundle) {
    if (!spec.has_bundle(*spec.moment_bundle)) {
      out.push_back({"moment-bundle", "", "", "unknown bundle '" + *spec.moment_bundle + "'"});
    } else if (ranks_ok) {
      for (const auto& p : spec.points) {
        const auto& f = p.bundles.count(*spec.moment_bundle) ? p.bundles.at(*spec.moment_bundle)
                                                             : std::vector<WeightVector>{};
        if (f.size() != 1 || to_rational(f.front()) != p.moment)
          out.push_back({"moment-bundle", p.id, "",
                         "fibre of '" + *spec.moment_bundle + "' differs from moment " +
                             to_string(p.moment)});
      }
    }
  }
  if (!ranks_ok || spec.datum.is_torus()) return out;

  std::map<detail::PointSignature, std::size_t> counts;
  for (const auto& p : spec.points) counts[detail::signature(p)]++;
  for (const auto& w : spec.datum.weyl()) {
    if (w.length != 1) continue;  // simple reflections generate W
    for (const auto& p : spec.points) {
      const auto s = detail::signature(p);
      auto it = counts.find(detail::transform(s, w));
      if (it == counts.end() || it->second != counts[s])
        out.push_back({"weyl-symmetry", p.id, w.word_str(),
                       "no fixed point carries the transformed data (moment " +
                           to_string(w.apply(p.moment)) + ")"});
    }
  }
  return out;
}

inline std::vector<bool> check_moment_bundle(const ManifoldSpec& spec, const std::string& bundle) {
  spec.require_bundle(bundle);
  std::vector<bool> out;
  for (const auto& p : spec.points) {
    const auto& f = p.fibers(bundle);
    if (f.size() != 1)
      throw Error(ErrorCode::kNotALineBundle,
                  "bundle '" + bundle + "' has rank " + std::to_string(f.size()) + " at " + p.id);
    out.push_back(to_rational(f.front()) == p.moment);
  }
  return out;
}

/// One W-orbit of moment values: the dominant representative, the orbit,
/// and the fixed points sitting over each orbit member.
struct Stratum {
  RationalVector beta;
  std::vector<RationalVector> orbit;
  std::map<RationalVector, std::vector<std::size_t>> members;

  bool is_zero() const { return eqrr::is_zero(beta); }
  std::vector<std::size_t> all_points() const {
    std::vector<std::size_t> v;
    for (const auto& [b, ps] : members) v.insert(v.end(), ps.begin(), ps.end());
    std::sort(v.begin(), v.end());
    return v;
  }
};

inline std::vector<Stratum> critical_set(const ManifoldSpec& spec) {
  std::map<RationalVector, Stratum> by_beta;
  const RationalVector zero(spec.rank(), Rational(0));
  if (spec.zero_regular) by_beta[zero] = Stratum{zero, {zero}, {}};
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const auto& m = spec.points[i].moment;
    if (m.size() != spec.rank())
      throw Error(ErrorCode::kNonLatticeMoment, "moment of " + spec.points[i].id);
    auto [dom, w] = dominant_conjugate(m, spec.datum);
    auto it = by_beta.find(dom);
    if (it == by_beta.end())
      it = by_beta.emplace(dom, Stratum{dom, weyl_orbit(dom, spec.datum), {}}).first;
    it->second.members[m].push_back(i);
  }
  std::vector<Stratum> out;
  for (auto& [b, s] : by_beta) out.push_back(std::move(s));
  return out;
}

namespace detail {

// Solve for t with sum t_i p_i = 0, sum t_i = 1 over rationals when the
// points are affinely independent; returns nullopt if inconsistent.
inline std::optional<std::vector<Rational>> barycentric_zero(const std::vector<RationalVector>& pts) {
  const std::size_t s = pts.size(), r = pts.front().size();
  std::vector<std::vector<Rational>> a(r + 1, std::vector<Rational>(s + 1, Rational(0)));
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < r; ++i) a[i][j] = pts[j][i];
    a[r][j] = 1;
  }
  a[r][s] = 1;
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < s && row <= r; ++c) {
    std::size_t p = row;
    while (p <= r && a[p][c] == 0) ++p;
    if (p > r) return std::nullopt;  // dependent points, skip this subset
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i <= r; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[row][c];
      for (std::size_t j = c; j <= s; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i <= r; ++i)
    if (a[i][s] != 0) return std::nullopt;
  std::vector<Rational> t(s);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) t[pivot_col[k]] = a[k][s] / a[k][pivot_col[k]];
  return t;
}

inline bool affinely_independent(const std::vector<RationalVector>& pts) {
  const std::size_t r = pts.front().size();
  std::vector<RationalVector> rows;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    RationalVector d(r);
    for (std::size_t i = 0; i < r; ++i) d[i] = pts[j][i] - pts[0][i];
    rows.push_back(d);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < r && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < r; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank == rows.size();
}

// For a linear torus action on CP^n the critical values are the convex hulls
// of moment subsets spanning less than full dimension; by Caratheodory it is
// enough to test affinely independent subsets of size at most the rank.
inline bool zero_is_regular_value(const std::vector<RationalVector>& moments) {
  const std::size_t r = moments.front().size(), n = moments.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<RationalVector> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) pts.push_back(moments[i]);
    if (pts.size() > r || !affinely_independent(pts)) continue;
    auto t = barycentric_zero(pts);
    if (t && std::all_of(t->begin(), t->end(), [](const Rational& x) { return x >= 0; }))
      return false;
  }
  return true;
}

}  // namespace detail

/// CP^n with the torus acting through the weights w_0..w_n, the line
/// bundle L = O(k) linearized with fibre k*w_i + shift at p_i, which is also
/// the moment value.  Tangent weights at p_i are w_i - w_j, j != i.
inline ManifoldSpec make_projective_space(const std::vector<WeightVector>& weights, std::int64_t k,
                                          const WeightVector& shift) {
  if (weights.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two weights");
  const std::size_t r = weights.front().rank();
  for (const auto& w : weights)
    if (w.rank() != r) throw Error(ErrorCode::kRankMismatch, "action weight " + w.str());
  if (shift.rank() != r) throw Error(ErrorCode::kRankMismatch, "shift " + shift.str());
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (weights[i] == weights[j])
        throw Error(ErrorCode::kRepeatedWeights, "weight " + weights[i].str() + " repeated");

  ManifoldSpec spec{presets::torus(r), {}, {"L", "trivial"}, false, std::string("L")};
  std::vector<RationalVector> moments;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    FixedPointDatum p;
    p.id = "p" + std::to_string(i);
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (j != i) p.tangent.push_back(weights[i] - weights[j]);
    const WeightVector f = k * weights[i] + shift;
    p.bundles["L"] = {f};
    p.bundles["trivial"] = {WeightVector::zero(r)};
    p.moment = to_rational(f);
    moments.push_back(p.moment);
    spec.points.push_back(std::move(p));
  }
  spec.zero_regular = k != 0 && detail::zero_is_regular_value(moments);
  return spec;
}

/// The coadjoint orbit G.lambda: fixed points indexed by W, tangent weights
/// w(alpha) over the positive roots, L fibre and moment w(lambda).
inline ManifoldSpec make_flag_manifold(const RootDatum& d, const WeightVector& lambda) {
  d.check(lambda);
  if (d.is_torus() || !d.is_regular_dominant(lambda))
    throw Error(ErrorCode::kNotRegularDominant, "lambda = " + lambda.str());
  ManifoldSpec spec{d, {}, {"L", "trivial"}, true, std::string("L")};
  for (const auto& w : d.weyl()) {
    FixedPointDatum p;
    p.id = w.word_str();
    for (const auto& a : d.positive_roots()) p.tangent.push_back(w.apply(a));
    const WeightVector f = w.apply(lambda);
    p.bundles["L"] = {f};
    p.bundles["trivial"] = {WeightVector::zero(d.rank())};
    p.moment = to_rational(f);
    spec.points.push_back(std::move(p));
  }
  return spec;
}

/// A single point with the trivial bundle; the unit for product().
inline ManifoldSpec make_point(const RootDatum& d) {
  FixedPointDatum p;
  p.id = "pt";
  p.bundles["trivial"] = {WeightVector::zero(d.rank())};
  p.moment = RationalVector(d.rank(), Rational(0));
  return ManifoldSpec{d, {p}, {"trivial"}, false, std::nullopt};
}

/// Cartesian product.  Bundle "E1*E2" is the exterior tensor product; the
/// zero_regular flag cannot be derived from fixed-point data and is passed in.
inline ManifoldSpec product(const ManifoldSpec& a, const ManifoldSpec& b, bool zero_regular) {
  if (!a.datum.same_as(b.datum))
    throw Error(ErrorCode::kDatumMismatch, a.datum.describe() + " vs " + b.datum.describe());
  ManifoldSpec spec{a.datum, {}, {}, zero_regular, std::nullopt};
  for (const auto& e1 : a.bundle_names)
    for (const auto& e2 : b.bundle_names) spec.bundle_names.push_back(e1 + "*" + e2);
  if (a.moment_bundle && b.moment_bundle) spec.moment_bundle = *a.moment_bundle + "*" + *b.moment_bundle;
  for (const auto& p : a.points)
    for (const auto& q : b.points) {
      FixedPointDatum x;
      x.id = p.id + "|" + q.id;
      x.tangent = p.tangent;
      x.tangent.insert(x.tangent.end(), q.tangent.begin(), q.tangent.end());
      x.moment = p.moment;
      for (std::size_t i = 0; i < x.moment.size(); ++i) x.moment[i] += q.moment[i];
      for (const auto& e1 : a.bundle_names)
        for (const auto& e2 : b.bundle_names) {
          auto& f = x.bundles[e1 + "*" + e2];
          for (const auto& u : p.fibers(e1))
            for (const auto& v : q.fibers(e2)) f.push_back(u + v);
        }
      spec.points.push_back(std::move(x));
    }
  if (spec.zero_regular)
    for (const auto& p : spec.points)
      if (is_zero(p.moment))
        throw Error(ErrorCode::kInvalidArgument, "point " + p.id + " has moment 0");
  return spec;
}

inline std::string dual_name(const std::string& name) {
  const std::string suffix = "^-1";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + suffix;
}

namespace detail {

inline void put_bundle(ManifoldSpec& spec, const std::string& name,
                       const std::vector<std::vector<WeightVector>>& fibers) {
  for (std::size_t i = 0; i < spec.points.size(); ++i) spec.points[i].bundles[name] = fibers[i];
  if (!spec.has_bundle(name)) spec.bundle_names.push_back(name);
}

}  // namespace detail

/// Adds the dual bundle.  Dualizing the moment bundle also negates the moment
/// so that the dual becomes the moment bundle.
inline ManifoldSpec dual_bundle(const ManifoldSpec& spec, const std::string& bundle) {
  spec.require_bundle(bundle);
  ManifoldSpec out = spec;
  std::vector<std::vector<WeightVector>> fibers;
  for (const auto& p : spec.points) {
    std::vector<WeightVector> f;
    for (const auto& a : p.fibers(bundle)) f.push_back(-a);
    fibers.push_back(std::move(f));
  }
  const std::string name = dual_name(bundle);
  detail::put_bundle(out, name, fibers);
  if (spec.moment_bundle && *spec.moment_bundle == bundle) {
    for (auto& p : out.points)
      for (auto& c : p.moment) c = -c;
    out.moment_bundle = name;
  }
  return out;
}

inline std::string power_name(const std::string& bundle, std::int64_t k) {
  if (k == 1) return bundle;
  const std::string suffix = "^-1";
  if (bundle.size() > suffix.size() &&
      bundle.compare(bundle.size() - suffix.size(), suffix.size(), suffix) == 0)
    return bundle.substr(0, bundle.size() - suffix.size()) + "^" + std::to_string(-k);
  return bundle + "^" + std::to_string(k);
}

/// Adds the k-th tensor power of a line bundle; the moment is unchanged.
inline ManifoldSpec tensor_power(const ManifoldSpec& spec, const std::string& bundle, std::int64_t k) {
  spec.require_bundle(bundle);
  ManifoldSpec out = spec;
  std::vector<std::vector<WeightVector>> fibers;
  for (const auto& p : spec.points) {
    const auto& f = p.fibers(bundle);
    if (f.size() != 1)
      throw Error(ErrorCode::kNotALineBundle,
                  "bundle '" + bundle + "' has rank " + std::to_string(f.size()) + " at " + p.id);
    fibers.push_back({k * f.front()});
  }
  detail::put_bundle(out, power_name(bundle, k), fibers);
  return out;
}

}  // namespace eqrr
