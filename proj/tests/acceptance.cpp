// Acceptance suite: one PASS/FAIL line per criterion, all comparisons exact.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "eqrr/cli.hpp"
#include "test_util.hpp"

using namespace eqrr;
using testing_util::to_poly;

namespace {

// Collects the first few failure messages of one criterion.
struct Check {
  int failures = 0;
  int cases = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

bool report(int id, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures++;
    if (c.first.empty()) c.first = std::string("exception: ") + e.what();
  }
  const bool ok = c.failures == 0 && c.cases > 0;
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << c.cases << " cases";
  if (!ok) std::cout << ", " << c.failures << " failed: " << (c.cases == 0 ? "no cases" : c.first);
  std::cout << ")" << std::endl;
  return ok;
}

ManifoldSpec load(const std::string& name) { return load_spec(testing_util::spec_path(name)); }

std::int64_t level(const RootDatum& d, const WeightVector& a, const WeightVector& g) { return d.pair(a, g); }

oracle::Poly negate(oracle::Poly p) {
  for (auto& [a, c] : p) c = -c;
  return p;
}

void counterexample(Check& c) {
  ManifoldSpec spec = dual_bundle(make_flag_manifold(presets::su2(), WeightVector{2}), "L");
  for (std::int64_t k = 2; k <= 6; ++k) spec = tensor_power(spec, "L^-1", k);
  for (std::int64_t k = 1; k <= 6; ++k) {
    const std::string b = power_name("L^-1", k);
    const LaurentElement rr = rr_character_auto(spec, b, WeightVector{1});
    const GCharacter g = decompose_invariant(rr, spec.datum);
    const std::string tag = "k=" + std::to_string(k);
    c.expect(invariant_part(g) == (k == 1 ? -1 : 0), tag + " invariant part " + invariant_part(g).str());
    c.expect((-g).same_mults(GCharacter::irreducible(spec.datum, WeightVector{2 * k - 2})),
             tag + " -RR^G = " + (-g).str());
    c.expect(to_poly(rr) == negate(oracle::su2_character(2 * k - 2)), tag + " torus character");
  }
}

void circle_expansions(Check& c) {
  const IntMatrix one = IntMatrix::identity(1);
  for (std::int64_t m = 1; m <= 3; ++m) {
    // -t^m sum_k (t^m)^k, first 20 terms
    const auto up = geometric_expansion(WeightVector{m}, 1, Polarization(WeightVector{1}, one), 20 * m);
    for (std::int64_t n = 0; n <= 20 * m; ++n) {
      const std::int64_t expected = (n >= m && n % m == 0) ? -1 : 0;
      c.expect(up.coefficient(WeightVector{n}) == expected, "m=" + std::to_string(m) + " eps=+1 n=" + std::to_string(n));
    }
    // sum_k (t^-m)^k, first 20 terms
    const auto down = geometric_expansion(WeightVector{m}, -1, Polarization(WeightVector{-1}, one), 19 * m);
    for (std::int64_t n = 0; n <= 19 * m; ++n) {
      const std::int64_t expected = n % m == 0 ? 1 : 0;
      c.expect(down.coefficient(WeightVector{-n}) == expected, "m=" + std::to_string(m) + " eps=-1 n=" + std::to_string(n));
    }
  }
}

void inverse_identity(Check& c) {
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> coord(-3, 3), size(1, 4), rk(1, 3);
  int done = 0;
  while (done < 100) {
    const std::size_t r = static_cast<std::size_t>(rk(rng));
    WeightVector dir = WeightVector::zero(r);
    for (std::size_t i = 0; i < r; ++i) dir[i] = coord(rng);
    if (dir.is_zero()) continue;
    const Polarization p(dir, IntMatrix::identity(r));
    std::vector<WeightVector> ws;
    bool orthogonal = false;
    for (int k = size(rng); k > 0; --k) {
      WeightVector a = WeightVector::zero(r);
      for (std::size_t i = 0; i < r; ++i) a[i] = coord(rng);
      orthogonal = orthogonal || p.level(a) == 0;
      ws.push_back(a);
    }
    if (orthogonal) continue;
    ++done;
    // The inverse starts at the sum of the positive levels; leave 12 levels
    // of exact product above level 0.
    const std::int64_t cutoff = polarized_floor(ws, p) + 12;
    const PolarizedSeries inv = polarized_inverse(ws, p, cutoff);
    // Independent product: oracle polynomial times the truncated inverse,
    // kept where every contributing inverse term is below the cutoff.
    oracle::Poly wedge{{oracle::Vec(r, 0), 1}};
    for (const auto& a : ws) {
      oracle::Vec neg(r, 0);
      wedge = oracle::mul(wedge, oracle::Poly{{oracle::Vec(r, 0), 1}, {oracle::add(neg, a.coords(), -1), -1}});
    }
    std::int64_t low = 0;
    for (const auto& [a, x] : wedge) low = std::min(low, p.level(WeightVector(a)));
    const std::int64_t window = cutoff + low;
    oracle::Poly prod;
    for (const auto& [a, x] : oracle::mul(wedge, to_poly(inv.terms())))
      if (p.level(WeightVector(a)) <= window) prod[a] = x;
    const bool ok = window >= 12 && prod == oracle::Poly{{oracle::Vec(r, 0), 1}};
    // The engine's own product must agree on its window.
    const PolarizedSeries eng = wedge_dual(ws, r) * inv;
    const bool eng_ok = eng.cutoff() >= 12 && to_poly(eng.terms()) == oracle::Poly{{oracle::Vec(r, 0), 1}};
    std::string tag;
    for (const auto& a : ws) tag += a.str();
    c.expect(ok && eng_ok, "weights " + tag + " direction " + dir.str() + (ok ? "" : " (oracle)") +
                               (eng_ok ? "" : " (engine)"));
  }
}

void polarization_independence(Check& c) {
  for (const auto& name : testing_util::shipped_specs()) {
    const ManifoldSpec spec = load(name);
    const auto dirs = generic_directions(spec, 3);
    c.expect(dirs.size() == 3, name + ": fewer than 3 generic directions");
    for (const auto& b : spec.bundle_names) {
      const LaurentElement first = rr_character(spec, b, dirs.front(), 10);
      for (std::size_t i = 1; i < dirs.size(); ++i)
        c.expect(first == rr_character(spec, b, dirs[i], 10),
                 name + " " + b + ": " + dirs.front().str() + " vs " + dirs[i].str());
    }
  }
}

void decomposition(Check& c) {
  for (const auto& name : testing_util::shipped_specs()) {
    const ManifoldSpec spec = load(name);
    if (!spec.zero_regular) continue;
    const WeightVector g = generic_directions(spec, 1).front();
    for (const auto& b : spec.bundle_names) {
      const Decomposition dec = decompose(spec, b, g, std::nullopt, 10);
      c.expect(dec.identity.status == VerificationStatus::kPass && !dec.rr0.window.unbounded(),
               name + " " + b + " first discrepancy " +
                   (dec.identity.first_discrepancy ? dec.identity.first_discrepancy->str() : "-"));
    }
  }
}

void torus_invariant_part(Check& c) {
  for (const auto& name : {"cp1_shifted", "cp1_weight2"}) {
    const ManifoldSpec spec = load(name);
    for (std::int64_t k = 1; k <= 5; ++k) {
      const std::string b = power_name("L", k);
      if (!spec.has_bundle(b)) continue;
      const std::int64_t x0 = spec.points[0].fibers(b).front()[0];
      const std::int64_t x1 = spec.points[1].fibers(b).front()[0];
      const std::int64_t step = std::abs(spec.points[0].tangent.front()[0]);
      const std::int64_t expected = oracle::cp1_invariant_count(std::min(x0, x1), std::max(x0, x1), step);
      const Decomposition dec = decompose(spec, b, WeightVector{1}, std::nullopt, 10);
      const Integer got = dec.rr0.coefficient(WeightVector{0});
      c.expect(got == expected, std::string(name) + " " + b + ": [RR_0]^T = " + got.str() + ", oracle " +
                                    std::to_string(expected));
    }
  }
}

void induction_formula(Check& c) {
  for (const auto& name : {"flag_su2_l1", "flag_su2_l2", "flag_su2_dual"}) {
    const ManifoldSpec spec = load(name);
    const auto& d = spec.datum;
    for (const auto& b : spec.bundle_names) {
      const Decomposition dec = decompose(spec, b, WeightVector{1}, std::nullopt, 10);
      std::vector<LocalizedCharacter> family;
      for (const auto& [beta, loc] : dec.strata) family.push_back(loc);
      const GCharacter total = decompose_invariant(dec.rr, d);
      const GCharacter g0 = hol(dec.rr0, d);
      for (const auto& s : critical_set(spec)) {
        if (s.is_zero()) continue;
        const GCharacter induced = induce_localized(family, d, s.beta);
        const GCharacter direct = total - g0;
        const ExactWindow w = induced.window().intersect(direct.window());
        c.expect(!w.unbounded() && detail::first_difference(induced.restricted_to(w), direct.restricted_to(w)) == std::nullopt,
                 std::string(name) + " " + b + " beta " + to_string(s.beta));
      }
    }
  }
}

void vanishing(Check& c) {
  for (const auto& name : testing_util::shipped_specs()) {
    const ManifoldSpec spec = load(name);
    if (!spec.zero_regular) continue;
    const WeightVector g = generic_directions(spec, 1).front();
    for (const auto& b : spec.bundle_names) {
      std::optional<Decomposition> dec;
      for (const auto& s : critical_set(spec)) {
        if (s.is_zero()) continue;
        const auto cert = positivity_certificate(spec, b, s.beta);
        if (!cert.holds) continue;
        if (!dec) dec = decompose(spec, b, g, std::nullopt, 10);
        std::vector<LocalizedCharacter> family;
        for (const auto& [beta, loc] : dec->strata) family.push_back(loc);
        const GCharacter induced = induce_localized(family, spec.datum, s.beta);
        c.expect(invariant_part(induced) == 0, name + " " + b + " beta " + to_string(s.beta) +
                                                   " invariant part " + invariant_part(induced).str());
      }
    }
  }
}

bool dominant_regular_box(const RootDatum& d, std::int64_t x, std::int64_t y, WeightVector& out) {
  out = d.rank() == 1 ? WeightVector{x} : WeightVector{x, y};
  return d.is_regular_dominant(out);
}

void borel_weil(Check& c) {
  // The character oracle itself: SU(2) dimensions are lambda + 1.
  for (std::int64_t n = 0; n <= 8; ++n) {
    Integer dim = 0;
    const LaurentElement chi = weyl_character(WeightVector{n}, presets::su2());
    for (const auto& [a, m] : chi.terms()) dim += m;
    c.expect(dim == n + 1 && weyl_dimension(WeightVector{n}, presets::su2()) == n + 1,
             "dim chi" + std::to_string(n));
  }
  for (const auto& d : {presets::su2(), presets::a2(), presets::b2(), presets::g2(), presets::a1a1()}) {
    const auto gram = testing_util::to_mat(d.gram());
    const auto simple = testing_util::to_vecs(d.simple_roots());
    const auto den = oracle::denominator(gram, simple, d.rank());
    for (std::int64_t x = 0; x <= 4; ++x)
      for (std::int64_t y = 0; y <= (d.rank() == 2 ? 4 : 0); ++y) {
        WeightVector l;
        if (!dominant_regular_box(d, x, y, l)) continue;
        const ManifoldSpec spec = make_flag_manifold(d, l);
        const WeightVector g = generic_directions(spec, 1).front();
        const LaurentElement rr = rr_character_auto(spec, "L", g);
        const LaurentElement chi = restrict(GCharacter::irreducible(d, l));
        Integer dim = 0;
        for (const auto& [a, m] : chi.terms()) dim += m;
        const std::string tag = d.describe() + " lambda " + l.str();
        c.expect(rr == chi, tag);
        c.expect(dim == weyl_dimension(l, d), tag + " dimension");
        c.expect(oracle::mul(to_poly(rr), den) == oracle::alternant(gram, simple, l.coords()), tag + " alternant");
      }
  }
}

void theta_identity(Check& c) {
  for (const auto& name : {"flag_su2_l1", "flag_su2_l2", "flag_su2_dual", "product_su2"}) {
    const ManifoldSpec spec = load(name);
    for (const auto& b : spec.bundle_names) {
      const ThetaReport th = su2_theta(spec, b, 10);
      c.expect(th.identity.status == VerificationStatus::kPass,
               std::string(name) + " " + b + " window " + th.identity.window);
    }
  }
}

void rigidity(Check& c) {
  for (const auto& name : {"cp1_o2", "cp1_shifted", "cp1_weight2", "cp1_cubic", "cp2_circle", "cp2_torus",
                           "flag_su2_l1", "flag_su2_l2", "flag_su2_dual"}) {
    const ManifoldSpec spec = load(name);
    const WeightVector g = generic_directions(spec, 1).front();
    for (const auto& gamma : {g, -g}) {
      // Surviving points: all tangent weights on the negative side of gamma.
      std::int64_t surviving = 0;
      for (const auto& p : spec.points) {
        bool all_negative = true;
        for (const auto& a : p.tangent) all_negative = all_negative && level(spec.datum, a, gamma) < 0;
        surviving += all_negative;
      }
      const LaurentElement rr = rr_character_auto(spec, "trivial", gamma);
      const RigidityReport r = rigidity_check(spec, "trivial", gamma);
      c.expect(r.rigid && r.check.status == VerificationStatus::kPass &&
                   rr == surviving * LaurentElement::one(spec.rank()) && surviving == 1,
               std::string(name) + " gamma " + gamma.str());
    }
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "SU(2) counterexample for (L^-1)^k, k = 1..6", counterexample);
  ok &= report(2, "circle expansions for m = 1..3, both signs, 20 coefficients", circle_expansions);
  ok &= report(3, "wedge_dual * polarized_inverse = 1 on 100 random multisets", inverse_identity);
  ok &= report(4, "polarization independence, 3 directions, cutoff 10, shipped specs", polarization_independence);
  ok &= report(5, "RR = RR_0 + sum RR_beta on shipped zero-regular specs", decomposition);
  ok &= report(6, "[RR_0]^T on shifted CP^1 against the lattice count", torus_invariant_part);
  ok &= report(7, "induction formula on the SU(2) flag specs", induction_formula);
  ok &= report(8, "vanishing of [RR_beta]^G where the certificate holds", vanishing);
  ok &= report(9, "Borel-Weil for regular dominant lambda <= 4, ranks 1-2", borel_weil);
  ok &= report(10, "RR = RR_0 + Hol(theta (1 - h^-2)) on SU(2) specs", theta_identity);
  ok &= report(11, "rigid bundles give the surviving-point count", rigidity);
  return ok ? 0 : 1;
}
