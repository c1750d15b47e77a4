#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace eqrr;
using testing_util::to_mat;
using testing_util::to_vec;

namespace {

std::vector<RootDatum> all_presets() {
  return {presets::torus(1), presets::torus(2), presets::su2(), presets::a2(),
          presets::b2(),     presets::g2(),     presets::a1a1()};
}

void expect_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(RootDatum, TorusHasNoRoots) {
  const RootDatum d = build_root_datum(1, IntMatrix(1, {1}), {});
  EXPECT_TRUE(d.positive_roots().empty());
  EXPECT_EQ(d.rho(), WeightVector{0});
  EXPECT_EQ(d.weyl().size(), 1u);
}

TEST(RootDatum, SU2) {
  const RootDatum d = presets::su2();
  ASSERT_EQ(d.positive_roots().size(), 1u);
  EXPECT_EQ(d.positive_roots()[0], WeightVector{2});
  EXPECT_EQ(d.rho(), WeightVector{1});
  EXPECT_EQ(d.theta(), WeightVector{2});
}

TEST(RootDatum, A2) {
  const RootDatum d = presets::a2();
  EXPECT_EQ(d.positive_roots().size(), 3u);
  EXPECT_EQ(d.theta(), (WeightVector{2, 2}));
  EXPECT_EQ(d.rho(), (WeightVector{1, 1}));
}

TEST(RootDatum, RootsMatchBruteForceClosure) {
  for (const auto& d : all_presets()) {
    const auto gram = to_mat(d.gram());
    const auto simple = testing_util::to_vecs(d.simple_roots());
    auto expected = oracle::positive_roots(gram, simple);
    auto got = testing_util::to_vecs(d.positive_roots());
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << d.describe();
    oracle::Vec theta(d.rank(), 0);
    for (const auto& a : expected) theta = oracle::add(theta, a);
    EXPECT_EQ(to_vec(d.theta()), theta);
  }
}

TEST(RootDatum, Errors) {
  expect_code(ErrorCode::kNotPositiveDefinite, [] { build_root_datum(1, IntMatrix(1, {0}), {}); });
  expect_code(ErrorCode::kNotPositiveDefinite,
              [] { build_root_datum(2, IntMatrix(2, {1, 2, 2, 1}), {}); });
  // alpha = (1) with gram 1: 2<e,a>/<a,a> = 2 is integral, but rho = 1/2.
  expect_code(ErrorCode::kNonIntegralRho, [] { build_root_datum(1, IntMatrix(1, {1}), {WeightVector{1}}); });
  // alpha = (3): 2*3/9 is not an integer.
  expect_code(ErrorCode::kNonCrystallographic,
              [] { build_root_datum(1, IntMatrix(1, {1}), {WeightVector{3}}); });
}

TEST(WeylGroup, Orders) {
  const std::vector<std::pair<RootDatum, std::size_t>> cases{
      {presets::torus(2), 1}, {presets::su2(), 2}, {presets::a2(), 6},
      {presets::b2(), 8},     {presets::g2(), 12}, {presets::a1a1(), 4}};
  for (const auto& [d, order] : cases) EXPECT_EQ(weyl_group(d).size(), order) << d.describe();
}

TEST(WeylGroup, IdentityFirstAndSigns) {
  const RootDatum d = presets::a2();
  const auto& w = weyl_group(d);
  EXPECT_EQ(w.front().matrix, IntMatrix::identity(2));
  int plus = 0, minus = 0;
  for (const auto& x : w) (x.sign > 0 ? plus : minus)++;
  EXPECT_EQ(plus, 3);
  EXPECT_EQ(minus, 3);
  const RootDatum su2 = presets::su2();
  EXPECT_EQ(weyl_group(su2)[1].sign, -1);
}

TEST(WeylGroup, MatchesBruteForceClosure) {
  for (const auto& d : all_presets()) {
    const auto expected = oracle::weyl_matrices(to_mat(d.gram()), testing_util::to_vecs(d.simple_roots()), d.rank());
    std::set<oracle::Mat> got;
    for (const auto& w : d.weyl()) {
      got.insert(to_mat(w.matrix));
      EXPECT_EQ(w.sign, oracle::det(to_mat(w.matrix))) << d.describe() << " " << w.word_str();
      EXPECT_EQ(static_cast<std::size_t>(w.length), w.word.size());
    }
    EXPECT_EQ(got, expected) << d.describe();
  }
}

TEST(WeylGroup, PreservesGramAndPermutesRoots) {
  for (const auto& d : all_presets()) {
    std::set<WeightVector> roots;
    for (const auto& a : d.positive_roots()) {
      roots.insert(a);
      roots.insert(-a);
    }
    for (const auto& w : d.weyl()) {
      EXPECT_EQ(w.matrix.transpose() * d.gram() * w.matrix, d.gram());
      std::set<WeightVector> image;
      for (const auto& a : roots) image.insert(w.apply(a));
      EXPECT_EQ(image, roots);
    }
  }
}

TEST(WeylGroup, SignIsAHomomorphismAndGroupIsClosed) {
  for (const auto& d : all_presets()) {
    std::map<IntMatrix, int> sign;
    for (const auto& w : d.weyl()) sign[w.matrix] = w.sign;
    for (const auto& x : d.weyl())
      for (const auto& y : d.weyl()) {
        auto it = sign.find(x.matrix * y.matrix);
        ASSERT_NE(it, sign.end());
        EXPECT_EQ(it->second, x.sign * y.sign);
      }
  }
}

TEST(WeylGroup, Bound) {
  const RootDatum g2 = presets::g2();
  EXPECT_THROW(weyl_group(g2, 5), Error);
  try {
    build_root_datum(2, IntMatrix(2, {2, 3, 3, 6}), {WeightVector{2, -1}, WeightVector{-3, 2}}, 11);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGroupTooLarge);
  }
}

TEST(AffineAction, Examples) {
  const RootDatum d = presets::su2();
  const auto& s = d.weyl()[1];
  EXPECT_EQ(affine_action(d.weyl()[0], WeightVector{5}, d), WeightVector{5});
  EXPECT_EQ(affine_action(s, WeightVector{0}, d), WeightVector{-2});
  EXPECT_EQ(affine_action(s, WeightVector{-2}, d), WeightVector{0});
}

TEST(AffineAction, IsAGroupAction) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (const auto& d : all_presets()) {
    std::map<IntMatrix, const WeylElement*> by;
    for (const auto& w : d.weyl()) by[w.matrix] = &w;
    for (int trial = 0; trial < 5; ++trial) {
      WeightVector l = WeightVector::zero(d.rank());
      for (std::size_t i = 0; i < d.rank(); ++i) l[i] = coord(rng);
      for (const auto& x : d.weyl())
        for (const auto& y : d.weyl()) {
          const WeylElement& xy = *by.at(x.matrix * y.matrix);
          EXPECT_EQ(affine_action(xy, l, d), affine_action(x, affine_action(y, l, d), d));
        }
    }
  }
}

TEST(DominantWitness, Examples) {
  const RootDatum d = presets::su2();
  auto a = dominant_witness(WeightVector{3}, d);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->mu, WeightVector{3});
  EXPECT_EQ(a->w.sign, 1);
  EXPECT_FALSE(dominant_witness(WeightVector{-1}, d));
  auto b = dominant_witness(WeightVector{-3}, d);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->mu, WeightVector{1});
  EXPECT_EQ(b->w.sign, -1);
}

TEST(DominantWitness, AgreesWithOrbitEnumeration) {
  for (const auto& d : all_presets()) {
    if (d.is_torus()) continue;
    const auto gram = to_mat(d.gram());
    const auto simple = testing_util::to_vecs(d.simple_roots());
    const auto group = oracle::weyl_matrices(gram, simple, d.rank());
    oracle::Vec theta(d.rank(), 0);
    for (const auto& a : oracle::positive_roots(gram, simple)) theta = oracle::add(theta, a);
    for (std::int64_t x = -5; x <= 5; ++x)
      for (std::int64_t y = -5; y <= 5; ++y) {
        WeightVector l = d.rank() == 1 ? WeightVector{x} : WeightVector{x, y};
        if (d.rank() == 1 && y != 0) continue;
        // Brute force over the orbit of 2l + theta.
        const oracle::Vec v = oracle::add(oracle::add(to_vec(l), to_vec(l)), theta);
        bool singular = false;
        for (const auto& a : oracle::root_closure(gram, simple))
          if (oracle::pair(gram, v, a) == 0) singular = true;
        std::optional<oracle::Vec> mu;
        for (const auto& w : group) {
          const oracle::Vec u = oracle::act(w, v);
          bool dom = true;
          for (const auto& a : simple)
            if (oracle::pair(gram, u, a) <= 0) dom = false;
          if (dom) {
            oracle::Vec m = oracle::add(u, theta, -1);
            for (auto& c : m) c /= 2;
            mu = m;
          }
        }
        auto wit = dominant_witness(l, d);
        EXPECT_EQ(!wit, singular) << d.describe() << " " << l;
        if (wit && mu) {
          EXPECT_EQ(to_vec(wit->mu), *mu);
        }
        if (wit) {
          EXPECT_TRUE(d.is_dominant(wit->mu));
          EXPECT_EQ(affine_action(wit->w, l, d), wit->mu);
        }
      }
  }
}
