#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace eqrr;

namespace {

std::vector<std::string> kinds(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.kind);
  return out;
}

}  // namespace

TEST(Generators, ProjectiveLine) {
  const auto s = make_projective_space({WeightVector{0}, WeightVector{1}}, 2, WeightVector{-1});
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[0].tangent, std::vector<WeightVector>{WeightVector{-1}});
  EXPECT_EQ(s.points[1].tangent, std::vector<WeightVector>{WeightVector{1}});
  EXPECT_EQ(s.points[0].fibers("L").front(), WeightVector{-1});
  EXPECT_EQ(s.points[1].fibers("L").front(), WeightVector{1});
  EXPECT_TRUE(s.zero_regular);
  EXPECT_TRUE(validate(s).empty());
}

TEST(Generators, ZeroRegularIsDecidedExactly) {
  // Moments 0 and 2: 0 is a moment value, so not regular.
  EXPECT_FALSE(make_projective_space({WeightVector{0}, WeightVector{1}}, 2, WeightVector{0}).zero_regular);
  // CP^2 with moments (-1,-1), (2,-1), (-1,2): 0 is interior, a regular value.
  EXPECT_TRUE(make_projective_space({WeightVector{0, 0}, WeightVector{1, 0}, WeightVector{0, 1}}, 3,
                                    WeightVector{-1, -1})
                  .zero_regular);
  // Moments (-1,-1), (1,1), (3,-1): 0 is on the edge from (-1,-1) to (1,1).
  EXPECT_FALSE(make_projective_space({WeightVector{0, 0}, WeightVector{1, 1}, WeightVector{2, 0}}, 2,
                                     WeightVector{-1, -1})
                   .zero_regular);
}

TEST(Generators, RepeatedWeights) {
  try {
    make_projective_space({WeightVector{1}, WeightVector{1}}, 1, WeightVector{0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRepeatedWeights);
  }
}

TEST(Generators, FlagManifold) {
  const auto s = make_flag_manifold(presets::a2(), WeightVector{1, 1});
  EXPECT_EQ(s.points.size(), 6u);
  EXPECT_EQ(s.dimension(), 3u);
  EXPECT_TRUE(validate(s).empty());
  EXPECT_THROW(make_flag_manifold(presets::su2(), WeightVector{0}), Error);
}

TEST(Generators, DualAndPowers) {
  auto s = make_flag_manifold(presets::su2(), WeightVector{2});
  s = dual_bundle(s, "L");
  EXPECT_EQ(*s.moment_bundle, "L^-1");
  s = tensor_power(s, "L^-1", 3);
  EXPECT_TRUE(s.has_bundle("L^-3"));
  EXPECT_EQ(s.points[0].fibers("L^-3").front(), WeightVector{-6});
  EXPECT_TRUE(validate(s).empty());
}

TEST(Generators, Product) {
  const auto a = make_flag_manifold(presets::su2(), WeightVector{1});
  const auto b = make_flag_manifold(presets::su2(), WeightVector{2});
  const auto p = product(a, b, true);
  EXPECT_EQ(p.points.size(), 4u);
  EXPECT_EQ(p.dimension(), 2u);
  EXPECT_TRUE(p.has_bundle("L*L"));
  EXPECT_EQ(*p.moment_bundle, "L*L");
  EXPECT_TRUE(validate(p).empty());
}

TEST(Validate, ReportsProblems) {
  auto s = make_projective_space({WeightVector{0}, WeightVector{1}}, 1, WeightVector{0});
  s.points[0].tangent.push_back(WeightVector{0});
  s.points[1].bundles.erase("trivial");
  const auto k = kinds(validate(s));
  EXPECT_NE(std::find(k.begin(), k.end(), "isolation"), k.end());
  EXPECT_NE(std::find(k.begin(), k.end(), "dimension"), k.end());
  EXPECT_NE(std::find(k.begin(), k.end(), "bundle"), k.end());
}

TEST(Validate, WeylSymmetry) {
  auto s = make_flag_manifold(presets::su2(), WeightVector{2});
  s.points[1].bundles["L"] = {WeightVector{4}};
  s.moment_bundle.reset();
  const auto ds = validate(s);
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(ds.front().kind, "weyl-symmetry");
  EXPECT_EQ(ds.front().weyl_element, "s1");
}

TEST(Validate, MomentBundleMismatch) {
  auto s = make_projective_space({WeightVector{0}, WeightVector{1}}, 2, WeightVector{-1});
  s.points[0].moment = {Rational(-2)};
  const auto k = kinds(validate(s));
  EXPECT_NE(std::find(k.begin(), k.end(), "moment-bundle"), k.end());
  const auto ok = check_moment_bundle(s, "L");
  EXPECT_EQ(ok, (std::vector<bool>{false, true}));
}

TEST(CriticalSet, GroupsByDominantConjugate) {
  const auto s = make_flag_manifold(presets::a2(), WeightVector{1, 1});
  const auto cs = critical_set(s);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(cs[0].is_zero());
  EXPECT_EQ(cs[1].beta, to_rational(WeightVector{1, 1}));
  EXPECT_EQ(cs[1].orbit.size(), 6u);
  EXPECT_EQ(cs[1].all_points().size(), 6u);
}

TEST(SpecIo, RoundTrip) {
  for (const auto& name : testing_util::shipped_specs()) {
    const auto s = load_spec(testing_util::spec_path(name));
    EXPECT_TRUE(validate(s).empty()) << name;
    const auto t = parse_spec(to_json(s));
    EXPECT_EQ(to_json(t), to_json(s)) << name;
  }
}

TEST(SpecIo, RationalMoments) {
  const std::string text = R"({"group": {"rank": 1, "gram": [[1]]}, "bundles": ["trivial"],
    "points": [{"id": "a", "tangent": [[1]], "moment": [[1, 2]], "bundles": {"trivial": [[0]]}},
               {"id": "b", "tangent": [[-1]], "moment": [[-3, 2]], "bundles": {"trivial": [[0]]}}]})";
  const auto s = parse_spec(text);
  EXPECT_EQ(s.points[0].moment[0], Rational(1, 2));
  EXPECT_EQ(parse_spec(to_json(s)).points[1].moment[0], Rational(-3, 2));
}

TEST(SpecIo, ErrorsNameTheField) {
  try {
    parse_spec(R"({"group": {"rank": 1, "gram": [[1]]}, "bundles": [], "points": [{"id": "a"}]})");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("$.points[0].tangent"), std::string::npos) << e.what();
  }
  try {
    parse_spec("{\n \"group\": \n}");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}
