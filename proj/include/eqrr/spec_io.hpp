// JSON encoding of manifold specs.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eqrr/geometry.hpp"

namespace eqrr {

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, path + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path + "." + key, "missing field");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline WeightVector as_weight(const json& j, const std::string& path, std::size_t rank) {
  if (!j.is_array()) field_error(path, "expected an array of integers");
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  if (c.size() != rank)
    field_error(path, "has " + std::to_string(c.size()) + " coordinates, rank is " + std::to_string(rank));
  return WeightVector(std::move(c));
}

inline std::vector<WeightVector> as_weights(const json& j, const std::string& path, std::size_t rank) {
  if (!j.is_array()) field_error(path, "expected an array of weights");
  std::vector<WeightVector> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_weight(j[i], path + "[" + std::to_string(i) + "]", rank));
  return out;
}

inline Rational as_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    const auto den = j[1].get<std::int64_t>();
    if (den == 0) field_error(path, "zero denominator");
    return Rational(j[0].get<std::int64_t>(), den);
  }
  field_error(path, "expected an integer or a [num, den] pair");
}

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline ManifoldSpec parse_spec(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  const json& g = detail::member(j, "group", "$");
  const auto rank = detail::as_int(detail::member(g, "rank", "$.group"), "$.group.rank");
  if (rank <= 0) detail::field_error("$.group.rank", "must be positive");
  const std::size_t r = static_cast<std::size_t>(rank);
  const json& gj = detail::member(g, "gram", "$.group");
  if (!gj.is_array() || gj.size() != r) detail::field_error("$.group.gram", "expected rank rows");
  std::vector<std::int64_t> gram;
  for (std::size_t i = 0; i < r; ++i) {
    const auto row = detail::as_weight(gj[i], "$.group.gram[" + std::to_string(i) + "]", r);
    gram.insert(gram.end(), row.coords().begin(), row.coords().end());
  }
  std::vector<WeightVector> simple;
  if (g.contains("simple_roots")) simple = detail::as_weights(g["simple_roots"], "$.group.simple_roots", r);

  ManifoldSpec spec;
  try {
    spec.datum = build_root_datum(r, IntMatrix(r, gram), simple);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("$.group: ") + e.what());
  }

  if (j.contains("zero_regular")) {
    if (!j["zero_regular"].is_boolean()) detail::field_error("$.zero_regular", "expected a boolean");
    spec.zero_regular = j["zero_regular"].get<bool>();
  }
  const json& bn = detail::member(j, "bundles", "$");
  if (!bn.is_array()) detail::field_error("$.bundles", "expected an array of names");
  for (std::size_t i = 0; i < bn.size(); ++i) {
    if (!bn[i].is_string()) detail::field_error("$.bundles[" + std::to_string(i) + "]", "expected a string");
    spec.bundle_names.push_back(bn[i].get<std::string>());
  }
  if (j.contains("moment_bundle") && !j["moment_bundle"].is_null()) {
    if (!j["moment_bundle"].is_string()) detail::field_error("$.moment_bundle", "expected a string");
    spec.moment_bundle = j["moment_bundle"].get<std::string>();
  }
  const json& pts = detail::member(j, "points", "$");
  if (!pts.is_array()) detail::field_error("$.points", "expected an array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string path = "$.points[" + std::to_string(i) + "]";
    const json& pj = pts[i];
    FixedPointDatum p;
    const json& id = detail::member(pj, "id", path);
    if (!id.is_string()) detail::field_error(path + ".id", "expected a string");
    p.id = id.get<std::string>();
    p.tangent = detail::as_weights(detail::member(pj, "tangent", path), path + ".tangent", r);
    const json& mj = detail::member(pj, "moment", path);
    if (!mj.is_array() || mj.size() != r) detail::field_error(path + ".moment", "expected rank entries");
    for (std::size_t k = 0; k < r; ++k)
      p.moment.push_back(detail::as_rational(mj[k], path + ".moment[" + std::to_string(k) + "]"));
    const json& bj = detail::member(pj, "bundles", path);
    if (!bj.is_object()) detail::field_error(path + ".bundles", "expected an object");
    for (auto it = bj.begin(); it != bj.end(); ++it)
      p.bundles[it.key()] = detail::as_weights(it.value(), path + ".bundles." + it.key(), r);
    spec.points.push_back(std::move(p));
  }
  return spec;
}

inline ManifoldSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline std::string to_json(const ManifoldSpec& spec) {
  using oj = nlohmann::ordered_json;
  auto weights = [](const std::vector<WeightVector>& ws) {
    oj a = oj::array();
    for (const auto& w : ws) a.push_back(w.coords());
    return a;
  };
  oj j;
  oj gram = oj::array();
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    oj row = oj::array();
    for (std::size_t k = 0; k < spec.rank(); ++k) row.push_back(spec.datum.gram()(i, k));
    gram.push_back(row);
  }
  j["group"] = {{"rank", spec.rank()}, {"gram", gram}, {"simple_roots", weights(spec.datum.simple_roots())}};
  j["zero_regular"] = spec.zero_regular;
  j["bundles"] = spec.bundle_names;
  if (spec.moment_bundle) j["moment_bundle"] = *spec.moment_bundle;
  oj pts = oj::array();
  for (const auto& p : spec.points) {
    oj pj;
    pj["id"] = p.id;
    pj["tangent"] = weights(p.tangent);
    oj m = oj::array();
    for (const auto& c : p.moment) {
      if (denominator(c) == 1)
        m.push_back(static_cast<std::int64_t>(numerator(c)));
      else
        m.push_back({static_cast<std::int64_t>(numerator(c)), static_cast<std::int64_t>(denominator(c))});
    }
    pj["moment"] = m;
    oj b = oj::object();
    for (const auto& n : spec.bundle_names)
      if (p.bundles.count(n)) b[n] = weights(p.bundles.at(n));
    pj["bundles"] = b;
    pts.push_back(pj);
  }
  j["points"] = pts;
  return j.dump(1) + "\n";
}

}  // namespace eqrr
