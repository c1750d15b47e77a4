// Command-line jobs: validate, generate, compute, decompose, verify and
// certify.  run() writes the report to the given stream and returns the exit
// status; tools/eqrr_cli.cpp only parses flags into a JobConfig.

#pragma once

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqrr/localization.hpp"
#include "eqrr/spec_io.hpp"

namespace eqrr {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitIdentity = 3,
  kExitCompute = 4,
};

struct JobConfig {
  std::string command;
  std::string spec_path;
  std::string bundle;
  std::optional<WeightVector> direction;
  std::optional<WeightVector> tiebreak;
  std::int64_t cutoff = 30;
  std::string format = "text";

  // generate
  std::string kind;
  std::string weights;  // "0;1" or "0,0;1,0;0,1"
  std::int64_t degree = 1;
  std::string shift;
  std::string group = "su2";
  std::string lambda;
  std::string with_spec;  // second factor of a product
  bool zero_regular = false;
  bool dual = false;
  std::int64_t max_power = 1;
};

namespace detail {

inline WeightVector parse_vector(const std::string& s, const std::string& what) {
  std::vector<std::int64_t> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoll(tok, &used));
      while (used < tok.size() && tok[used] == ' ') ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, what + ": cannot read '" + tok + "' as an integer");
    }
  }
  if (c.empty()) throw Error(ErrorCode::kInvalidArgument, what + " is empty");
  return WeightVector(std::move(c));
}

inline std::vector<WeightVector> parse_vector_list(const std::string& s, const std::string& what) {
  std::vector<WeightVector> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(parse_vector(tok, what));
  return out;
}

inline RootDatum preset(const std::string& name) {
  if (name == "su2") return presets::su2();
  if (name == "a2") return presets::a2();
  if (name == "b2") return presets::b2();
  if (name == "g2") return presets::g2();
  if (name == "a1a1") return presets::a1a1();
  if (name.rfind("torus", 0) == 0 && name.size() > 5) return presets::torus(std::stoul(name.substr(5)));
  throw Error(ErrorCode::kInvalidArgument, "unknown group preset '" + name + "'");
}

inline nlohmann::ordered_json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline std::string csv_weight(const WeightVector& a) {
  std::string s = "\"";
  for (std::size_t i = 0; i < a.rank(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "\"";
}

class Report {
 public:
  explicit Report(std::string format) : format_(std::move(format)) {
    if (format_ != "text" && format_ != "csv" && format_ != "json")
      throw Error(ErrorCode::kInvalidArgument, "unknown format '" + format_ + "'");
    json_ = nlohmann::ordered_json::object();
  }

  void line(const std::string& key, const std::string& value) {
    if (format_ == "json") json_[key] = value;
    else if (format_ == "csv") text_ += "# " + key + " = " + value + "\n";
    else text_ += key + " = " + value + "\n";
  }

  void character(const std::string& title, const LaurentElement& x) {
    if (format_ == "json") {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& [a, c] : x.terms()) arr.push_back({{"weight", a.coords()}, {"multiplicity", integer_json(c)}});
      json_[title] = arr;
    } else if (format_ == "csv") {
      text_ += "# " + title + "\nweight_coords,multiplicity\n";
      for (const auto& [a, c] : x.terms()) text_ += csv_weight(a) + "," + c.str() + "\n";
    } else {
      text_ += "# " + title + "\n" + x.str();
    }
  }

  void character(const std::string& title, const GCharacter& g) {
    if (format_ == "json") {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& [l, m] : g.mults()) arr.push_back({{"highest_weight", l.coords()}, {"multiplicity", integer_json(m)}});
      json_[title] = {{"window", g.window().str()}, {"irreducibles", arr}};
    } else if (format_ == "csv") {
      text_ += "# " + title + " (window " + g.window().str() + ")\nhighest_weight,multiplicity\n";
      for (const auto& [l, m] : g.mults()) text_ += csv_weight(l) + "," + m.str() + "\n";
    } else {
      text_ += "# " + title + " (window " + g.window().str() + ")\n" + g.str();
    }
  }

  void record(const VerificationRecord& r) {
    if (!r.passed()) failed_ = true;
    const std::string disc = r.first_discrepancy ? r.first_discrepancy->str() : "-";
    if (format_ == "json") {
      json_["records"].push_back({{"identity", r.identity},
                                  {"window", r.window},
                                  {"status", to_string(r.status)},
                                  {"first_discrepancy", disc},
                                  {"detail", r.detail}});
    } else if (format_ == "csv") {
      if (!records_header_) text_ += "identity,window,status,first_discrepancy,detail\n";
      records_header_ = true;
      text_ += "\"" + r.identity + "\",\"" + r.window + "\"," + to_string(r.status) + ",\"" + disc +
               "\",\"" + r.detail + "\"\n";
    } else {
      text_ += "[" + std::string(to_string(r.status)) + "] " + r.identity + " | window " + r.window +
               " | first discrepancy " + disc + (r.detail.empty() ? "" : " | " + r.detail) + "\n";
    }
  }

  bool failed() const { return failed_; }

  std::string str() const { return format_ == "json" ? json_.dump(1) + "\n" : text_; }

 private:
  std::string format_;
  std::string text_;
  nlohmann::ordered_json json_;
  bool failed_ = false;
  bool records_header_ = false;
};

inline VerificationRecord compare(const std::string& name, const GCharacter& lhs, const GCharacter& rhs,
                                  const std::string& detail = "") {
  const ExactWindow w = lhs.window().intersect(rhs.window());
  VerificationRecord r{name, w.str(), VerificationStatus::kPass, std::nullopt, detail};
  r.first_discrepancy = first_difference(lhs.restricted_to(w), rhs.restricted_to(w));
  if (r.first_discrepancy) r.status = VerificationStatus::kFail;
  return r;
}

inline VerificationRecord compare(const std::string& name, const LaurentElement& lhs,
                                  const LaurentElement& rhs, const std::string& detail = "") {
  VerificationRecord r{name, "all", VerificationStatus::kPass, first_difference(lhs, rhs), detail};
  if (r.first_discrepancy) r.status = VerificationStatus::kFail;
  return r;
}

// The dominant regular lambda with fibres w(lambda) at the points, when the
// bundle looks like the Borel-Weil line bundle of a flag manifold.
inline std::optional<WeightVector> borel_weil_weight(const ManifoldSpec& spec, const std::string& bundle) {
  if (spec.datum.is_torus() || spec.points.size() != spec.datum.weyl().size() ||
      spec.dimension() != spec.datum.positive_roots().size())
    return std::nullopt;
  std::vector<WeightVector> fibers;
  for (const auto& p : spec.points) {
    if (p.fibers(bundle).size() != 1) return std::nullopt;
    fibers.push_back(p.fibers(bundle).front());
  }
  // lambda is the fibre at the point whose tangent space is the positive roots.
  std::optional<WeightVector> lambda;
  auto positive = spec.datum.positive_roots();
  std::sort(positive.begin(), positive.end());
  for (const auto& p : spec.points) {
    auto t = p.tangent;
    std::sort(t.begin(), t.end());
    if (t == positive) lambda = p.fibers(bundle).front();
  }
  if (!lambda || !spec.datum.is_regular_dominant(*lambda)) return std::nullopt;
  std::sort(fibers.begin(), fibers.end());
  auto orbit = weyl_orbit(*lambda, spec.datum);
  if (orbit != fibers) return std::nullopt;
  return lambda;
}

struct Loaded {
  ManifoldSpec spec;
  std::string bundle;
  WeightVector gamma;
};

inline Loaded load_for_compute(const JobConfig& cfg) {
  if (cfg.spec_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--spec is required");
  if (cfg.cutoff < 1) throw Error(ErrorCode::kInvalidArgument, "--cutoff must be at least 1");
  Loaded l{load_spec(cfg.spec_path), cfg.bundle, {}};
  auto diags = validate(l.spec);
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += "\n  " + d.str();
    throw Error(ErrorCode::kParseError, "spec does not validate:" + msg);
  }
  if (l.bundle.empty()) l.bundle = l.spec.moment_bundle ? *l.spec.moment_bundle : l.spec.bundle_names.at(0);
  l.spec.require_bundle(l.bundle);
  if (cfg.direction) {
    l.spec.datum.check(*cfg.direction);
    l.gamma = *cfg.direction;
  } else {
    auto dirs = generic_directions(l.spec, 1);
    if (dirs.empty()) throw Error(ErrorCode::kOrthogonalWeight, "no generic direction found; pass --direction");
    l.gamma = dirs.front();
  }
  if (cfg.tiebreak) l.spec.datum.check(*cfg.tiebreak);
  return l;
}

inline ManifoldSpec generate(const JobConfig& cfg) {
  ManifoldSpec spec;
  if (cfg.kind == "projective") {
    auto w = parse_vector_list(cfg.weights, "--weights");
    if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "--weights is required");
    WeightVector shift = cfg.shift.empty() ? WeightVector::zero(w.front().rank())
                                           : parse_vector(cfg.shift, "--shift");
    spec = make_projective_space(w, cfg.degree, shift);
  } else if (cfg.kind == "flag") {
    const RootDatum d = preset(cfg.group);
    spec = make_flag_manifold(d, parse_vector(cfg.lambda, "--lambda"));
  } else if (cfg.kind == "product") {
    if (cfg.spec_path.empty() || cfg.with_spec.empty())
      throw Error(ErrorCode::kInvalidArgument, "product needs --spec and --with");
    spec = product(load_spec(cfg.spec_path), load_spec(cfg.with_spec), cfg.zero_regular);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown --kind '" + cfg.kind + "'");
  }
  std::string base = spec.moment_bundle ? *spec.moment_bundle : "";
  if (cfg.dual) {
    if (base.empty()) throw Error(ErrorCode::kInvalidArgument, "--dual needs a moment bundle");
    spec = dual_bundle(spec, base);
    base = dual_name(base);
  }
  for (std::int64_t k = 2; k <= cfg.max_power; ++k) {
    if (base.empty()) throw Error(ErrorCode::kInvalidArgument, "--max-power needs a moment bundle");
    spec = tensor_power(spec, base, k);
  }
  return spec;
}

inline void verify_suite(const Loaded& l, const JobConfig& cfg, Report& rep) {
  const auto& spec = l.spec;
  const auto& d = spec.datum;
  const bool nonabelian = !d.is_torus();

  const LaurentElement rr = rr_character(spec, l.bundle, l.gamma, cfg.cutoff);
  rep.character("RR (torus character)", rr);
  const GCharacter total = decompose_invariant(rr, d);
  if (nonabelian) rep.character("RR^G", total);
  rep.line("invariant_part", invariant_part(total).str());

  // Polarization independence against -gamma and further generic directions.
  std::vector<WeightVector> dirs{-l.gamma};
  for (const auto& v : generic_directions(spec, 5))
    if (v != l.gamma && v != -l.gamma && dirs.size() < 3) dirs.push_back(v);
  for (const auto& v : dirs)
    rep.record(compare("polarization independence " + l.gamma.str() + " vs " + v.str(), rr,
                       rr_character(spec, l.bundle, v, cfg.cutoff)));

  if (auto lambda = borel_weil_weight(spec, l.bundle))
    rep.record(compare("Borel-Weil chi" + lambda->str(), rr,
                       restrict(GCharacter::irreducible(d, *lambda))));

  if (spec.zero_regular) {
    const Decomposition dec = decompose(spec, l.bundle, l.gamma, cfg.tiebreak, cfg.cutoff);
    rep.record(dec.identity);
    const GCharacter g0 = hol(dec.rr0, d);
    VerificationRecord inv{"invariant part of RR_0", g0.window().str(),
                           VerificationStatus::kComputedUnverified, std::nullopt,
                           "[RR_0]^G = " + invariant_part(g0).str() +
                               "; multiplicities away from 0 have no independent check"};
    rep.record(inv);

    std::vector<LocalizedCharacter> family;
    for (const auto& [b, loc] : dec.strata) family.push_back(loc);
    std::vector<std::pair<Stratum, GCharacter>> induced;
    for (const auto& s : critical_set(spec)) {
      if (s.is_zero()) continue;
      induced.emplace_back(s, induce_localized(family, d, s.beta));
    }
    for (const auto& [s, g] : induced) {
      const std::string tag = "beta = " + to_string(s.beta);
      if (nonabelian) {
        GCharacter direct = total - g0;
        for (const auto& [s2, g2] : induced)
          if (s2.beta != s.beta) direct = direct - g2;
        rep.record(compare("induction formula at " + tag, g, direct));
        // Same stratum through the dominant member only.
        const LocalizedCharacter& dom = dec.strata.at(s.beta);
        std::vector<WeightVector> above;
        for (const auto& a : d.positive_roots())
          if (d.pair(s.beta, a) > 0) above.push_back(a);
        const PolarizedSeries twisted = wedge_dual(above, d.rank()) * dom.series;
        rep.record(compare("induction through the stabilizer at " + tag, g, hol(twisted, d)));
      }
      const auto cert = positivity_certificate(spec, l.bundle, s.beta);
      std::string detail = "eta = " + rational_str(cert.eta) + ", <theta,beta> = " + rational_str(cert.theta_beta);
      if (cert.strictly_positive) {
        const bool ok = multiplicity_support_check(dec.strata.at(s.beta).series, s.beta, cert.eta, d);
        rep.record({"support of RR_beta at " + tag, "series window",
                    ok ? VerificationStatus::kPass : VerificationStatus::kFail, std::nullopt, detail});
      }
      if (cert.holds) {
        const Integer inv_b = invariant_part(g);
        rep.record({"vanishing of [RR_beta]^G at " + tag, g.window().str(),
                    inv_b == 0 ? VerificationStatus::kPass : VerificationStatus::kFail, std::nullopt,
                    detail + ", invariant part " + inv_b.str()});
      }
    }
    if (is_su2(d)) {
      const ThetaReport th = su2_theta(spec, l.bundle, cfg.cutoff);
      rep.record(th.identity);
      if (th.high_support)
        rep.record({"theta supported in degrees >= 3", th.induced.window().str(),
                    th.induced_has_no_trivial ? VerificationStatus::kPass : VerificationStatus::kFail,
                    std::nullopt, ""});
    }
  }

  const RigidityReport rig = rigidity_check(spec, l.bundle, l.gamma);
  if (rig.rigid) rep.record(rig.check);
}

}  // namespace detail

inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    detail::Report rep(cfg.format);
    if (cfg.command == "generate") {
      out << to_json(detail::generate(cfg));
      return kExitOk;
    }
    if (cfg.command == "validate") {
      if (cfg.spec_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--spec is required");
      const ManifoldSpec spec = load_spec(cfg.spec_path);
      const auto diags = validate(spec);
      for (const auto& d : diags) err << d.str() << "\n";
      if (!diags.empty()) return kExitValidation;
      rep.line("status", "valid");
      rep.line("points", std::to_string(spec.points.size()));
      out << rep.str();
      return kExitOk;
    }

    detail::Loaded l;
    try {
      l = detail::load_for_compute(cfg);
    } catch (const Error& e) {
      err << e.what() << "\n";
      if (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kUnknownBundle ||
          e.code() == ErrorCode::kNonCrystallographic || e.code() == ErrorCode::kNonIntegralRho ||
          e.code() == ErrorCode::kNotPositiveDefinite)
        return kExitValidation;
      return kExitUsage;
    }

    try {
      if (cfg.command == "compute") {
        rep.line("direction", l.gamma.str());
        const LaurentElement rr = rr_character(l.spec, l.bundle, l.gamma, cfg.cutoff);
        rep.character("RR", rr);
        if (!l.spec.datum.is_torus()) rep.character("RR^G", decompose_invariant(rr, l.spec.datum));
      } else if (cfg.command == "decompose") {
        const Decomposition dec = decompose(l.spec, l.bundle, l.gamma, cfg.tiebreak, cfg.cutoff);
        rep.line("direction", l.gamma.str());
        rep.character("RR", dec.rr);
        for (const auto& [b, loc] : dec.strata) {
          std::string prov;
          for (const auto& p : loc.provenance) prov += (prov.empty() ? "" : ",") + p;
          rep.line("stratum " + to_string(b),
                   "direction " + loc.direction.str() +
                       (loc.tiebreak ? " tiebreak " + loc.tiebreak->str() : "") + " points " + prov +
                       " cutoff " + std::to_string(loc.series.cutoff()));
          rep.character("RR_" + to_string(b), loc.series.terms());
        }
        rep.line("RR_0 window", dec.rr0.window.str());
        rep.character("RR_0", dec.rr0.terms);
        if (!l.spec.datum.is_torus()) rep.character("Hol(RR_0)", hol(dec.rr0, l.spec.datum));
        rep.record(dec.identity);
      } else if (cfg.command == "verify") {
        detail::verify_suite(l, cfg, rep);
      } else if (cfg.command == "certify") {
        for (const auto& s : critical_set(l.spec)) {
          if (s.is_zero()) continue;
          const auto c = positivity_certificate(l.spec, l.bundle, s.beta);
          const std::string b = to_string(s.beta);
          rep.line("beta " + b + " eta", rational_str(c.eta));
          rep.line("beta " + b + " strictly_positive", c.strictly_positive ? "true" : "false");
          rep.line("beta " + b + " theta_pairing", rational_str(c.theta_beta));
          rep.line("beta " + b + " min_power", c.min_power ? std::to_string(*c.min_power) : "none");
          rep.line("beta " + b + " condition_holds", c.holds ? "true" : "false");
        }
      } else {
        err << "unknown command '" << cfg.command << "'\n";
        return kExitUsage;
      }
    } catch (const Error& e) {
      err << e.what() << "\n";
      return kExitCompute;
    }
    out << rep.str();
    return rep.failed() ? kExitIdentity : kExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == ErrorCode::kParseError) return kExitValidation;
    return kExitUsage;
  }
}

}  // namespace eqrr
