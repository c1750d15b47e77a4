#include <iostream>

#include <CLI11.hpp>

#include "eqrr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Riemann-Roch characters from fixed-point data"};
  app.require_subcommand(1);

  eqrr::JobConfig cfg;
  std::string direction, tiebreak;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "manifold spec (JSON)");
    sub->add_option("--bundle", cfg.bundle, "bundle name (default: the moment bundle)");
    sub->add_option("--direction", direction, "generic polarization direction v1,...,vr");
    sub->add_option("--tiebreak", tiebreak, "auxiliary direction for weights orthogonal to beta");
    sub->add_option("--cutoff", cfg.cutoff, "slab cutoff")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "check the invariants of a spec");
  validate->add_option("--spec", cfg.spec_path)->required();
  validate->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "csv", "json"}));

  auto* generate = app.add_subcommand("generate", "emit a spec for a standard example");
  generate->add_option("--kind", cfg.kind, "projective|flag|product")
      ->required()
      ->check(CLI::IsMember({"projective", "flag", "product"}));
  generate->add_option("--weights", cfg.weights, "action weights, points separated by ';'");
  generate->add_option("--degree", cfg.degree, "degree k of L = O(k)");
  generate->add_option("--shift", cfg.shift, "shift of the linearization");
  generate->add_option("--group", cfg.group, "su2|a2|b2|g2|a1a1|torusN");
  generate->add_option("--lambda", cfg.lambda, "dominant regular weight of the orbit");
  generate->add_option("--spec", cfg.spec_path, "first factor of a product");
  generate->add_option("--with", cfg.with_spec, "second factor of a product");
  generate->add_flag("--zero-regular", cfg.zero_regular, "declare 0 a regular value (product)");
  generate->add_flag("--dual", cfg.dual, "add the dual of the moment bundle and make it the moment bundle");
  generate->add_option("--max-power", cfg.max_power, "add tensor powers 2..N of the moment bundle");

  for (const char* name : {"compute", "decompose", "verify", "certify"}) {
    auto* sub = app.add_subcommand(name, "");
    common(sub);
    sub->get_option("--spec")->required();
  }
  app.get_subcommand("compute")->description("torus and G character of RR(M,E)");
  app.get_subcommand("decompose")->description("RR = RR_0 + sum of the localized characters");
  app.get_subcommand("verify")->description("run the identity suite");
  app.get_subcommand("certify")->description("positivity certificates of the strata");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!direction.empty()) cfg.direction = eqrr::detail::parse_vector(direction, "--direction");
    if (!tiebreak.empty()) cfg.tiebreak = eqrr::detail::parse_vector(tiebreak, "--tiebreak");
  } catch (const eqrr::Error& e) {
    std::cerr << e.what() << "\n";
    return eqrr::kExitUsage;
  }
  return eqrr::run(cfg, std::cout, std::cerr);
}
