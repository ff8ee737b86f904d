#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "expfact/error.hpp"
#include "expfact/io.hpp"
#include "expfact/run.hpp"

int main(int argc, char** argv) {
  using expfact::RunConfig;
  CLI::App app{"Factor holomorphic SL(2) matrices on circular domains as a product of two exponentials"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string method;
  std::optional<double> tol, spacing;
  std::optional<int> boundary_n;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--tol", tol, "Residual tolerance override");
    sub->add_option("--method", method, "Cousin splitting method")->check(CLI::IsMember({"exact", "dbar"}));
    sub->add_option("--boundary-n", boundary_n, "Boundary samples per circle");
    sub->add_option("--spacing", spacing, "Interior lattice spacing");
    sub->add_flag("--no-timing", cfg.omit_timing, "Omit wall-clock fields from manifests");
  };

  auto* fac = app.add_subcommand("factorize", "Factor an SL(2) instance file (several files give a corpus report)");
  fac->add_option("inputs", cfg.inputs, "Instance JSON files")->required();
  auto* gl2 = app.add_subcommand("factorize-gl2", "Factor a GL(2) instance with null-homotopic determinant");
  gl2->add_option("inputs", cfg.inputs, "Instance JSON files")->required();
  auto* bass = app.add_subcommand("bass", "Solve b + g a = e^h for rational a, b");
  bass->add_option("input", cfg.inputs, "JSON {a, b, domain, method}")->required()->expected(1);
  auto* logm = app.add_subcommand("logm", "Logarithm of a constant matrix with a prescribed eigenvalue logarithm");
  logm->add_option("input", cfg.inputs, "JSON {B, lambda}")->required()->expected(1);
  auto* self = app.add_subcommand("dbar-selftest", "Convergence table of the Cauchy-Green solver");
  auto* gen = app.add_subcommand("gen", "Write seeded random instances");
  gen->add_option("--seed", cfg.seed, "First seed")->capture_default_str();
  gen->add_option("--zeros", cfg.zeros, "Forced interior zeros of the lower-left entry")->capture_default_str();
  gen->add_option("--domain", cfg.domain, "disk, annulus or two-hole")
      ->check(CLI::IsMember({"disk", "annulus", "two-hole"}))
      ->capture_default_str();
  gen->add_option("--count", cfg.count, "Number of consecutive seeds")->capture_default_str();
  auto* ver = app.add_subcommand("verify", "Recheck stored factors against an instance");
  ver->add_option("input", cfg.inputs, "Instance JSON")->required()->expected(1);
  ver->add_option("--factors", cfg.factors_dir, "Directory with E_*.csv and F_*.csv (default: --out)");

  for (auto* sub : {fac, gl2, bass, logm, self, gen, ver}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.tol = tol;
  cfg.spacing = spacing;
  cfg.boundary_n = boundary_n;
  try {
    if (!method.empty()) cfg.method = expfact::io::split_method_from_string(method);
  } catch (const expfact::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  const int code = expfact::run(cfg);
  const auto manifest = cfg.out_dir / "manifest.json";
  std::cout << (code == 0 ? "pass" : code == 2 ? "gate failure" : "input error") << ": " << manifest.string() << '\n';
  return code;
}
