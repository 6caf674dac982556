#pragma once
// Command-line front end.  Exit codes: 0 when every claim holds, 1 when any
// claim fails, 2 for malformed configuration or unusable inputs.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infravac/campaign/campaign.hpp"

namespace infravac::campaign {

inline void print_results(const std::vector<CheckSet>& sets) {
  int total = 0, failed = 0;
  for (const CheckSet& set : sets) {
    std::printf("== %s (%.2f s)\n", set.name.c_str(), set.elapsed_seconds);
    for (const CheckRow& r : set.rows) {
      ++total;
      if (!r.passed) ++failed;
      std::printf("[%s] %s/%s  measured=%.6g  threshold=%.6g  %s\n",
                  r.passed ? "PASS" : "FAIL", set.name.c_str(),
                  r.claim.c_str(), r.measured, r.threshold, r.detail.c_str());
    }
  }
  if (failed == 0)
    std::printf("campaign: all %d claims hold\n", total);
  else
    std::printf("campaign: %d of %d claims failed\n", failed, total);
}

inline int run_cli(int argc, char** argv) {
  CLI::App app{"infra-vacuum verification campaign"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--tolerance-scale", tol_scale,
                 "multiply all error tolerances by this factor");

  // fallthrough lets the shared options appear after the subcommand name
  app.add_subcommand("groups", "finite-group normalizer and class claims")
      ->fallthrough();
  app.add_subcommand("harmonics-check", "tangential harmonic basis claims")
      ->fallthrough();
  app.add_subcommand("kpr-verify", "scaling-map identity and norm claims")
      ->fallthrough();
  app.add_subcommand("dressing-converge", "dressing family convergence claims")
      ->fallthrough();
  app.add_subcommand("witness", "superselection witness claims")->fallthrough();
  app.add_subcommand("sectors-verify", "sector label and class claims")
      ->fallthrough();
  app.add_subcommand("all", "every check set in sequence")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CampaignConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!(tol_scale > 0.0))
      throw ConfigError("configuration: tolerance scale must be positive");
    cfg.tol.scale(tol_scale);
    cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  }

  std::vector<CheckSet> sets;
  try {
    if (app.got_subcommand("all")) sets = run_all(cfg);
    else if (app.got_subcommand("groups")) sets = {run_groups(cfg)};
    else if (app.got_subcommand("harmonics-check")) sets = {run_harmonics(cfg)};
    else if (app.got_subcommand("kpr-verify")) sets = {run_kpr(cfg)};
    else if (app.got_subcommand("dressing-converge")) sets = {run_dressing(cfg)};
    else if (app.got_subcommand("witness")) sets = {run_witness(cfg)};
    else if (app.got_subcommand("sectors-verify")) sets = {run_sectors(cfg)};
  } catch (const std::exception& e) {
    CheckSet s;
    s.name = "runtime";
    s.rows.push_back(
        detail::make_row("runner-completed", false, 0.0, 1.0, e.what()));
    sets.push_back(std::move(s));
  }

  try {
    write_campaign_outputs(cfg, sets);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "output error: %s\n", e.what());
    return 2;
  }

  print_results(sets);
  for (const CheckSet& set : sets)
    if (!set.passed()) return 1;
  return 0;
}

}  // namespace infravac::campaign
