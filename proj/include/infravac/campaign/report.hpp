#pragma once
// Campaign reporting: pass/fail rows grouped into named check sets, a
// canonical JSON report (sorted keys, fixed layout, no timing data so that
// identical config + seed gives byte-identical output), and per-set CSVs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "infravac/campaign/config.hpp"

namespace infravac::campaign {

struct CheckRow {
  std::string claim;      // stable identifier, kebab-case
  bool passed = false;
  double measured = 0.0;  // the quantity compared against the threshold
  double threshold = 0.0;
  std::string detail;     // free-form context (comparison sense, witnesses)
};

struct CheckSet {
  std::string name;
  std::vector<CheckRow> rows;
  std::map<std::string, double> metrics;        // auxiliary deterministic numbers
  std::map<std::string, std::string> artifacts; // extra files: name -> content
  double elapsed_seconds = 0.0;                 // excluded from serialized output

  bool passed() const {
    for (const CheckRow& r : rows)
      if (!r.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline nlohmann::json config_json(const CampaignConfig& cfg) {
  nlohmann::json j;
  j["kappa"] = detail::fmt_double(cfg.kappa);
  j["alpha"] = detail::fmt_double(cfg.alpha);
  j["v_max"] = detail::fmt_double(cfg.v_max);
  j["n_shells"] = cfg.n_shells;
  j["l_max"] = cfg.l_max;
  j["seed"] = cfg.seed;
  nlohmann::json vels = nlohmann::json::array();
  for (const Vec3& v : cfg.velocities)
    vels.push_back({detail::fmt_double(v[0]), detail::fmt_double(v[1]),
                    detail::fmt_double(v[2])});
  j["velocities"] = vels;
  j["sector_depth"] = cfg.sector_depth;
  j["witness_w"] = {detail::fmt_double(cfg.witness_w[0]),
                    detail::fmt_double(cfg.witness_w[1]),
                    detail::fmt_double(cfg.witness_w[2])};
  j["witness_w_prime"] = {detail::fmt_double(cfg.witness_w_prime[0]),
                          detail::fmt_double(cfg.witness_w_prime[1]),
                          detail::fmt_double(cfg.witness_w_prime[2])};
  j["witness_sigma"] = detail::fmt_double(cfg.witness_sigma);
  j["witness_amplitude"] = detail::fmt_double(cfg.witness_amplitude);
  j["witness_exclusion_deg"] = detail::fmt_double(cfg.witness_exclusion_deg);
  j["offspan_trials"] = cfg.offspan_trials;
  j["commutator_max_exponent"] = cfg.commutator_max_exponent;
  j["oracle_actions"] = cfg.oracle_actions;
  j["group_table"] = cfg.group_table;
  nlohmann::json t;
  t["gram"] = detail::fmt_double(cfg.tol.gram);
  t["transversality"] = detail::fmt_double(cfg.tol.transversality);
  t["gradient_energy"] = detail::fmt_double(cfg.tol.gradient_energy);
  t["map_identity"] = detail::fmt_double(cfg.tol.map_identity);
  t["branch_norm"] = detail::fmt_double(cfg.tol.branch_norm);
  t["truncated_norm"] = detail::fmt_double(cfg.tol.truncated_norm);
  t["increment"] = detail::fmt_double(cfg.tol.increment);
  t["constant_stability_pct"] = detail::fmt_double(cfg.tol.constant_stability_pct);
  t["linear_r2"] = detail::fmt_double(cfg.tol.linear_r2);
  t["l2_routes"] = detail::fmt_double(cfg.tol.l2_routes);
  t["witness"] = detail::fmt_double(cfg.tol.witness);
  t["commutator"] = detail::fmt_double(cfg.tol.commutator);
  t["sector_certify"] = detail::fmt_double(cfg.tol.sector_certify);
  j["tolerances"] = t;
  return j;
}

// Numbers are serialized through %.17g strings: round-trip exact and immune
// to any library float-formatting drift between runs.
inline nlohmann::json report_json(const CampaignConfig& cfg,
                                  const std::vector<CheckSet>& sets) {
  nlohmann::json j;
  j["config"] = config_json(cfg);
  nlohmann::json checks;
  bool all = true;
  for (const CheckSet& set : sets) {
    nlohmann::json s;
    nlohmann::json rows = nlohmann::json::array();
    for (const CheckRow& r : set.rows) {
      nlohmann::json row;
      row["claim"] = r.claim;
      row["passed"] = r.passed;
      row["measured"] = detail::fmt_double(r.measured);
      row["threshold"] = detail::fmt_double(r.threshold);
      row["detail"] = r.detail;
      rows.push_back(row);
      all = all && r.passed;
    }
    s["rows"] = rows;
    nlohmann::json metrics;
    for (const auto& [k, v] : set.metrics) metrics[k] = detail::fmt_double(v);
    s["metrics"] = metrics;
    s["passed"] = set.passed();
    checks[set.name] = s;
  }
  j["checks"] = checks;
  j["all_passed"] = all;
  return j;
}

inline std::string render_report(const CampaignConfig& cfg,
                                 const std::vector<CheckSet>& sets) {
  return report_json(cfg, sets).dump(2) + "\n";
}

inline void write_check_csv(const std::filesystem::path& path,
                            const CheckSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot write " + path.string());
  out << "claim,passed,measured,threshold,detail\n";
  for (const CheckRow& r : set.rows)
    out << detail::csv_quote(r.claim) << ',' << (r.passed ? 1 : 0) << ','
        << detail::fmt_double(r.measured) << ','
        << detail::fmt_double(r.threshold) << ','
        << detail::csv_quote(r.detail) << '\n';
}

// Writes report.json plus one <set>.csv per check set into cfg.out_dir.
inline void write_campaign_outputs(const CampaignConfig& cfg,
                                   const std::vector<CheckSet>& sets) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    if (!out)
      throw std::runtime_error("report: cannot write " +
                               (dir / "report.json").string());
    out << render_report(cfg, sets);
  }
  for (const CheckSet& set : sets) {
    write_check_csv(dir / (set.name + ".csv"), set);
    for (const auto& [file, content] : set.artifacts) {
      std::ofstream out(dir / file);
      if (!out)
        throw std::runtime_error("report: cannot write " + (dir / file).string());
      out << content;
    }
  }
}

}  // namespace infravac::campaign
