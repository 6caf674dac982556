#pragma once
// Campaign configuration: baked-in defaults reproducing the reference scale,
// a small structured-text loader (sections of key = value lines), and strict
// validation.  Unknown keys are errors so typos cannot silently fall back to
// defaults.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infravac/vec3.hpp"

namespace infravac::campaign {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Error tolerances per claim family.  scale() multiplies the absolute /
// relative error bounds; quality floors (linear_r2) are left untouched.
struct Tolerances {
  double gram = 1e-8;
  double transversality = 1e-12;
  double gradient_energy = 1e-8;
  double map_identity = 1e-12;
  double branch_norm = 1e-12;
  double truncated_norm = 1e-6;
  double increment = 1e-3;
  double constant_stability_pct = 1.0;
  double linear_r2 = 0.999;
  double l2_routes = 1e-6;
  double witness = 1e-6;
  double commutator = 1e-3;
  double sector_certify = 1e-3;

  void scale(double x) {
    gram *= x;
    transversality *= x;
    gradient_energy *= x;
    map_identity *= x;
    branch_norm *= x;
    truncated_norm *= x;
    increment *= x;
    constant_stability_pct *= x;
    l2_routes *= x;
    witness *= x;
    commutator *= x;
    sector_certify *= x;
  }
};

struct CampaignConfig {
  double kappa = 1.0;
  double alpha = 0.1;
  double v_max = 0.95;
  int n_shells = 24;
  int l_max = 24;
  std::uint64_t seed = 247;

  std::vector<Vec3> velocities = {
      {0.0, 0.0, 0.3}, {0.25, 0.0, 0.0}, {0.1, 0.2, -0.1}};
  int sector_depth = 16;

  Vec3 witness_w{0.0, 0.0, 0.3};
  Vec3 witness_w_prime{0.25, 0.0, 0.0};
  double witness_sigma = 1.0 / 16.0;
  double witness_amplitude = 1.0;
  double witness_exclusion_deg = 15.0;
  int offspan_trials = 1000;
  int commutator_max_exponent = 12;

  int oracle_actions = 200;
  std::string group_table;  // optional external table; empty = catalogue only

  std::string out_dir = "campaign-out";
  Tolerances tol;

  void validate() const {
    const auto bad = [](const std::string& what) { throw ConfigError(what); };
    if (!(kappa > 0.0)) bad("configuration: kappa must be positive");
    if (!(alpha > 0.0)) bad("configuration: alpha must be positive");
    if (!(v_max > 0.0 && v_max < 1.0))
      bad("configuration: v_max must lie in (0, 1)");
    if (n_shells < 2 || n_shells > 4096)
      bad("configuration: n_shells out of range [2, 4096]");
    if (l_max < 1 || l_max > 256) bad("configuration: l_max out of range");
    if (sector_depth < 2 || sector_depth > n_shells)
      bad("configuration: sector depth outside [2, n_shells]");
    if (velocities.empty()) bad("configuration: at least one velocity");
    for (const Vec3& v : velocities)
      if (!(norm(v) <= v_max))
        bad("configuration: velocity speed " + std::to_string(norm(v)) +
            " exceeds v_max " + std::to_string(v_max));
    for (const Vec3* v : {&witness_w, &witness_w_prime})
      if (!(norm(*v) <= v_max))
        bad("configuration: witness velocity speed " + std::to_string(norm(*v)) +
            " exceeds v_max " + std::to_string(v_max));
    if (!(witness_sigma > 0.0 && witness_sigma < kappa))
      bad("configuration: witness sigma outside (0, kappa)");
    if (!(witness_exclusion_deg > 0.0 && witness_exclusion_deg < 90.0))
      bad("configuration: witness exclusion angle outside (0, 90)");
    if (offspan_trials < 1) bad("configuration: offspan_trials must be >= 1");
    if (commutator_max_exponent < 3 || commutator_max_exponent > 24)
      bad("configuration: commutator_max_exponent outside [3, 24]");
    if (oracle_actions < 1) bad("configuration: oracle_actions must be >= 1");
    if (out_dir.empty()) bad("configuration: output directory must be set");
    for (const double t :
         {tol.gram, tol.transversality, tol.gradient_energy, tol.map_identity,
          tol.branch_norm, tol.truncated_norm, tol.increment,
          tol.constant_stability_pct, tol.l2_routes, tol.witness,
          tol.commutator, tol.sector_certify})
      if (!(t > 0.0)) bad("configuration: tolerances must be positive");
    if (!(tol.linear_r2 > 0.0 && tol.linear_r2 < 1.0))
      bad("configuration: linear_r2 floor must lie in (0, 1)");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_double(const std::string& raw, const std::string& key) {
  std::istringstream in(raw);
  double v = 0.0;
  if (!(in >> v) || !(in >> std::ws).eof())
    throw ConfigError("configuration: bad number for '" + key + "': " + raw);
  return v;
}

inline long long parse_int(const std::string& raw, const std::string& key) {
  std::istringstream in(raw);
  long long v = 0;
  if (!(in >> v) || !(in >> std::ws).eof())
    throw ConfigError("configuration: bad integer for '" + key + "': " + raw);
  return v;
}

inline Vec3 parse_vec3(const std::string& raw, const std::string& key) {
  std::istringstream in(raw);
  Vec3 v{0.0, 0.0, 0.0};
  if (!(in >> v[0] >> v[1] >> v[2]) || !(in >> std::ws).eof())
    throw ConfigError("configuration: expected three numbers for '" + key +
                      "': " + raw);
  return v;
}

}  // namespace detail

// Sections [scale] [sectors] [witness] [groups] [tolerances] [output];
// '#' and ';' start comments; a repeated 'velocity' key appends (the first
// occurrence replaces the default list).
inline CampaignConfig parse_config(std::istream& in) {
  CampaignConfig cfg;
  std::string section;
  std::string line;
  bool velocities_reset = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("configuration: unterminated section at line " +
                          std::to_string(line_no));
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("configuration: expected key = value at line " +
                        std::to_string(line_no));
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const std::string where = section.empty() ? key : section + "." + key;

    if (section == "scale") {
      if (key == "kappa") cfg.kappa = detail::parse_double(value, where);
      else if (key == "alpha") cfg.alpha = detail::parse_double(value, where);
      else if (key == "v_max") cfg.v_max = detail::parse_double(value, where);
      else if (key == "n_shells")
        cfg.n_shells = static_cast<int>(detail::parse_int(value, where));
      else if (key == "l_max")
        cfg.l_max = static_cast<int>(detail::parse_int(value, where));
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(detail::parse_int(value, where));
      else throw ConfigError("configuration: unknown key '" + where + "'");
    } else if (section == "sectors") {
      if (key == "velocity") {
        if (!velocities_reset) {
          cfg.velocities.clear();
          velocities_reset = true;
        }
        cfg.velocities.push_back(detail::parse_vec3(value, where));
      } else if (key == "depth") {
        cfg.sector_depth = static_cast<int>(detail::parse_int(value, where));
      } else throw ConfigError("configuration: unknown key '" + where + "'");
    } else if (section == "witness") {
      if (key == "w") cfg.witness_w = detail::parse_vec3(value, where);
      else if (key == "w_prime")
        cfg.witness_w_prime = detail::parse_vec3(value, where);
      else if (key == "sigma")
        cfg.witness_sigma = detail::parse_double(value, where);
      else if (key == "amplitude")
        cfg.witness_amplitude = detail::parse_double(value, where);
      else if (key == "exclusion_deg")
        cfg.witness_exclusion_deg = detail::parse_double(value, where);
      else if (key == "offspan_trials")
        cfg.offspan_trials = static_cast<int>(detail::parse_int(value, where));
      else if (key == "commutator_max_exponent")
        cfg.commutator_max_exponent =
            static_cast<int>(detail::parse_int(value, where));
      else throw ConfigError("configuration: unknown key '" + where + "'");
    } else if (section == "groups") {
      if (key == "oracle_actions")
        cfg.oracle_actions = static_cast<int>(detail::parse_int(value, where));
      else if (key == "table") cfg.group_table = value;
      else throw ConfigError("configuration: unknown key '" + where + "'");
    } else if (section == "tolerances") {
      double* slot = nullptr;
      if (key == "gram") slot = &cfg.tol.gram;
      else if (key == "transversality") slot = &cfg.tol.transversality;
      else if (key == "gradient_energy") slot = &cfg.tol.gradient_energy;
      else if (key == "map_identity") slot = &cfg.tol.map_identity;
      else if (key == "branch_norm") slot = &cfg.tol.branch_norm;
      else if (key == "truncated_norm") slot = &cfg.tol.truncated_norm;
      else if (key == "increment") slot = &cfg.tol.increment;
      else if (key == "constant_stability_pct")
        slot = &cfg.tol.constant_stability_pct;
      else if (key == "linear_r2") slot = &cfg.tol.linear_r2;
      else if (key == "l2_routes") slot = &cfg.tol.l2_routes;
      else if (key == "witness") slot = &cfg.tol.witness;
      else if (key == "commutator") slot = &cfg.tol.commutator;
      else if (key == "sector_certify") slot = &cfg.tol.sector_certify;
      else throw ConfigError("configuration: unknown key '" + where + "'");
      *slot = detail::parse_double(value, where);
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = value;
      else throw ConfigError("configuration: unknown key '" + where + "'");
    } else {
      throw ConfigError("configuration: unknown section '" + section +
                        "' at line " + std::to_string(line_no));
    }
  }
  return cfg;
}

inline CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("configuration: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace infravac::campaign
