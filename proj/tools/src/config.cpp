#include "oscenv_cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "oscenv/errors.hpp"
#include "oscenv/q_solver.hpp"

namespace oscenv::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw InvalidArgument("config: " + field + " " + why);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> keys) {
  if (!obj.is_object()) bad(where, "must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) bad(where.empty() ? k : where + "." + k, "is not a known setting");
  }
}

double get_number(const json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) bad(path, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(path, "must be finite");
  return d;
}

std::vector<double> get_times(const json& obj, const char* key, const std::string& path,
                              std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.empty()) bad(path, "must be a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(path, "must contain only numbers");
    out.push_back(e.get<double>());
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) bad(path, "must be strictly increasing");
  }
  return out;
}

std::optional<double> get_dt(const json& obj, const char* key, const std::string& path,
                             std::optional<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
  if (!v.is_number() || !(v.get<double>() > 0.0)) bad(path, "must be a positive number or \"auto\"");
  return v.get<double>();
}

json dt_json(const std::optional<double>& dt) { return dt ? json(*dt) : json("auto"); }

}  // namespace

json RunConfig::to_json() const {
  json j;
  j["env"] = {{"eps_r", env.eps_r}, {"eps_i", env.eps_i}, {"gamma", env.gamma},
              {"nu", env.nu}, {"t0", env.t0}};
  j["grid"] = {{"u1_min", grid.u1_min}, {"u1_max", grid.u1_max}, {"u2_min", grid.u2_min},
               {"u2_max", grid.u2_max}, {"M", grid.M}, {"L", grid.L}};
  j["stepping"] = {{"dt_p", dt_json(dt_p)},
                   {"dt_q", dt_json(dt_q)},
                   {"integrator", std::string(to_string(integrator))},
                   {"safety", safety},
                   {"series_interval", series_interval}};
  j["snapshots"] = snapshots;
  json center = center_at_phase_point ? json("phase-point")
                                      : json::array({init.center_u1, init.center_u2});
  j["initial"] = {{"sigma", init.sigma}, {"a", init.a}, {"b", init.b}, {"center", center}};
  j["oracle"] = {{"paths", paths},   {"seed", seed},     {"dt", sde_dt},
                 {"times", sde_times}, {"cutoff", cutoff}, {"absorb", absorb}};
  j["entropy"] = {{"negative_policy", std::string(to_string(negative_policy))}};
  j["topology"] = {{"times", topology_times}};
  return j;
}

RunConfig RunConfig::from_json(const json& j) { return from_json(j, RunConfig{}); }

RunConfig RunConfig::from_json(const json& j, RunConfig c) {
  reject_unknown(j, "", {"env", "grid", "stepping", "snapshots", "initial", "oracle", "entropy",
                         "topology"});
  if (j.contains("env")) {
    const auto& e = j.at("env");
    reject_unknown(e, "env", {"eps_r", "eps_i", "gamma", "nu", "t0"});
    c.env.eps_r = get_number(e, "eps_r", "env.eps_r", c.env.eps_r);
    c.env.eps_i = get_number(e, "eps_i", "env.eps_i", c.env.eps_i);
    c.env.gamma = get_number(e, "gamma", "env.gamma", c.env.gamma);
    c.env.nu = get_number(e, "nu", "env.nu", c.env.nu);
    c.env.t0 = get_number(e, "t0", "env.t0", c.env.t0);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, "grid", {"u1_min", "u1_max", "u2_min", "u2_max", "M", "L"});
    c.grid.u1_min = get_number(g, "u1_min", "grid.u1_min", c.grid.u1_min);
    c.grid.u1_max = get_number(g, "u1_max", "grid.u1_max", c.grid.u1_max);
    c.grid.u2_min = get_number(g, "u2_min", "grid.u2_min", c.grid.u2_min);
    c.grid.u2_max = get_number(g, "u2_max", "grid.u2_max", c.grid.u2_max);
    for (const char* key : {"M", "L"}) {
      if (!g.contains(key)) continue;
      if (!g.at(key).is_number_integer()) bad(std::string("grid.") + key, "must be an integer");
      (key[0] == 'M' ? c.grid.M : c.grid.L) = g.at(key).get<int>();
    }
  }
  if (j.contains("stepping")) {
    const auto& s = j.at("stepping");
    reject_unknown(s, "stepping", {"dt_p", "dt_q", "integrator", "safety", "series_interval"});
    c.dt_p = get_dt(s, "dt_p", "stepping.dt_p", c.dt_p);
    c.dt_q = get_dt(s, "dt_q", "stepping.dt_q", c.dt_q);
    if (s.contains("integrator")) {
      if (!s.at("integrator").is_string()) bad("stepping.integrator", "must be a string");
      try {
        c.integrator = integrator_from_string(s.at("integrator").get<std::string>());
      } catch (const InvalidArgument& e) {
        bad("stepping.integrator", e.what());
      }
    }
    c.safety = get_number(s, "safety", "stepping.safety", c.safety);
    c.series_interval = get_number(s, "series_interval", "stepping.series_interval",
                                   c.series_interval);
  }
  c.snapshots = get_times(j, "snapshots", "snapshots", c.snapshots);
  if (j.contains("initial")) {
    const auto& i = j.at("initial");
    reject_unknown(i, "initial", {"sigma", "a", "b", "center"});
    c.init.sigma = get_number(i, "sigma", "initial.sigma", c.init.sigma);
    c.init.a = get_number(i, "a", "initial.a", c.init.a);
    c.init.b = get_number(i, "b", "initial.b", c.init.b);
    if (i.contains("center")) {
      const auto& ce = i.at("center");
      if (ce.is_string() && ce.get<std::string>() == "phase-point") {
        c.center_at_phase_point = true;
      } else if (ce.is_array() && ce.size() == 2 && ce[0].is_number() && ce[1].is_number()) {
        c.center_at_phase_point = false;
        c.init.center_u1 = ce[0].get<double>();
        c.init.center_u2 = ce[1].get<double>();
      } else {
        bad("initial.center", "must be \"phase-point\" or [u1, u2]");
      }
    }
  }
  if (j.contains("oracle")) {
    const auto& o = j.at("oracle");
    reject_unknown(o, "oracle", {"paths", "seed", "dt", "times", "cutoff", "absorb"});
    if (o.contains("paths")) {
      if (!o.at("paths").is_number_unsigned() || o.at("paths").get<std::size_t>() == 0) {
        bad("oracle.paths", "must be a positive integer");
      }
      c.paths = o.at("paths").get<std::size_t>();
    }
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_unsigned()) bad("oracle.seed", "must be a nonnegative integer");
      c.seed = o.at("seed").get<std::uint64_t>();
    }
    c.sde_dt = get_number(o, "dt", "oracle.dt", c.sde_dt);
    c.sde_times = get_times(o, "times", "oracle.times", c.sde_times);
    c.cutoff = get_number(o, "cutoff", "oracle.cutoff", c.cutoff);
    if (o.contains("absorb")) {
      if (!o.at("absorb").is_boolean()) bad("oracle.absorb", "must be true or false");
      c.absorb = o.at("absorb").get<bool>();
    }
  }
  if (j.contains("entropy")) {
    const auto& e = j.at("entropy");
    reject_unknown(e, "entropy", {"negative_policy"});
    if (e.contains("negative_policy")) {
      if (!e.at("negative_policy").is_string()) bad("entropy.negative_policy", "must be a string");
      try {
        c.negative_policy = negative_policy_from_string(e.at("negative_policy").get<std::string>());
      } catch (const InvalidArgument& ex) {
        bad("entropy.negative_policy", ex.what());
      }
    }
  }
  if (j.contains("topology")) {
    const auto& t = j.at("topology");
    reject_unknown(t, "topology", {"times"});
    c.topology_times = get_times(t, "times", "topology.times", c.topology_times);
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (!(env.eps_r >= 0.0)) bad("env.eps_r", "must be >= 0");
  if (!(env.eps_i >= 0.0)) bad("env.eps_i", "must be >= 0");
  if (!(env.gamma > 0.0)) bad("env.gamma", "must be > 0");
  if (!(env.nu > 0.0)) bad("env.nu", "must be > 0");
  if (grid.M < 3) bad("grid.M", "must be >= 3");
  if (grid.L < 3) bad("grid.L", "must be >= 3");
  if (!(grid.u1_max > grid.u1_min)) bad("grid.u1_max", "must exceed grid.u1_min");
  if (!(grid.u2_max > grid.u2_min)) bad("grid.u2_max", "must exceed grid.u2_min");
  if (!(safety > 0.0 && safety <= 1.0)) bad("stepping.safety", "must be in (0, 1]");
  if (!(series_interval >= 0.0)) bad("stepping.series_interval", "must be >= 0");
  if (snapshots.front() < env.t0) bad("snapshots", "must not precede env.t0");
  if (!(init.sigma > 0.0)) bad("initial.sigma", "must be > 0");
  if (!(init.a > 0.0)) bad("initial.a", "must be > 0");
  if (!(init.b > 0.0)) bad("initial.b", "must be > 0");
  if (!(sde_dt > 0.0)) bad("oracle.dt", "must be > 0");
  if (sde_times.front() < env.t0) bad("oracle.times", "must not precede env.t0");
  if (!(cutoff > 0.0)) bad("oracle.cutoff", "must be > 0");
}

GaussianInit RunConfig::initial() const {
  GaussianInit g = init;
  if (center_at_phase_point) {
    g.center_u1 = 0.0;
    g.center_u2 = omega0(env.t0, env);
  }
  return g;
}

double RunConfig::resolved_dt_p() const {
  if (dt_p) return *dt_p;
  return safety * cfl_check(env, grid, 1e-12, integrator).max_dt;
}

double RunConfig::resolved_dt_q() const {
  if (dt_q) return *dt_q;
  return safety * cfl_check(env, grid, 1e-12, integrator, q_source_bound(grid)).max_dt;
}

RunConfig preset(int row) {
  RunConfig c;
  switch (row) {
    case 1:
      c.env = EnvConfig::make(0.01, 0.01, 2.0, 0.5);
      break;
    case 2:
      c.env = EnvConfig::make(1.0, 0.01, 2.0, 0.5);
      break;
    case 3:
      c.env = EnvConfig::make(1.0, 0.5, 2.0, 0.5);
      break;
    default:
      throw InvalidArgument("unknown preset row " + std::to_string(row) + " (expected 1-3)");
  }
  return c;
}

RunConfig preset(const std::string& name) {
  const std::string prefix = "table-row-";
  const bool bare = name.size() == 1;
  const bool prefixed = name.rfind(prefix, 0) == 0 && name.size() == prefix.size() + 1;
  if ((bare || prefixed) && name.back() >= '1' && name.back() <= '3') return preset(name.back() - '0');
  throw InvalidArgument("unknown preset '" + name + "' (expected 1, 2, 3 or table-row-N)");
}

void apply_desk(RunConfig& c) {
  c.grid = Grid2D::desk();
  c.dt_p.reset();
  c.dt_q.reset();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oscenv::cli
