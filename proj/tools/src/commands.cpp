#include "oscenv_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "oscenv/entropy.hpp"
#include "oscenv/errors.hpp"
#include "oscenv/field_io.hpp"
#include "oscenv/fp_solver.hpp"
#include "oscenv/geometry.hpp"
#include "oscenv/parallel.hpp"
#include "oscenv/q_solver.hpp"
#include "oscenv/sde_oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace oscenv::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<double> opt(double v) { return v; }

}  // namespace

OutputDir::OutputDir(fs::path path, bool force) : path_(std::move(path)) {
  if (fs::exists(path_)) {
    if (!fs::is_directory(path_)) throw InvalidArgument("output path is not a directory: " + path_.string());
    if (!fs::is_empty(path_)) {
      if (!force) {
        throw InvalidArgument("output directory " + path_.string() +
                              " is not empty; pass --force to overwrite");
      }
      for (const auto& entry : fs::directory_iterator(path_)) fs::remove_all(entry.path());
    }
  } else {
    fs::create_directories(path_);
  }
}

void OutputDir::add(const std::string& name) { files_.push_back(name); }

void OutputDir::finish(const std::string& subcommand, const RunConfig& cfg, const json& summary,
                       const json& timing) const {
  const json config = cfg.to_json();
  json manifest;
  manifest["tool"] = "oscenv";
  manifest["version"] = kVersion;
  manifest["modules"] = {{"core", kVersion}, {"cli", kVersion}};
  manifest["subcommand"] = subcommand;
  manifest["config"] = config;
  manifest["config_digest"] = fnv1a_hex(config.dump());
  manifest["seed"] = cfg.seed;
  std::vector<std::string> sorted = files_;
  std::sort(sorted.begin(), sorted.end());
  json outputs = json::array();
  for (const auto& name : sorted) {
    outputs.push_back({{"file", name}, {"fnv1a64", fnv1a_hex(read_text(path_ / name))}});
  }
  manifest["outputs"] = outputs;
  manifest["summary"] = summary;
  write_text(path_ / "manifest.json", manifest.dump(2) + "\n");
  write_text(path_ / "timing.json", json{{"wall_seconds", timing}}.dump(2) + "\n");
}

std::string snapshot_name(const std::string& prefix, double t) {
  return prefix + "_t" + format_double(t) + ".txt";
}

namespace {

CsvTable alpha_table(const std::vector<std::pair<double, double>>& series) {
  CsvTable t{{"t", "alpha"}, {}};
  for (const auto& [time, alpha] : series) t.add_row({time, alpha});
  return t;
}

}  // namespace

void fp_run(const Context& ctx) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  OutputDir out(ctx.out, ctx.force);
  FpRunOptions opts;
  opts.step = {c.integrator, ctx.pool};
  opts.init = c.initial();
  opts.series_interval = c.series_interval;
  const double dt = c.resolved_dt_p();
  const FpRun run = run_fp(c.env, c.grid, dt, c.snapshots, opts);
  json snaps = json::array();
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto name = snapshot_name("p", c.snapshots[i]);
    write_field(out.file(name), run.snapshots[i].field);
    out.add(name);
    snaps.push_back({{"t", run.snapshots[i].t}, {"alpha", run.snapshots[i].alpha}, {"file", name}});
  }
  write_csv(out.file("alpha.csv"), alpha_table(run.alpha_series));
  out.add("alpha.csv");
  out.finish("fp-run", c, {{"dt", dt}, {"snapshots", snaps}}, {{"fp", seconds_since(start)}});
}

void q_run(const Context& ctx) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  OutputDir out(ctx.out, ctx.force);
  QRunOptions opts;
  opts.q.step = {c.integrator, ctx.pool};
  opts.init = c.initial();
  opts.series_interval = c.series_interval;
  const double dt = c.resolved_dt_q();

  // P snapshots from an identical run, for the entropy stage.
  FpRunOptions popts;
  popts.step = opts.q.step;
  popts.init = opts.init;
  popts.series_interval = c.series_interval;
  const FpRun prun = run_fp(c.env, c.grid, dt, c.snapshots, popts);
  const QRun run = run_q(c.env, c.grid, dt, c.snapshots, opts);

  json snaps = json::array();
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto& s = run.snapshots[i];
    const auto qname = snapshot_name("q", c.snapshots[i]);
    const auto pname = snapshot_name("p", c.snapshots[i]);
    write_complex_field(out.file(qname), s.field);
    write_field(out.file(pname), prun.snapshots[i].field);
    out.add(qname);
    out.add(pname);
    snaps.push_back({{"t", s.t}, {"beta", s.beta}, {"alpha", s.alpha}, {"q", qname}, {"p", pname}});
  }
  CsvTable lam{{"t", "re_lambda", "im_lambda", "re_xi", "im_xi"}, {}};
  for (const auto& l : run.lambda_series) {
    lam.add_row({l.t, l.lambda.real(), l.lambda.imag(), l.xi.real(), l.xi.imag()});
  }
  write_csv(out.file("lambda.csv"), lam);
  out.add("lambda.csv");
  write_csv(out.file("alpha.csv"), alpha_table(prun.alpha_series));
  out.add("alpha.csv");
  out.finish("q-run", c, {{"dt", dt}, {"snapshots", snaps}}, {{"q", seconds_since(start)}});
}

namespace {

EnsembleRun ensemble_from(const RunConfig& c) {
  EnsembleRun e;
  e.n_paths = c.paths;
  e.seed = c.seed;
  e.dt = c.sde_dt;
  e.record_times = c.sde_times;
  e.grid = c.grid;
  e.absorb_outside_grid = c.absorb;
  e.cutoff = c.cutoff;
  const GaussianInit g = c.initial();
  e.start = std::pair{g.center_u1, g.center_u2};
  e.start_sd_u1 = g.sd_u1();
  e.start_sd_u2 = g.sd_u2();
  return e;
}

json ensemble_summary(const EnsembleResult& r) {
  return {{"n_paths", r.n_paths},
          {"blowup_count", r.blowup_count},
          {"absorbed_count", r.absorbed_count},
          {"blowup_fraction", r.blowup_fraction()},
          {"valid", r.valid}};
}

}  // namespace

void sde_run(const Context& ctx) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  OutputDir out(ctx.out, ctx.force);
  const EnsembleResult r = simulate_ensemble(c.env, ensemble_from(c), ctx.pool);
  for (std::size_t i = 0; i < r.densities.size(); ++i) {
    const auto name = snapshot_name("density", c.sde_times[i]);
    write_field(out.file(name), r.densities[i]);
    out.add(name);
  }
  CsvTable fk{{"t", "re_mean", "im_mean", "re_stderr", "im_stderr", "n_effective"}, {}};
  for (const auto& e : r.fk) {
    const bool any = e.n_effective > 0;
    fk.add_row({e.t, any ? opt(e.mean.real()) : std::nullopt,
                any ? opt(e.mean.imag()) : std::nullopt, e.re_stderr, e.im_stderr,
                static_cast<double>(e.n_effective)});
  }
  write_csv(out.file("fk.csv"), fk);
  out.add("fk.csv");
  if (!r.valid) {
    std::cerr << "warning: blowup fraction " << r.blowup_fraction()
              << " exceeds 0.2; run flagged invalid\n";
  }
  out.finish("sde-run", c, ensemble_summary(r), {{"sde", seconds_since(start)}});
}

void entropy_run(const Context& ctx, const fs::path& input) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  if (!fs::is_directory(input)) throw FormatError("input run directory not found: " + input.string());
  std::map<std::string, fs::path> p_files;
  std::map<std::string, fs::path> q_files;
  for (const auto& entry : fs::directory_iterator(input)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 8 || name.substr(name.size() - 4) != ".txt") continue;
    const std::string key = name.substr(2, name.size() - 6);
    if (name.rfind("p_t", 0) == 0) p_files[key] = entry.path();
    if (name.rfind("q_t", 0) == 0) q_files[key] = entry.path();
  }
  if (p_files.empty() && q_files.empty()) {
    throw FormatError("no p_t*.txt or q_t*.txt snapshots in " + input.string());
  }
  std::vector<Field2D> ps;
  std::vector<ComplexField> qs;
  for (const auto& [key, path] : p_files) ps.push_back(read_field(path));
  for (const auto& [key, path] : q_files) qs.push_back(read_complex_field(path));
  if (!ps.empty() && !qs.empty() && ps.size() != qs.size()) {
    throw FormatError("p and q snapshot sets in " + input.string() + " do not match");
  }
  std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  std::sort(qs.begin(), qs.end(), [](const auto& a, const auto& b) { return a.t < b.t; });

  OutputDir out(ctx.out, ctx.force);
  EntropyOptions eo;
  eo.policy = c.negative_policy;
  eo.pool = ctx.pool;
  const EntropySeries s = entropy_series(ps, qs, eo);
  CsvTable t{{"t", "s_plain", "s_partial_r", "s_partial_i", "s_gen"}, {}};
  std::size_t undefined = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.add_row({s.times[i], s.s_plain[i], s.s_partial_r[i], s.s_partial_i[i], s.s_gen[i]});
    for (const auto* v : {&s.s_plain[i], &s.s_partial_r[i], &s.s_partial_i[i], &s.s_gen[i]}) {
      undefined += v->has_value() ? 0 : 1;
    }
  }
  write_csv(out.file("entropy.csv"), t);
  out.add("entropy.csv");
  out.finish("entropy", c,
             {{"input", input.filename().string()},
              {"entries", s.size()},
              {"undefined_entries", undefined},
              {"negative_policy", std::string(to_string(c.negative_policy))}},
             {{"entropy", seconds_since(start)}});
}

void topology_run(const Context& ctx) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  OutputDir out(ctx.out, ctx.force);
  CsvTable comp{{"t", "n_total", "n_upper", "n_lower"}, {}};
  json maps = json::array();
  for (double t : c.topology_times) {
    const RegionMap m = classify_manifold(c.grid, t, c.env, ctx.pool);
    const auto name = snapshot_name("regions", t);
    write_text(out.file(name), m.to_text());
    out.add(name);
    comp.add_row({t, static_cast<double>(m.n_total), static_cast<double>(m.n_upper),
                  static_cast<double>(m.n_lower)});
    maps.push_back({{"t", t}, {"file", name}, {"excised", m.excised_count},
                    {"within_bound", m.n_total <= 4 && m.n_upper <= 4 && m.n_lower <= 4}});
  }
  write_csv(out.file("components.csv"), comp);
  out.add("components.csv");
  out.finish("topology", c, {{"maps", maps}}, {{"topology", seconds_since(start)}});
}

void validate_run(const Context& ctx) {
  const auto start = Clock::now();
  const RunConfig& c = ctx.cfg;
  OutputDir out(ctx.out, ctx.force);
  FpRunOptions popts;
  popts.step = {c.integrator, ctx.pool};
  popts.init = c.initial();
  popts.series_interval = 0.0;
  const double dt = c.resolved_dt_p();
  const FpRun prun = run_fp(c.env, c.grid, dt, c.sde_times, popts);
  const double fp_seconds = seconds_since(start);
  const auto mc_start = Clock::now();
  EnsembleRun e = ensemble_from(c);
  const EnsembleResult r = simulate_ensemble(c.env, e, ctx.pool);
  CsvTable v{{"t", "tv_distance", "n_paths", "blowups", "absorbed"}, {}};
  std::string report = "oracle comparison: " + std::to_string(c.paths) + " paths, seed " +
                       std::to_string(c.seed) + "\n";
  for (std::size_t i = 0; i < r.densities.size(); ++i) {
    const double tv = total_variation(prun.snapshots[i].field, r.densities[i]);
    v.add_row({r.densities[i].t, tv, static_cast<double>(r.n_paths),
               static_cast<double>(r.blowup_count), static_cast<double>(r.absorbed_count)});
    report += "t=" + format_double(r.densities[i].t) + " total variation " + format_double(tv) + "\n";
  }
  write_csv(out.file("validation.csv"), v);
  out.add("validation.csv");
  write_text(out.file("report.txt"), report);
  out.add("report.txt");
  std::cout << report;
  out.finish("validate", c, json{{"dt_p", dt}, {"ensemble", ensemble_summary(r)}},
             {{"fp", fp_seconds}, {"sde", seconds_since(mc_start)}});
}

}  // namespace oscenv::cli
