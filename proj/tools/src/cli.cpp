#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "oscenv/errors.hpp"
#include "oscenv/parallel.hpp"
#include "oscenv_cli/commands.hpp"

namespace oscenv::cli {

namespace {

struct Flags {
  std::string config;
  std::string preset_name;
  bool desk = false;
  std::string out;
  bool force = false;
  unsigned threads = 0;
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::string negative_policy;
  std::string input;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--preset", f.preset_name, "parameter preset: 1, 2, 3 or table-row-N");
  sub->add_flag("--desk", f.desk, "coarse grid with automatic time steps");
  sub->add_option("--out", f.out, "output directory")->required();
  sub->add_flag("--force", f.force, "overwrite a nonempty output directory");
  sub->add_option("--threads", f.threads, "worker threads (default: OSCENV_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.preset_name.empty()) cfg = preset(f.preset_name);
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("config " + f.config + ": " + e.what());
    }
    cfg = RunConfig::from_json(j, cfg);
  }
  if (f.desk) apply_desk(cfg);
  if (f.paths) cfg.paths = *f.paths;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.negative_policy.empty()) cfg.negative_policy = negative_policy_from_string(f.negative_policy);
  cfg.validate();
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Stochastic oscillator envelope solver"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* fp = app.add_subcommand("fp-run", "evolve the real density");
  auto* q = app.add_subcommand("q-run", "evolve the complex density and its normalization");
  auto* sde = app.add_subcommand("sde-run", "Monte Carlo ensemble of sample paths");
  auto* ent = app.add_subcommand("entropy", "entropy series of a finished run");
  auto* topo = app.add_subcommand("topology", "classify the metric manifold");
  auto* val = app.add_subcommand("validate", "compare the density with the Monte Carlo oracle");
  for (auto* sub : {fp, q, sde, ent, topo, val}) add_common(sub, f);
  for (auto* sub : {sde, val}) {
    sub->add_option("--paths", f.paths, "number of sample paths")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "random seed");
  }
  ent->add_option("--input", f.input, "run directory holding p_t*/q_t* snapshots")->required();
  ent->add_option("--negative-policy", f.negative_policy, "reject or zero")
      ->check(CLI::IsMember({"reject", "zero"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code;
  }

  try {
    const RunConfig cfg = build_config(f);
    const WorkerPool pool(f.threads ? f.threads : WorkerPool::default_thread_count());
    Context ctx{cfg, f.out, f.force, &pool};
    if (fp->parsed()) fp_run(ctx);
    else if (q->parsed()) q_run(ctx);
    else if (sde->parsed()) sde_run(ctx);
    else if (ent->parsed()) entropy_run(ctx, f.input);
    else if (topo->parsed()) topology_run(ctx);
    else if (val->parsed()) validate_run(ctx);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace oscenv::cli
