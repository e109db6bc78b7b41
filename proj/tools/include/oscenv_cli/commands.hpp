#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oscenv_cli/config.hpp"

namespace oscenv {
class WorkerPool;
}

namespace oscenv::cli {

inline constexpr const char* kVersion = "0.3.0";

/// A run's output directory. Files are registered as they are written; the
/// manifest lists them with content digests.
class OutputDir {
 public:
  /// Creates `path`. An existing nonempty directory is refused unless
  /// `force`, in which case its contents are removed first.
  OutputDir(std::filesystem::path path, bool force);

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::filesystem::path file(const std::string& name) const { return path_ / name; }
  /// Records a file already written under this directory.
  void add(const std::string& name);

  /// Writes manifest.json (deterministic) and timing.json (wall-clock).
  void finish(const std::string& subcommand, const RunConfig& cfg, const nlohmann::json& summary,
              const nlohmann::json& timing) const;

 private:
  std::filesystem::path path_;
  std::vector<std::string> files_;
};

struct Context {
  RunConfig cfg;
  std::filesystem::path out;
  bool force = false;
  const WorkerPool* pool = nullptr;
};

/// Snapshot file name for a requested time, e.g. p_t1.5.txt.
[[nodiscard]] std::string snapshot_name(const std::string& prefix, double t);

void fp_run(const Context& ctx);
void q_run(const Context& ctx);
void sde_run(const Context& ctx);
/// Entropy series from the p_t*.txt / q_t*.txt snapshots found in `input`.
void entropy_run(const Context& ctx, const std::filesystem::path& input);
void topology_run(const Context& ctx);
void validate_run(const Context& ctx);

/// Full command line (argv[0] included). Returns the process exit status.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace oscenv::cli
