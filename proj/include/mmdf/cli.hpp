#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmdf/em_model.hpp"
#include "mmdf/moabc.hpp"
#include "mmdf/objectives.hpp"

namespace mmdf::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

/// Environment variable that overrides the output directory of a config file.
inline constexpr const char* kOutDirEnv = "MMDF_OUT_DIR";

enum class SweepAxis { Frequency, Angle, Thickness };

/// Everything a run needs. Defaults are the standard LP design setup.
struct RunConfig {
  FilterKind filter = FilterKind::LP;
  std::optional<std::vector<Band>> pass_bands;  ///< explicit bands override the filter kind
  std::optional<std::vector<Band>> stop_bands;
  std::vector<double> angles_deg{0.0, 15.0, 30.0, 45.0};
  double freq_step_ghz = 0.2;

  int layers = 5;
  double thickness_min_mm = 0.0;
  double thickness_max_mm = 3.0;
  int material_min = 1;
  std::optional<int> material_max;  ///< defaults to the database size

  int colony_size = 100;
  int iterations = 1000;
  int limit = 100;
  std::uint64_t seed = 1;
  std::size_t archive_cap = 0;

  std::filesystem::path out_dir = "mmdf_out";
  std::optional<std::filesystem::path> materials_path;
  std::optional<LayerStack> stack;

  // sweep
  std::optional<SweepAxis> axis;
  std::optional<double> sweep_from;
  std::optional<double> sweep_to;
  std::optional<double> sweep_step;
  double sweep_freq_ghz = 10.0;
  double sweep_angle_deg = 0.0;
  int sweep_layer = 1;
};

/// Applies one `key = value` setting. Keys match the long flag names; '-' and '_' are interchangeable.
/// Throws ConfigError on unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key-value file: one `key = value` per line, '#' comments, blank lines ignored.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// "id:thick,id:thick,..." (thickness in mm). An empty string is the empty stack.
LayerStack parse_stack(const std::string& text);
std::vector<Band> parse_bands(const std::string& text);
std::vector<double> parse_list(const std::string& text);
SweepAxis parse_axis(const std::string& text);

/// Config resolved against a material database.
struct ResolvedRun {
  MaterialDatabase db;
  FilterSpec spec;
  DesignProblem problem;
  AbcConfig abc;
};
ResolvedRun resolve(const RunConfig& cfg);

// Subcommands. Each writes its files into cfg.out_dir and a short summary to `log`,
// returning an ExitCode. Errors propagate as exceptions.
int cmd_design(const RunConfig& cfg, std::ostream& log);
int cmd_evaluate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

// Writers shared by the commands; exposed for tests.
std::string format_number(double v);
void write_pareto_csv(std::ostream& out, const std::vector<ArchiveEntry>& front, const DesignProblem& problem);
void write_history_csv(std::ostream& out, const std::vector<HistoryRow>& history);
void write_knee_report(std::ostream& out, FilterKind kind, const ObjectiveVector& objectives, const LayerStack& stack);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace mmdf::cli
