// mmdf: design and analysis of multilayer microwave dielectric filters.
//
//   mmdf design   --filter lp --seed 7 --out run_lp
//   mmdf evaluate --filter lp --stack "9:0.7118,8:3,2:0.9224,8:3,1:1.4457"
//   mmdf sweep    --axis thickness --stack "1:1" --freq 10 --layer 1
//   mmdf validate

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mmdf/cli.hpp"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"filter", "filter type: lp, hp or bp"},
    {"pass-bands", "explicit pass bands, e.g. 8:12"},
    {"stop-bands", "explicit stop bands, e.g. 2:8,12:18"},
    {"angles", "incidence angles in degrees, e.g. 0,15,30,45"},
    {"freq-step", "frequency step in GHz"},
    {"layers", "number of layers N"},
    {"thickness-min", "lower thickness bound (mm)"},
    {"thickness-max", "upper thickness bound (mm)"},
    {"material-min", "smallest material id searched"},
    {"material-max", "largest material id searched"},
    {"np", "colony size NP (even, >= 4)"},
    {"ni", "iteration count NI"},
    {"limit", "abandonment limit"},
    {"seed", "random seed (u64)"},
    {"archive-cap", "maximum Pareto archive size (0 = unbounded)"},
    {"out", "output directory"},
    {"materials", "material database file"},
    {"stack", "layer stack \"id:thick_mm,id:thick_mm,...\""},
    {"axis", "sweep axis: frequency, angle or thickness"},
    {"from", "sweep start"},
    {"to", "sweep end"},
    {"sweep-step", "sweep step"},
    {"freq", "fixed frequency for angle/thickness sweeps (GHz)"},
    {"angle", "fixed incidence angle for frequency/thickness sweeps (deg)"},
    {"layer", "1-based layer index for thickness sweeps"},
};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = mmdf::cli;

  CLI::App app{"Multilayer microwave dielectric filter design with a multi-objective bee colony"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file; flags override it");
  std::map<std::string, std::string> given;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const auto& flag : kFlags) {
    options.emplace_back(flag.name,
                         app.add_option(std::string("--") + flag.name, given[flag.name], flag.help));
  }

  auto* design = app.add_subcommand("design", "run the optimizer; writes pareto.csv, knee.txt, history.csv");
  auto* evaluate = app.add_subcommand("evaluate", "analyse a stack; writes spectrum.csv, bandstats.csv, objectives.txt");
  auto* sweep = app.add_subcommand("sweep", "1-D |TR| sweep along frequency, angle or one layer's thickness");
  auto* validate = app.add_subcommand("validate", "run the oracle suites; exit 1 on any failure");
  for (auto* sub : {design, evaluate, sweep, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kUsageError;
  }

  try {
    cli::RunConfig cfg;
    if (!config_path.empty()) cli::apply_config_file(cfg, config_path);
    if (const char* env = std::getenv(cli::kOutDirEnv); env && *env) cfg.out_dir = env;
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) cli::apply_setting(cfg, name, given[name]);
    }

    if (design->parsed()) return cli::cmd_design(cfg, std::cout);
    if (evaluate->parsed()) return cli::cmd_evaluate(cfg, std::cout);
    if (sweep->parsed()) return cli::cmd_sweep(cfg, std::cout);
    return cli::cmd_validate(cfg, std::cout);
  } catch (const mmdf::ConfigError& e) {
    std::cerr << "mmdf: configuration error: " << e.what() << '\n';
    return cli::kUsageError;
  } catch (const mmdf::DomainError& e) {
    std::cerr << "mmdf: invalid input: " << e.what() << '\n';
    return cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "mmdf: error: " << e.what() << '\n';
    return cli::kUsageError;
  }
}
