#include "mmdf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "mmdf/material_file.hpp"
#include "mmdf/validate.hpp"

namespace mmdf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
  key = trim(key);
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  for (char& c : key) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '-') c = '_';
  }
  return key;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("setting '" + key + "': '" + text + "' is not a valid number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line + '\n';
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<double> spectrum_frequencies(const FilterSpec& spec) {
  double lo = spec.pass_bands.front().lo_ghz;
  double hi = spec.pass_bands.front().hi_ghz;
  for (auto role : {BandRole::Pass, BandRole::Stop}) {
    for (const auto& b : spec.bands(role)) {
      lo = std::min(lo, b.lo_ghz);
      hi = std::max(hi, b.hi_ghz);
    }
  }
  return band_grid({lo, hi}, spec.freq_step_ghz);
}

const LayerStack& require_stack(const RunConfig& cfg) {
  if (!cfg.stack) throw ConfigError("this command needs --stack \"id:thick,id:thick,...\"");
  return *cfg.stack;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

LayerStack parse_stack(const std::string& text) {
  LayerStack stack;
  if (trim(text).empty()) return stack;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("stack entry '" + item + "' must look like id:thickness_mm");
    const int id = parse_number<int>("stack", item.substr(0, colon));
    const double d = parse_number<double>("stack", item.substr(colon + 1));
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("stack entry '" + item + "': thickness must be >= 0");
    stack.layers.push_back({id, d});
  }
  return stack;
}

std::vector<Band> parse_bands(const std::string& text) {
  std::vector<Band> bands;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("band '" + item + "' must look like lo:hi (GHz)");
    bands.push_back({parse_number<double>("band", item.substr(0, colon)),
                     parse_number<double>("band", item.substr(colon + 1))});
  }
  return bands;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) values.push_back(parse_number<double>("list", item));
  return values;
}

SweepAxis parse_axis(const std::string& text) {
  const auto t = normalize_key(text);
  if (t == "frequency" || t == "freq" || t == "f") return SweepAxis::Frequency;
  if (t == "angle" || t == "theta") return SweepAxis::Angle;
  if (t == "thickness") return SweepAxis::Thickness;
  throw ConfigError("unknown sweep axis '" + text + "' (expected frequency, angle or thickness)");
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string value = trim(raw_value);
  auto as_int = [&] { return parse_number<int>(key, value); };
  auto as_double = [&] { return parse_number<double>(key, value); };

  if (key == "filter") {
    const auto kind = parse_filter_kind(value);
    if (!kind) throw ConfigError("filter must be one of lp, hp, bp (got '" + value + "')");
    cfg.filter = *kind;
  } else if (key == "pass_bands") {
    cfg.pass_bands = parse_bands(value);
  } else if (key == "stop_bands") {
    cfg.stop_bands = parse_bands(value);
  } else if (key == "angles") {
    cfg.angles_deg = parse_list(value);
  } else if (key == "freq_step" || key == "step") {
    cfg.freq_step_ghz = as_double();
  } else if (key == "layers") {
    cfg.layers = as_int();
  } else if (key == "thickness_min") {
    cfg.thickness_min_mm = as_double();
  } else if (key == "thickness_max") {
    cfg.thickness_max_mm = as_double();
  } else if (key == "material_min") {
    cfg.material_min = as_int();
  } else if (key == "material_max") {
    cfg.material_max = as_int();
  } else if (key == "np") {
    cfg.colony_size = as_int();
  } else if (key == "ni") {
    cfg.iterations = as_int();
  } else if (key == "limit") {
    cfg.limit = as_int();
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "archive_cap") {
    cfg.archive_cap = parse_number<std::size_t>(key, value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out must name a directory");
    cfg.out_dir = value;
  } else if (key == "materials") {
    cfg.materials_path = value;
  } else if (key == "stack") {
    cfg.stack = parse_stack(value);
  } else if (key == "axis") {
    cfg.axis = parse_axis(value);
  } else if (key == "from") {
    cfg.sweep_from = as_double();
  } else if (key == "to") {
    cfg.sweep_to = as_double();
  } else if (key == "sweep_step") {
    cfg.sweep_step = as_double();
  } else if (key == "freq") {
    cfg.sweep_freq_ghz = as_double();
  } else if (key == "angle") {
    cfg.sweep_angle_deg = as_double();
  } else if (key == "layer") {
    cfg.sweep_layer = as_int();
  } else {
    throw ConfigError("unknown setting '" + raw_key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> settings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    settings.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return settings;
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  for (const auto& [k, v] : parse_config_text(in)) apply_setting(cfg, k, v);
}

ResolvedRun resolve(const RunConfig& cfg) {
  ResolvedRun run{cfg.materials_path ? load_material_database(*cfg.materials_path) : builtin_database(), {}, {}, {}};

  run.spec = builtin_spec(cfg.filter);
  if (cfg.pass_bands) run.spec.pass_bands = *cfg.pass_bands;
  if (cfg.stop_bands) run.spec.stop_bands = *cfg.stop_bands;
  run.spec.angles_deg = cfg.angles_deg;
  run.spec.freq_step_ghz = cfg.freq_step_ghz;
  check_spec(run.spec);

  const int db_size = static_cast<int>(run.db.size());
  const int material_max = cfg.material_max.value_or(db_size);
  if (material_max > db_size) {
    throw ConfigError("material_max " + std::to_string(material_max) + " exceeds the database size " +
                      std::to_string(db_size));
  }
  run.problem.db = nullptr;  // points into `run`; bound by the caller once `run` has its final address
  run.problem.spec = run.spec;
  run.problem.layers = cfg.layers;
  run.problem.thickness_min_mm = cfg.thickness_min_mm;
  run.problem.thickness_max_mm = cfg.thickness_max_mm;
  run.problem.material_min = cfg.material_min;
  run.problem.material_max = material_max;

  run.abc.colony_size = cfg.colony_size;
  run.abc.iterations = cfg.iterations;
  run.abc.limit = cfg.limit;
  run.abc.seed = cfg.seed;
  run.abc.archive_cap = cfg.archive_cap;
  run.abc.bounds = run.problem.bounds();
  check_config(run.abc);

  if (cfg.stack) check_stack(*cfg.stack, run.db);
  return run;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

void write_pareto_csv(std::ostream& out, const std::vector<ArchiveEntry>& front, const DesignProblem& problem) {
  std::vector<std::string> header{"of1", "of2"};
  for (int i = 1; i <= problem.layers; ++i) {
    header.push_back("material_" + std::to_string(i));
    header.push_back("thickness_mm_" + std::to_string(i));
  }
  out << csv_line(header);
  for (const auto& e : front) {
    std::vector<std::string> row{format_number(e.objectives[0]), format_number(e.objectives[1])};
    for (const auto& layer : decode_candidate(e.position, problem).layers) {
      row.push_back(std::to_string(layer.material_id));
      row.push_back(format_number(layer.thickness_mm));
    }
    out << csv_line(row);
  }
}

void write_history_csv(std::ostream& out, const std::vector<HistoryRow>& history) {
  out << csv_line({"iteration", "archive_size", "knee_of1", "knee_of2"});
  for (const auto& h : history) {
    out << csv_line({std::to_string(h.iteration), std::to_string(h.archive_size), format_number(h.knee[0]),
                     format_number(h.knee[1])});
  }
}

void write_knee_report(std::ostream& out, FilterKind kind, const ObjectiveVector& objectives, const LayerStack& stack) {
  out << "# Global optimal design: Pareto member nearest the objective-space origin\n";
  out << "filter " << to_string(kind) << '\n';
  out << "of1 " << format_number(objectives[0]) << '\n';
  out << "of2 " << format_number(objectives[1]) << '\n';
  out << "Layer\tMat.#\tThickness(mm)\n";
  for (std::size_t i = 0; i < stack.size(); ++i) {
    out << i + 1 << '\t' << stack.layers[i].material_id << '\t' << fixed(stack.layers[i].thickness_mm, 4) << '\n';
  }
  out << "TT(mm)\t\t" << fixed(stack.total_thickness_mm(), 4) << '\n';
}

int cmd_design(const RunConfig& cfg, std::ostream& log) {
  const ResolvedRun run = resolve(cfg);
  DesignProblem problem = run.problem;
  problem.db = &run.db;
  const AbcResult result = run_optimization(problem, run.abc);

  std::ostringstream pareto;
  write_pareto_csv(pareto, result.archive.sorted(), problem);
  std::ostringstream knee;
  const LayerStack knee_stack = decode_candidate(result.knee.position, problem);
  write_knee_report(knee, run.spec.kind, result.knee.objectives, knee_stack);
  std::ostringstream history;
  write_history_csv(history, result.history);

  write_file_atomic(cfg.out_dir / "pareto.csv", pareto.str());
  write_file_atomic(cfg.out_dir / "knee.txt", knee.str());
  write_file_atomic(cfg.out_dir / "history.csv", history.str());

  log << "design: " << result.archive.size() << " Pareto solutions after " << result.evaluations
      << " evaluations; knee of1=" << fixed(result.knee.objectives[0], 4)
      << " of2=" << fixed(result.knee.objectives[1], 4) << " TT=" << fixed(knee_stack.total_thickness_mm(), 4)
      << " mm -> " << cfg.out_dir.string() << '\n';
  return kSuccess;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
  const ResolvedRun run = resolve(cfg);
  const LayerStack& stack = require_stack(cfg);

  const auto freqs = spectrum_frequencies(run.spec);
  std::ostringstream spectrum;
  spectrum << csv_line({"f_ghz", "theta_deg", "tr_te_db", "tr_tm_db"});
  for (const auto& row : tr_spectrum(stack, run.db, freqs, run.spec.angles_deg)) {
    spectrum << csv_line({format_number(row.f_ghz), format_number(row.theta_deg), format_number(magnitude_db(row.te)),
                          format_number(magnitude_db(row.tm))});
  }

  std::ostringstream stats;
  stats << csv_line({"band", "polarization", "angle_deg", "max_db", "avg_db", "min_db", "note"});
  for (auto role : {BandRole::Pass, BandRole::Stop}) {
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      for (double angle : run.spec.angles_deg) {
        const auto s = band_statistics(stack, run.db, run.spec, role, pol, angle);
        const bool redundant = pol == Polarization::TM && angle == 0.0;
        stats << csv_line({to_string(role), to_string(pol), format_number(angle), fixed(s.max_db, 2),
                           fixed(s.avg_db, 2), fixed(s.min_db, 2), redundant ? "same as TE at normal incidence" : ""});
      }
    }
  }

  const ObjectiveVector obj = evaluate_objectives(stack, run.db, run.spec);
  std::ostringstream objectives;
  objectives << "of1 " << format_number(obj[0]) << "\nof2 " << format_number(obj[1]) << '\n';

  write_file_atomic(cfg.out_dir / "spectrum.csv", spectrum.str());
  write_file_atomic(cfg.out_dir / "bandstats.csv", stats.str());
  write_file_atomic(cfg.out_dir / "objectives.txt", objectives.str());

  log << "evaluate: of1=" << fixed(obj[0], 4) << " of2=" << fixed(obj[1], 4)
      << " TT=" << fixed(stack.total_thickness_mm(), 4) << " mm -> " << cfg.out_dir.string() << '\n';
  return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  if (!cfg.axis) throw ConfigError("sweep needs --axis frequency|angle|thickness");
  const ResolvedRun run = resolve(cfg);
  LayerStack stack = require_stack(cfg);
  const SweepAxis axis = *cfg.axis;

  double from = 0.0, to = 0.0, step = 0.0;
  std::string column;
  switch (axis) {
    case SweepAxis::Frequency:
      from = cfg.sweep_from.value_or(2.0);
      to = cfg.sweep_to.value_or(18.0);
      step = cfg.sweep_step.value_or(run.spec.freq_step_ghz);
      column = "f_ghz";
      break;
    case SweepAxis::Angle:
      from = cfg.sweep_from.value_or(0.0);
      to = cfg.sweep_to.value_or(45.0);
      step = cfg.sweep_step.value_or(1.0);
      column = "theta_deg";
      break;
    case SweepAxis::Thickness:
      if (cfg.sweep_layer < 1 || static_cast<std::size_t>(cfg.sweep_layer) > stack.size()) {
        throw ConfigError("sweep layer must index an existing layer (1.." + std::to_string(stack.size()) + ")");
      }
      from = cfg.sweep_from.value_or(0.0);
      to = cfg.sweep_to.value_or(3.0);
      step = cfg.sweep_step.value_or(0.01);
      column = "thickness_mm";
      break;
  }
  if (!(step > 0.0) || !(from <= to)) throw ConfigError("sweep range must satisfy from <= to and step > 0");
  if (axis == SweepAxis::Angle && !(from >= 0.0 && to < 90.0)) throw ConfigError("angle sweep must stay in [0, 90)");
  if (axis == SweepAxis::Frequency && !(from > 0.0)) throw ConfigError("frequency sweep must start above 0 GHz");
  if (axis == SweepAxis::Thickness && !(from >= 0.0)) throw ConfigError("thickness sweep must start at >= 0 mm");

  std::ostringstream out;
  out << csv_line({column, "tr_te_db", "tr_tm_db"});
  std::vector<double> te_curve;
  for (double x : band_grid({from, to}, step)) {
    PlaneWave wave{cfg.sweep_freq_ghz, cfg.sweep_angle_deg, Polarization::TE};
    if (axis == SweepAxis::Frequency) wave.f_ghz = x;
    if (axis == SweepAxis::Angle) wave.theta_deg = x;
    if (axis == SweepAxis::Thickness) stack.layers[static_cast<std::size_t>(cfg.sweep_layer - 1)].thickness_mm = x;
    const double te = magnitude_db(total_reflection(stack, run.db, wave));
    wave.pol = Polarization::TM;
    const double tm = magnitude_db(total_reflection(stack, run.db, wave));
    te_curve.push_back(te);
    out << csv_line({format_number(x), format_number(te), format_number(tm)});
  }

  static constexpr const char* kNames[] = {"frequency", "angle", "thickness"};
  const char* name = kNames[static_cast<int>(axis)];
  const auto file = cfg.out_dir / (std::string("sweep_") + name + ".csv");
  write_file_atomic(file, out.str());

  log << "sweep: " << te_curve.size() << " points along " << name << " -> " << file.string() << '\n';
  if (axis == SweepAxis::Angle) {
    const bool up = std::is_sorted(te_curve.begin(), te_curve.end());
    const bool down = std::is_sorted(te_curve.rbegin(), te_curve.rend());
    log << "TE trend over angle: " << (up ? "non-decreasing" : down ? "non-increasing" : "non-monotone") << '\n';
  }
  return kSuccess;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  const MaterialDatabase db = cfg.materials_path ? load_material_database(*cfg.materials_path) : builtin_database();
  ValidationOptions options;
  options.seed = cfg.seed;
  const auto results = run_validation(db, options);
  print_report(log, results);
  const bool ok = all_passed(results);
  log << (ok ? "validate: all suites passed\n" : "validate: FAILED\n");
  return ok ? kSuccess : kCheckFailed;
}

}  // namespace mmdf::cli
