#include "mmdf/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace mmdf {

namespace {

constexpr double kGridTol = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kGridTol; }

void check_bands(const std::vector<Band>& bands, const char* role) {
  if (bands.empty()) throw ConfigError(std::string("filter has no ") + role + " band");
  for (const auto& b : bands) {
    if (!(b.lo_ghz > 0.0) || !std::isfinite(b.hi_ghz) || !(b.lo_ghz <= b.hi_ghz)) {
      throw ConfigError(std::string(role) + " band must satisfy 0 < lo <= hi");
    }
  }
}

}  // namespace

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::LP: return "lp";
    case FilterKind::HP: return "hp";
    default: return "bp";
  }
}

std::optional<FilterKind> parse_filter_kind(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "lp") return FilterKind::LP;
  if (t == "hp") return FilterKind::HP;
  if (t == "bp") return FilterKind::BP;
  return std::nullopt;
}

void check_spec(const FilterSpec& spec) {
  check_bands(spec.pass_bands, "pass");
  check_bands(spec.stop_bands, "stop");
  if (!(spec.freq_step_ghz > 0.0) || !std::isfinite(spec.freq_step_ghz)) {
    throw ConfigError("frequency step must be positive");
  }
  if (spec.angles_deg.empty()) throw ConfigError("angle grid is empty");
  for (double a : spec.angles_deg) {
    if (!(a >= 0.0 && a < 90.0)) throw ConfigError("angles must lie in [0, 90) degrees");
  }
  // Bands may touch at a shared cutoff but not overlap.
  std::vector<Band> all = spec.pass_bands;
  all.insert(all.end(), spec.stop_bands.begin(), spec.stop_bands.end());
  std::sort(all.begin(), all.end(), [](const Band& a, const Band& b) { return a.lo_ghz < b.lo_ghz; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].lo_ghz < all[i - 1].hi_ghz - kGridTol) throw ConfigError("filter bands overlap");
  }
}

FilterSpec builtin_spec(FilterKind kind) {
  FilterSpec spec;
  spec.kind = kind;
  switch (kind) {
    case FilterKind::LP:
      spec.pass_bands = {{2.0, 10.0}};
      spec.stop_bands = {{10.0, 18.0}};
      break;
    case FilterKind::HP:
      spec.pass_bands = {{10.0, 18.0}};
      spec.stop_bands = {{2.0, 10.0}};
      break;
    case FilterKind::BP:
      spec.pass_bands = {{8.0, 12.0}};
      spec.stop_bands = {{2.0, 8.0}, {12.0, 18.0}};
      break;
  }
  return spec;
}

std::vector<double> band_grid(const Band& band, double step_ghz) {
  if (!(step_ghz > 0.0)) throw ConfigError("frequency step must be positive");
  if (!(band.lo_ghz <= band.hi_ghz)) throw ConfigError("band must satisfy lo <= hi");
  const double span = (band.hi_ghz - band.lo_ghz) / step_ghz;
  const auto steps = static_cast<std::size_t>(std::floor(span + kGridTol));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = band.lo_ghz + static_cast<double>(i) * step_ghz;
  if (near(grid.back(), band.hi_ghz)) grid.back() = band.hi_ghz;
  return grid;
}

std::vector<double> role_grid(const FilterSpec& spec, BandRole role) {
  std::vector<double> grid;
  for (const auto& band : spec.bands(role)) {
    const auto g = band_grid(band, spec.freq_step_ghz);
    grid.insert(grid.end(), g.begin(), g.end());
  }
  return grid;
}

ObjectiveEvaluator::ObjectiveEvaluator(const MaterialDatabase& db, FilterSpec spec)
    : db_(&db), spec_(std::move(spec)) {
  check_spec(spec_);
  pass_freqs_ = role_grid(spec_, BandRole::Pass);
  stop_freqs_ = role_grid(spec_, BandRole::Stop);
  pass_grid_ = build(pass_freqs_);
  stop_grid_ = build(stop_freqs_);
}

std::vector<ObjectiveEvaluator::GridPoint> ObjectiveEvaluator::build(const std::vector<double>& freqs) const {
  std::vector<GridPoint> grid;
  grid.reserve(freqs.size() * spec_.angles_deg.size());
  for (double f : freqs) {
    for (double theta : spec_.angles_deg) {
      const double kx = transverse_wavenumber(theta, f);
      GridPoint gp;
      gp.media.reserve(db_->size() + 1);
      for (int id = 0; id <= static_cast<int>(db_->size()); ++id) {
        const auto c = db_->constitutives<double>(id, f);
        gp.media.push_back({c, longitudinal_wavenumber(c, f, kx)});
      }
      grid.push_back(std::move(gp));
    }
  }
  return grid;
}

double ObjectiveEvaluator::reflection_sum(const std::vector<GridPoint>& grid, const LayerStack& stack) const {
  const std::size_t n = stack.size();
  std::vector<MediumResponse<double>> media(n + 2);
  std::vector<double> thickness(n);
  for (std::size_t i = 0; i < n; ++i) thickness[i] = stack.layers[i].thickness_mm * 1e-3;

  double sum = 0.0;
  for (const auto& gp : grid) {
    media.front() = gp.media[0];
    media.back() = gp.media[0];
    for (std::size_t i = 0; i < n; ++i) media[i + 1] = gp.media[static_cast<std::size_t>(stack.layers[i].material_id)];
    sum += std::abs(reflection_recursion<double>(media, thickness, Polarization::TE));
    sum += std::abs(reflection_recursion<double>(media, thickness, Polarization::TM));
  }
  return sum;
}

ObjectiveVector ObjectiveEvaluator::operator()(const LayerStack& stack) const {
  check_stack(stack, *db_);
  const double n_angles = static_cast<double>(spec_.angles_deg.size());
  const double pass_norm = 2.0 * n_angles * static_cast<double>(pass_freqs_.size());
  const double stop_norm = 2.0 * n_angles * static_cast<double>(stop_freqs_.size());
  const double of1 = reflection_sum(pass_grid_, stack) / pass_norm;
  // sum of (2 - |TE| - |TM|) over the stop grid, divided by 2 N_ap N_fs.
  const double of2 = (stop_norm - reflection_sum(stop_grid_, stack)) / stop_norm;
  return {of1, of2};
}

ObjectiveVector evaluate_objectives(const LayerStack& stack, const MaterialDatabase& db, const FilterSpec& spec) {
  return ObjectiveEvaluator(db, spec)(stack);
}

std::vector<double> statistics_grid(const FilterSpec& spec, BandRole role, CutoffPolicy policy) {
  auto grid = role_grid(spec, role);
  if (policy == CutoffPolicy::Include) return grid;
  const auto& other = spec.bands(role == BandRole::Pass ? BandRole::Stop : BandRole::Pass);
  auto is_cutoff = [&](double f) {
    return std::any_of(other.begin(), other.end(),
                       [f](const Band& b) { return near(f, b.lo_ghz) || near(f, b.hi_ghz); });
  };
  grid.erase(std::remove_if(grid.begin(), grid.end(), is_cutoff), grid.end());
  if (grid.empty()) throw ConfigError("band statistics grid is empty after removing cutoff frequencies");
  return grid;
}

BandStatistics band_statistics(const LayerStack& stack, const MaterialDatabase& db, const FilterSpec& spec,
                               BandRole role, Polarization pol, double angle_deg, CutoffPolicy policy) {
  check_spec(spec);
  if (std::none_of(spec.angles_deg.begin(), spec.angles_deg.end(), [&](double a) { return a == angle_deg; })) {
    throw ConfigError("band_statistics: angle is not part of the filter's angle grid");
  }
  check_stack(stack, db);
  const auto grid = statistics_grid(spec, role, policy);
  BandStatistics s{-std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity()};
  for (double f : grid) {
    const double v = magnitude_db(total_reflection(stack, db, {f, angle_deg, pol}));
    s.max_db = std::max(s.max_db, v);
    s.min_db = std::min(s.min_db, v);
    s.avg_db += v;
  }
  s.avg_db = std::clamp(s.avg_db / static_cast<double>(grid.size()), s.min_db, s.max_db);
  return s;
}

}  // namespace mmdf
