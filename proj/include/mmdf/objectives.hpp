#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmdf/em_model.hpp"

namespace mmdf {

enum class FilterKind { LP, HP, BP };
enum class BandRole { Pass, Stop };

std::string to_string(FilterKind kind);
std::optional<FilterKind> parse_filter_kind(const std::string& text);
inline const char* to_string(BandRole role) { return role == BandRole::Pass ? "pass" : "stop"; }

/// Closed frequency interval in GHz.
struct Band {
  double lo_ghz;
  double hi_ghz;
};

struct FilterSpec {
  FilterKind kind = FilterKind::LP;
  std::vector<Band> pass_bands;
  std::vector<Band> stop_bands;
  std::vector<double> angles_deg{0.0, 15.0, 30.0, 45.0};
  double freq_step_ghz = 0.2;

  const std::vector<Band>& bands(BandRole role) const { return role == BandRole::Pass ? pass_bands : stop_bands; }
};

/// (of1, of2): pass-band mean reflection and one minus stop-band mean reflection. Both minimized.
using ObjectiveVector = Eigen::Vector2d;

/// Throws ConfigError for empty/inverted/overlapping bands, bad angles or step.
void check_spec(const FilterSpec& spec);

/// LP: pass [2,10] stop [10,18]; HP: the reverse; BP: pass [8,12] stop [2,8] and [12,18].
FilterSpec builtin_spec(FilterKind kind);

/// Inclusive arithmetic grid lo, lo+step, ...; `hi` is included when it is a whole
/// number of steps from `lo` (within 1e-9).
std::vector<double> band_grid(const Band& band, double step_ghz);

/// Pooled grid over every band of `role`, in band order.
std::vector<double> role_grid(const FilterSpec& spec, BandRole role);

/// Caches kz and constitutives for every (grid frequency, angle, material) so
/// repeated objective evaluations only run the interface recursion.
class ObjectiveEvaluator {
public:
  ObjectiveEvaluator(const MaterialDatabase& db, FilterSpec spec);

  ObjectiveVector operator()(const LayerStack& stack) const;

  const FilterSpec& spec() const { return spec_; }
  std::size_t pass_points() const { return pass_freqs_.size(); }
  std::size_t stop_points() const { return stop_freqs_.size(); }

private:
  struct GridPoint {
    // Index 0 is air, then material ids 1..M.
    std::vector<MediumResponse<double>> media;
  };

  // Sum over the grid of |TR_TE| + |TR_TM|, f-major then angle, TE before TM.
  double reflection_sum(const std::vector<GridPoint>& grid, const LayerStack& stack) const;
  std::vector<GridPoint> build(const std::vector<double>& freqs) const;

  const MaterialDatabase* db_;
  FilterSpec spec_;
  std::vector<double> pass_freqs_;
  std::vector<double> stop_freqs_;
  std::vector<GridPoint> pass_grid_;
  std::vector<GridPoint> stop_grid_;
};

ObjectiveVector evaluate_objectives(const LayerStack& stack, const MaterialDatabase& db, const FilterSpec& spec);

/// How the statistics grid treats frequencies shared by a pass and a stop band.
enum class CutoffPolicy {
  Include,  ///< closed bands, same grid as the objectives
  Exclude,  ///< drop cutoff frequencies from both sides
};

struct BandStatistics {
  double max_db;
  double avg_db;  ///< arithmetic mean of the pointwise dB values
  double min_db;
};

/// Frequency grid used for band statistics under `policy`.
std::vector<double> statistics_grid(const FilterSpec& spec, BandRole role, CutoffPolicy policy);

/// Max / mean / min of 20 log10 |TR| over the band grid at one angle and polarization.
/// `angle_deg` must be one of spec.angles_deg.
BandStatistics band_statistics(const LayerStack& stack, const MaterialDatabase& db, const FilterSpec& spec,
                               BandRole role, Polarization pol, double angle_deg,
                               CutoffPolicy policy = CutoffPolicy::Exclude);

}  // namespace mmdf
