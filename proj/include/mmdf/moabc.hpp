#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmdf/em_model.hpp"
#include "mmdf/objectives.hpp"
#include "mmdf/pareto.hpp"
#include "mmdf/rng.hpp"

namespace mmdf {

/// Box constraints, one interval per decision dimension.
struct SearchBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index dimension() const { return lower.size(); }

  /// Layout for an n-layer filter: [thickness_1, material_1, ..., thickness_n, material_n].
  static SearchBounds for_layers(int layers, double thickness_min_mm, double thickness_max_mm, int material_min,
                                 int material_max);

  /// Componentwise projection onto the box.
  template <typename Derived>
  void clamp(Eigen::MatrixBase<Derived>& x) const {
    x = x.cwiseMax(lower).cwiseMin(upper);
  }

  bool contains(const DecisionVector& x) const {
    return x.size() == lower.size() && (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

struct AbcConfig {
  int colony_size = 100;  ///< NP; half employed, half onlooker
  int iterations = 1000;  ///< NI
  int limit = 100;        ///< abandonment threshold
  std::uint64_t seed = 1;
  SearchBounds bounds;
  std::size_t archive_cap = 0;  ///< 0: unbounded

  int food_sources() const { return colony_size / 2; }
};

/// Throws ConfigError unless NP is even and >= 4, NI >= 0, limit >= 1 and the bounds are consistent.
void check_config(const AbcConfig& cfg);

using ObjectiveFn = std::function<ObjectiveVector(const DecisionVector&)>;

struct FoodSource {
  DecisionVector position;
  ObjectiveVector objectives;
  Eigen::Vector2d fitness;
  int trials = 0;
};

/// Nectar quality of one objective value: 1/(1+of) for of >= 0, otherwise 1+|of|.
double fitness(double objective);
Eigen::Vector2d fitness(const ObjectiveVector& objectives);

/// x_j = lower_j + u_j (upper_j - lower_j) for the given uniform draws.
DecisionVector scatter(const SearchBounds& bounds, const Eigen::VectorXd& u);
DecisionVector random_position(const SearchBounds& bounds, Rng& rng);

FoodSource make_source(DecisionVector position, const ObjectiveFn& objective);

/// SN = NP/2 freshly scattered and evaluated sources with zero trials.
std::vector<FoodSource> init_population(const AbcConfig& cfg, const ObjectiveFn& objective, Rng& rng);

/// v_j = x_j + phi (x_j - partner_j) on dimension j only, clamped to the bounds.
DecisionVector neighbor(const DecisionVector& current, const DecisionVector& partner, Eigen::Index j, double phi,
                        const SearchBounds& bounds);
/// Same, with phi drawn uniformly from [-1, 1].
DecisionVector neighbor(const DecisionVector& current, const DecisionVector& partner, Eigen::Index j,
                        const SearchBounds& bounds, Rng& rng);

/// Roulette probabilities from the mean of each source's two fitness values.
/// Falls back to uniform when the fitness sum is zero.
std::vector<double> selection_probabilities(std::span<const Eigen::Vector2d> fitnesses);

/// Index drawn with the given probabilities from one uniform value in [0, 1).
std::size_t roulette(std::span<const double> probabilities, double u);

/// Pareto replacement of `source` by `candidate`. `draw` is the uniform number used
/// only when neither dominates (accept when draw < 0.5).
FoodSource greedy_replace(const FoodSource& source, FoodSource candidate, double draw);
FoodSource greedy_replace(const FoodSource& source, FoodSource candidate, Rng& rng);

/// Reseeds the exhausted source (trials >= limit) with the most trials, lowest index
/// on ties. Returns its index, or nothing when no source is exhausted.
std::optional<std::size_t> scout_phase(std::vector<FoodSource>& sources, const AbcConfig& cfg,
                                       const ObjectiveFn& objective, Rng& rng, ParetoArchive* archive = nullptr);

struct HistoryRow {
  int iteration;
  std::size_t archive_size;
  ObjectiveVector knee;
};

struct AbcResult {
  ParetoArchive archive;
  ArchiveEntry knee;
  std::vector<HistoryRow> history;
  std::size_t evaluations = 0;
};

/// Called after initialization (iteration 0) and after every iteration.
using IterationObserver =
    std::function<void(int iteration, const std::vector<FoodSource>& sources, const ParetoArchive& archive)>;

/// Multi-objective ABC over an arbitrary bi-objective function.
AbcResult run_abc(const ObjectiveFn& objective, const AbcConfig& cfg, const IterationObserver& observer = {});

/// Filter design problem: decision vectors decode to layer stacks evaluated against a filter spec.
struct DesignProblem {
  const MaterialDatabase* db = &builtin_database();
  FilterSpec spec = builtin_spec(FilterKind::LP);
  int layers = 5;
  double thickness_min_mm = 0.0;
  double thickness_max_mm = 3.0;
  int material_min = 1;
  int material_max = 16;

  SearchBounds bounds() const {
    return SearchBounds::for_layers(layers, thickness_min_mm, thickness_max_mm, material_min, material_max);
  }
};

/// Thickness used as-is (mm); material surrogate rounded to nearest and clamped to the id range.
LayerStack decode_candidate(const DecisionVector& v, int material_min, int material_max);
inline LayerStack decode_candidate(const DecisionVector& v, const DesignProblem& problem) {
  return decode_candidate(v, problem.material_min, problem.material_max);
}

/// Runs the optimizer on a filter design problem. `cfg.bounds` is overwritten by the problem's bounds.
AbcResult run_optimization(const DesignProblem& problem, AbcConfig cfg, const IterationObserver& observer = {});

}  // namespace mmdf
