#include "mmdf/moabc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mmdf {

SearchBounds SearchBounds::for_layers(int layers, double thickness_min_mm, double thickness_max_mm,
                                      int material_min, int material_max) {
  if (layers < 1) throw ConfigError("layer count must be at least 1");
  if (!(thickness_min_mm >= 0.0) || !(thickness_min_mm <= thickness_max_mm) || !std::isfinite(thickness_max_mm)) {
    throw ConfigError("thickness bounds must satisfy 0 <= min <= max");
  }
  if (material_min < 1 || material_min > material_max) {
    throw ConfigError("material id range must satisfy 1 <= min <= max");
  }
  SearchBounds b;
  b.lower.resize(2 * layers);
  b.upper.resize(2 * layers);
  for (int i = 0; i < layers; ++i) {
    b.lower[2 * i] = thickness_min_mm;
    b.upper[2 * i] = thickness_max_mm;
    b.lower[2 * i + 1] = material_min;
    b.upper[2 * i + 1] = material_max;
  }
  return b;
}

void check_config(const AbcConfig& cfg) {
  if (cfg.colony_size < 4 || cfg.colony_size % 2 != 0) {
    throw ConfigError("colony size NP must be even and at least 4 (got " + std::to_string(cfg.colony_size) + ")");
  }
  if (cfg.iterations < 0) throw ConfigError("iteration count NI must be non-negative");
  if (cfg.limit < 1) throw ConfigError("limit must be at least 1");
  const auto& b = cfg.bounds;
  if (b.lower.size() == 0 || b.lower.size() != b.upper.size()) throw ConfigError("search bounds are empty or ragged");
  if (!(b.lower.array() <= b.upper.array()).all() || !b.lower.allFinite() || !b.upper.allFinite()) {
    throw ConfigError("search bounds must be finite with lower <= upper");
  }
}

double fitness(double objective) {
  return objective >= 0.0 ? 1.0 / (1.0 + objective) : 1.0 + std::abs(objective);
}

Eigen::Vector2d fitness(const ObjectiveVector& objectives) {
  return {fitness(objectives[0]), fitness(objectives[1])};
}

DecisionVector scatter(const SearchBounds& bounds, const Eigen::VectorXd& u) {
  DecisionVector x = bounds.lower + u.cwiseProduct(bounds.upper - bounds.lower);
  bounds.clamp(x);
  return x;
}

DecisionVector random_position(const SearchBounds& bounds, Rng& rng) {
  Eigen::VectorXd u(bounds.dimension());
  for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = rng.uniform();
  return scatter(bounds, u);
}

FoodSource make_source(DecisionVector position, const ObjectiveFn& objective) {
  FoodSource s;
  s.objectives = objective(position);
  s.fitness = fitness(s.objectives);
  s.position = std::move(position);
  s.trials = 0;
  return s;
}

std::vector<FoodSource> init_population(const AbcConfig& cfg, const ObjectiveFn& objective, Rng& rng) {
  check_config(cfg);
  std::vector<FoodSource> sources;
  sources.reserve(static_cast<std::size_t>(cfg.food_sources()));
  for (int i = 0; i < cfg.food_sources(); ++i) sources.push_back(make_source(random_position(cfg.bounds, rng), objective));
  return sources;
}

DecisionVector neighbor(const DecisionVector& current, const DecisionVector& partner, Eigen::Index j, double phi,
                        const SearchBounds& bounds) {
  DecisionVector v = current;
  v[j] = current[j] + phi * (current[j] - partner[j]);
  v[j] = std::clamp(v[j], bounds.lower[j], bounds.upper[j]);
  return v;
}

DecisionVector neighbor(const DecisionVector& current, const DecisionVector& partner, Eigen::Index j,
                        const SearchBounds& bounds, Rng& rng) {
  return neighbor(current, partner, j, rng.uniform(-1.0, 1.0), bounds);
}

std::vector<double> selection_probabilities(std::span<const Eigen::Vector2d> fitnesses) {
  std::vector<double> prob(fitnesses.size());
  if (prob.empty()) return prob;
  double total = 0.0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    prob[i] = fitnesses[i].mean();
    total += prob[i];
  }
  if (!(total > 0.0)) {
    std::fill(prob.begin(), prob.end(), 1.0 / static_cast<double>(prob.size()));
    return prob;
  }
  for (auto& p : prob) p /= total;
  return prob;
}

std::size_t roulette(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // u landed in the rounding gap above the last cumulative value.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return i;
  }
  return probabilities.size() - 1;
}

FoodSource greedy_replace(const FoodSource& source, FoodSource candidate, double draw) {
  if (dominates(candidate.objectives, source.objectives)) {
    candidate.trials = 0;
    return candidate;
  }
  if (!dominates(source.objectives, candidate.objectives) && draw < 0.5) {
    candidate.trials = 0;
    return candidate;
  }
  FoodSource kept = source;
  ++kept.trials;
  return kept;
}

FoodSource greedy_replace(const FoodSource& source, FoodSource candidate, Rng& rng) {
  const bool trade_off =
      !dominates(candidate.objectives, source.objectives) && !dominates(source.objectives, candidate.objectives);
  const double draw = trade_off ? rng.uniform() : 1.0;
  return greedy_replace(source, std::move(candidate), draw);
}

std::optional<std::size_t> scout_phase(std::vector<FoodSource>& sources, const AbcConfig& cfg,
                                       const ObjectiveFn& objective, Rng& rng, ParetoArchive* archive) {
  std::optional<std::size_t> exhausted;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i].trials >= cfg.limit && (!exhausted || sources[i].trials > sources[*exhausted].trials)) {
      exhausted = i;
    }
  }
  if (!exhausted) return std::nullopt;
  sources[*exhausted] = make_source(random_position(cfg.bounds, rng), objective);
  if (archive) archive->insert(sources[*exhausted].position, sources[*exhausted].objectives);
  return exhausted;
}

namespace {

std::size_t other_index(std::size_t i, std::size_t n, Rng& rng) {
  // Uniform over {0..n-1} \ {i}.
  const std::size_t k = rng.index(n - 1);
  return k >= i ? k + 1 : k;
}

}  // namespace

AbcResult run_abc(const ObjectiveFn& objective, const AbcConfig& cfg, const IterationObserver& observer) {
  check_config(cfg);
  Rng rng(cfg.seed);
  Rng init_rng = rng.split();
  Rng search_rng = rng.split();
  Rng scout_rng = rng.split();

  AbcResult result{ParetoArchive(cfg.archive_cap), {}, {}, 0};
  auto& archive = result.archive;
  std::size_t& evaluations = result.evaluations;
  const ObjectiveFn counted = [&](const DecisionVector& x) {
    ++evaluations;
    return objective(x);
  };

  auto sources = init_population(cfg, counted, init_rng);
  for (const auto& s : sources) archive.insert(s.position, s.objectives);

  auto record = [&](int iteration) {
    result.history.push_back({iteration, archive.size(), knee_selection(archive).objectives});
    if (observer) observer(iteration, sources, archive);
  };
  record(0);

  const std::size_t sn = sources.size();
  const Eigen::Index dim = cfg.bounds.dimension();

  auto explore = [&](std::size_t i) {
    const std::size_t k = other_index(i, sn, search_rng);
    const auto j = static_cast<Eigen::Index>(search_rng.index(static_cast<std::size_t>(dim)));
    FoodSource candidate =
        make_source(neighbor(sources[i].position, sources[k].position, j, cfg.bounds, search_rng), counted);
    archive.insert(candidate.position, candidate.objectives);
    sources[i] = greedy_replace(sources[i], std::move(candidate), search_rng);
  };

  std::vector<Eigen::Vector2d> fitnesses(sn);
  for (int it = 1; it <= cfg.iterations; ++it) {
    for (std::size_t i = 0; i < sn; ++i) explore(i);

    for (std::size_t i = 0; i < sn; ++i) fitnesses[i] = sources[i].fitness;
    const auto prob = selection_probabilities(fitnesses);
    for (std::size_t draw = 0; draw < sn; ++draw) explore(roulette(prob, search_rng.uniform()));

    scout_phase(sources, cfg, counted, scout_rng, &archive);
    record(it);
  }

  result.knee = knee_selection(archive);
  return result;
}

LayerStack decode_candidate(const DecisionVector& v, int material_min, int material_max) {
  if (v.size() % 2 != 0) throw ConfigError("decision vector must hold (thickness, material) pairs");
  LayerStack stack;
  stack.layers.reserve(static_cast<std::size_t>(v.size() / 2));
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    const auto id = static_cast<int>(std::round(v[i + 1]));
    stack.layers.push_back({std::clamp(id, material_min, material_max), std::max(0.0, v[i])});
  }
  return stack;
}

AbcResult run_optimization(const DesignProblem& problem, AbcConfig cfg, const IterationObserver& observer) {
  if (problem.db == nullptr) throw ConfigError("design problem has no material database");
  if (problem.material_max > static_cast<int>(problem.db->size())) {
    throw ConfigError("material id range exceeds the database size " + std::to_string(problem.db->size()));
  }
  cfg.bounds = problem.bounds();
  const ObjectiveEvaluator evaluator(*problem.db, problem.spec);
  const int mat_min = problem.material_min;
  const int mat_max = problem.material_max;
  return run_abc([&](const DecisionVector& x) { return evaluator(decode_candidate(x, mat_min, mat_max)); }, cfg,
                 observer);
}

}  // namespace mmdf
