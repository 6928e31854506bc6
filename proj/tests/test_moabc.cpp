#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "mmdf/moabc.hpp"
#include "mmdf/reference.hpp"

using namespace mmdf;

namespace {

// Convex two-objective toy problem on [0, 1]^d; front at x_2..x_d = 0.
ObjectiveVector toy(const DecisionVector& x) {
  const double g = 1.0 + 9.0 * x.tail(x.size() - 1).mean();
  const double f1 = x[0];
  return ObjectiveVector(f1, g * (1.0 - std::sqrt(f1 / g)) / 10.0);
}

AbcConfig toy_config(int np, int ni, std::uint64_t seed) {
  AbcConfig cfg;
  cfg.colony_size = np;
  cfg.iterations = ni;
  cfg.limit = 10;
  cfg.seed = seed;
  cfg.bounds.lower = Eigen::VectorXd::Zero(4);
  cfg.bounds.upper = Eigen::VectorXd::Ones(4);
  return cfg;
}

FoodSource source(double of1, double of2, int trials = 0) {
  FoodSource s;
  s.position = DecisionVector::Constant(2, of1);
  s.objectives = ObjectiveVector(of1, of2);
  s.fitness = fitness(s.objectives);
  s.trials = trials;
  return s;
}

bool mutually_nondominated(const std::vector<ArchiveEntry>& entries) {
  for (const auto& a : entries)
    for (const auto& b : entries)
      if (dominates(a.objectives, b.objectives)) return false;
  return true;
}

}  // namespace

TEST(Fitness, Values) {
  EXPECT_EQ(fitness(0.0), 1.0);
  EXPECT_EQ(fitness(1.0), 0.5);
  EXPECT_EQ(fitness(-0.5), 1.5);
  EXPECT_EQ(fitness(ObjectiveVector(0.0, 1.0)), Eigen::Vector2d(1.0, 0.5));
  double prev = fitness(-2.0);
  for (double of = -1.9; of <= 5.0; of += 0.1) {
    const double cur = fitness(of);
    ASSERT_LT(cur, prev) << of;
    prev = cur;
  }
}

TEST(Neighbor, Examples) {
  SearchBounds b{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Constant(3, 3.0)};
  const DecisionVector x = (DecisionVector(3) << 2.0, 1.0, 0.5).finished();
  const DecisionVector k = (DecisionVector(3) << 1.0, 1.0, 2.5).finished();
  EXPECT_EQ(neighbor(x, k, 0, 0.0, b), x);
  EXPECT_EQ(neighbor(x, k, 1, 0.9, b), x);  // equal components: no move
  EXPECT_EQ(neighbor(x, k, 0, 1.0, b), (DecisionVector(3) << 3.0, 1.0, 0.5).finished());
  EXPECT_EQ(neighbor(x, k, 0, -0.5, b)[0], 1.5);
  // 0.5 + 1 * (0.5 - 2.5) = -1.5 clamps to the lower bound.
  EXPECT_EQ(neighbor(x, k, 2, 1.0, b)[2], 0.0);
  const DecisionVector far = (DecisionVector(3) << 0.0, 1.0, 0.5).finished();
  EXPECT_EQ(neighbor(x, far, 0, 1.0, b)[0], 3.0);  // 2 + 2 = 4 clamps to 3

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto v = neighbor(x, k, static_cast<Eigen::Index>(rng.index(3)), b, rng);
    ASSERT_TRUE(b.contains(v));
    ASSERT_EQ((v.array() != x.array()).count() <= 1, true);
  }
}

TEST(Scatter, EndpointsAndDegenerateBounds) {
  SearchBounds b{(Eigen::VectorXd(2) << 0.0, 1.0).finished(), (Eigen::VectorXd(2) << 3.0, 16.0).finished()};
  EXPECT_EQ(scatter(b, Eigen::VectorXd::Zero(2)), b.lower);
  EXPECT_EQ(scatter(b, Eigen::VectorXd::Ones(2)), b.upper);
  EXPECT_EQ(scatter(b, Eigen::VectorXd::Constant(2, 0.5)), (DecisionVector(2) << 1.5, 8.5).finished());
  SearchBounds point{Eigen::VectorXd::Constant(2, 2.0), Eigen::VectorXd::Constant(2, 2.0)};
  Rng rng(2);
  EXPECT_EQ(random_position(point, rng), point.lower);
}

TEST(Selection, Probabilities) {
  const std::vector<Eigen::Vector2d> same(4, Eigen::Vector2d(0.5, 0.5));
  for (double p : selection_probabilities(same)) EXPECT_DOUBLE_EQ(p, 0.25);

  const std::vector<Eigen::Vector2d> two{{1.0, 1.0}, {3.0, 3.0}};
  const auto p = selection_probabilities(two);
  EXPECT_DOUBLE_EQ(p[0], 0.25);
  EXPECT_DOUBLE_EQ(p[1], 0.75);

  const std::vector<Eigen::Vector2d> zero(3, Eigen::Vector2d::Zero());
  for (double q : selection_probabilities(zero)) EXPECT_DOUBLE_EQ(q, 1.0 / 3.0);

  Rng rng(4);
  std::vector<Eigen::Vector2d> random(50);
  for (auto& f : random) f = Eigen::Vector2d(rng.uniform(), rng.uniform());
  const auto pr = selection_probabilities(random);
  EXPECT_NEAR(std::accumulate(pr.begin(), pr.end(), 0.0), 1.0, 1e-12);
}

TEST(Selection, Roulette) {
  const std::vector<double> p{0.25, 0.75};
  EXPECT_EQ(roulette(p, 0.0), 0u);
  EXPECT_EQ(roulette(p, 0.2499), 0u);
  EXPECT_EQ(roulette(p, 0.25), 1u);
  EXPECT_EQ(roulette(p, 0.9999999), 1u);
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates(ObjectiveVector(0.1, 0.2), ObjectiveVector(0.2, 0.2)));
  EXPECT_FALSE(dominates(ObjectiveVector(0.2, 0.2), ObjectiveVector(0.2, 0.2)));
  EXPECT_FALSE(dominates(ObjectiveVector(0.1, 0.3), ObjectiveVector(0.2, 0.2)));
  EXPECT_FALSE(dominates(ObjectiveVector(0.3, 0.3), ObjectiveVector(0.2, 0.2)));
}

TEST(GreedyReplace, ThreeCases) {
  const auto current = source(0.4, 0.4, 3);
  const auto better = greedy_replace(current, source(0.3, 0.4), 0.9);
  EXPECT_EQ(better.objectives, ObjectiveVector(0.3, 0.4));
  EXPECT_EQ(better.trials, 0);

  const auto worse = greedy_replace(current, source(0.5, 0.4), 0.0);
  EXPECT_EQ(worse.objectives, current.objectives);
  EXPECT_EQ(worse.trials, 4);

  const auto traded = greedy_replace(current, source(0.3, 0.5), 0.4);
  EXPECT_EQ(traded.objectives, ObjectiveVector(0.3, 0.5));
  EXPECT_EQ(traded.trials, 0);
  const auto kept = greedy_replace(current, source(0.3, 0.5), 0.6);
  EXPECT_EQ(kept.objectives, current.objectives);
  EXPECT_EQ(kept.trials, 4);

  // Equal objectives are neither dominating nor dominated: the coin decides.
  EXPECT_EQ(greedy_replace(current, source(0.4, 0.4), 0.0).trials, 0);
  EXPECT_EQ(greedy_replace(current, source(0.4, 0.4), 0.9).trials, 4);
}

TEST(Archive, UpdateExamples) {
  ParetoArchive a;
  EXPECT_TRUE(a.insert(DecisionVector::Zero(1), ObjectiveVector(0.3, 0.3)));
  EXPECT_FALSE(a.insert(DecisionVector::Zero(1), ObjectiveVector(0.4, 0.4)));
  EXPECT_FALSE(a.insert(DecisionVector::Ones(1), ObjectiveVector(0.3, 0.3)));
  EXPECT_TRUE(a.insert(DecisionVector::Zero(1), ObjectiveVector(0.1, 0.5)));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.insert(DecisionVector::Zero(1), ObjectiveVector(0.05, 0.25)));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.entries()[0].objectives, ObjectiveVector(0.05, 0.25));
}

TEST(Archive, MatchesBruteForce) {
  Rng rng(6);
  for (int set = 0; set < 20; ++set) {
    std::vector<ObjectiveVector> pts(300);
    for (auto& p : pts) {
      const double t = rng.uniform();
      p = set % 2 ? ObjectiveVector(t, 1.0 - t + 0.2 * rng.uniform()) : ObjectiveVector(t, rng.uniform());
    }
    ParetoArchive a;
    for (const auto& p : pts) a.insert(DecisionVector::Zero(1), p);
    auto front = reference::brute_force_pareto(pts);
    std::vector<ObjectiveVector> got;
    for (const auto& e : a.sorted()) got.push_back(e.objectives);
    std::sort(front.begin(), front.end(),
              [](const auto& x, const auto& y) { return x[0] < y[0] || (x[0] == y[0] && x[1] < y[1]); });
    ASSERT_EQ(got, front) << "set " << set;
  }
}

TEST(Archive, CapThinsToCapacity) {
  ParetoArchive a(10);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    a.insert(DecisionVector::Zero(1), ObjectiveVector(t, 1.0 - t));
  }
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(mutually_nondominated(a.entries()));
}

TEST(Scout, Cases) {
  AbcConfig cfg = toy_config(6, 1, 1);
  cfg.limit = 5;
  Rng rng(9);
  std::vector<FoodSource> sources{source(0.1, 0.9, 1), source(0.5, 0.5, 4), source(0.9, 0.1, 0)};
  EXPECT_FALSE(scout_phase(sources, cfg, toy, rng).has_value());

  sources[1].trials = 5;
  const auto one = scout_phase(sources, cfg, toy, rng);
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(*one, 1u);
  EXPECT_EQ(sources[1].trials, 0);
  EXPECT_TRUE(cfg.bounds.contains(sources[1].position));
  EXPECT_EQ(sources[1].objectives, toy(sources[1].position));

  sources[0].trials = 6;
  sources[2].trials = 8;
  EXPECT_EQ(scout_phase(sources, cfg, toy, rng).value(), 2u);
  EXPECT_EQ(sources[0].trials, 6);  // only one scout per call

  sources[0].trials = 7;
  sources[1].trials = 7;
  EXPECT_EQ(scout_phase(sources, cfg, toy, rng).value(), 0u);
}

TEST(Knee, Examples) {
  std::vector<ArchiveEntry> e{{DecisionVector::Zero(1), ObjectiveVector(0.0, 1.0)},
                              {DecisionVector::Zero(1), ObjectiveVector(0.3, 0.3)},
                              {DecisionVector::Zero(1), ObjectiveVector(1.0, 0.0)}};
  EXPECT_EQ(knee_selection(e).objectives, ObjectiveVector(0.3, 0.3));
  std::reverse(e.begin(), e.end());
  EXPECT_EQ(knee_selection(e).objectives, ObjectiveVector(0.3, 0.3));

  const std::vector<ArchiveEntry> tie{{DecisionVector::Zero(1), ObjectiveVector(0.4, 0.3)},
                                      {DecisionVector::Zero(1), ObjectiveVector(0.3, 0.4)}};
  EXPECT_EQ(knee_selection(tie).objectives, ObjectiveVector(0.3, 0.4));
  EXPECT_THROW(knee_selection(std::span<const ArchiveEntry>{}), std::invalid_argument);
}

TEST(Decode, RoundsAndClamps) {
  const DecisionVector v = (DecisionVector(6) << 1.25, 8.4, 0.0, 16.49, 2.0, 0.7).finished();
  const auto stack = decode_candidate(v, 1, 16);
  ASSERT_EQ(stack.size(), 3u);
  EXPECT_EQ(stack.layers[0].material_id, 8);
  EXPECT_EQ(stack.layers[0].thickness_mm, 1.25);
  EXPECT_EQ(stack.layers[1].material_id, 16);
  EXPECT_EQ(stack.layers[1].thickness_mm, 0.0);
  EXPECT_EQ(stack.layers[2].material_id, 1);
}

TEST(Bounds, LayerLayout) {
  const auto b = SearchBounds::for_layers(2, 0.0, 3.0, 1, 16);
  EXPECT_EQ(b.lower, (Eigen::VectorXd(4) << 0.0, 1.0, 0.0, 1.0).finished());
  EXPECT_EQ(b.upper, (Eigen::VectorXd(4) << 3.0, 16.0, 3.0, 16.0).finished());
}

TEST(Config, Rejections) {
  auto cfg = toy_config(10, 5, 1);
  EXPECT_NO_THROW(check_config(cfg));
  cfg.colony_size = 7;
  EXPECT_THROW(check_config(cfg), ConfigError);
  cfg.colony_size = 2;
  EXPECT_THROW(check_config(cfg), ConfigError);
  cfg = toy_config(10, -1, 1);
  EXPECT_THROW(check_config(cfg), ConfigError);
  cfg = toy_config(10, 5, 1);
  cfg.limit = 0;
  EXPECT_THROW(check_config(cfg), ConfigError);
}

TEST(RunAbc, ZeroIterationsKeepsInitialFront) {
  const auto cfg = toy_config(20, 0, 3);
  std::vector<ObjectiveVector> initial;
  const auto result = run_abc(toy, cfg, [&](int it, const auto& sources, const auto&) {
    if (it == 0)
      for (const auto& s : sources) initial.push_back(s.objectives);
  });
  EXPECT_EQ(result.evaluations, 10u);
  ASSERT_EQ(result.history.size(), 1u);
  EXPECT_EQ(result.archive.size(), reference::brute_force_pareto(initial).size());
}

TEST(RunAbc, SameSeedSameResult) {
  const auto a = run_abc(toy, toy_config(20, 40, 11));
  const auto b = run_abc(toy, toy_config(20, 40, 11));
  const auto c = run_abc(toy, toy_config(20, 40, 12));
  ASSERT_EQ(a.archive.size(), b.archive.size());
  const auto sa = a.archive.sorted();
  const auto sb = b.archive.sorted();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    ASSERT_EQ(sa[i].position, sb[i].position);
    ASSERT_EQ(sa[i].objectives, sb[i].objectives);
  }
  EXPECT_EQ(a.knee.objectives, b.knee.objectives);
  EXPECT_EQ(a.evaluations, b.evaluations);
  EXPECT_NE(a.knee.position, c.knee.position);
}

TEST(RunAbc, ArchiveStaysNonDominatedAndInBounds) {
  const auto cfg = toy_config(20, 60, 5);
  int calls = 0;
  const auto result = run_abc(toy, cfg, [&](int it, const std::vector<FoodSource>& sources, const ParetoArchive& a) {
    EXPECT_EQ(it, calls++);
    ASSERT_TRUE(mutually_nondominated(a.entries())) << "iteration " << it;
    for (const auto& s : sources) ASSERT_TRUE(cfg.bounds.contains(s.position));
  });
  EXPECT_EQ(calls, 61);
  EXPECT_EQ(result.history.size(), 61u);
  // Archive sizes never shrink below one and the knee is a member.
  const auto& entries = result.archive.entries();
  EXPECT_TRUE(std::any_of(entries.begin(), entries.end(),
                          [&](const auto& e) { return e.objectives == result.knee.objectives; }));
  // The toy front is reached: some archive member has of2 near the analytic curve.
  const auto& k = result.knee.objectives;
  EXPECT_LT(k[1], (1.0 - std::sqrt(k[0])) / 10.0 + 0.05);
}

TEST(RunAbc, DesignProblemSmoke) {
  DesignProblem problem;
  problem.layers = 3;
  AbcConfig cfg;
  cfg.colony_size = 8;
  cfg.iterations = 3;
  cfg.seed = 2;
  const auto result = run_optimization(problem, cfg);
  EXPECT_FALSE(result.archive.empty());
  for (const auto& e : result.archive.entries()) {
    EXPECT_EQ(e.position.size(), 6);
    EXPECT_GE(e.objectives.minCoeff(), 0.0);
    EXPECT_LE(e.objectives.maxCoeff(), 1.0);
  }
  problem.material_max = 20;
  EXPECT_THROW(run_optimization(problem, cfg), ConfigError);
}
