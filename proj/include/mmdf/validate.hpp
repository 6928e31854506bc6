#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmdf/em_model.hpp"
#include "mmdf/rng.hpp"

namespace mmdf {

/// The reflection model under test; the default is the interface recursion.
using ReflectionModel =
    std::function<std::complex<double>(const LayerStack&, const MaterialDatabase&, const PlaneWave&)>;

struct ValidationOptions {
  int random_stacks = 1000;
  int pareto_sets = 200;
  int pareto_points = 1000;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Random stack with 1..max_layers layers drawn from materials 1..db.size(), thickness in [0, 3] mm.
LayerStack random_stack(const MaterialDatabase& db, Rng& rng, int max_layers = 8);

/// Runs every oracle suite against `model`.
std::vector<SuiteResult> run_validation(const MaterialDatabase& db, const ReflectionModel& model,
                                        const ValidationOptions& options = {});
std::vector<SuiteResult> run_validation(const MaterialDatabase& db, const ValidationOptions& options = {});

bool all_passed(const std::vector<SuiteResult>& results);

/// One line per suite: PASS/FAIL, name, max deviation and tolerance.
void print_report(std::ostream& out, const std::vector<SuiteResult>& results);

}  // namespace mmdf
