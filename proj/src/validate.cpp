#include "mmdf/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "mmdf/pareto.hpp"
#include "mmdf/reference.hpp"

namespace mmdf {

namespace {

constexpr double kAngles[] = {0.0, 15.0, 30.0, 45.0};
constexpr Polarization kPols[] = {Polarization::TE, Polarization::TM};

struct Tracker {
  double worst = 0.0;
  std::string where;

  void observe(double deviation, const std::string& context) {
    if (!(deviation <= worst)) {  // also catches NaN
      worst = deviation;
      where = context;
    }
  }
};

std::string describe(const LayerStack& stack, const PlaneWave& wave) {
  std::string s = "stack=";
  for (std::size_t i = 0; i < stack.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%d:%.6g", i ? "," : "", stack.layers[i].material_id,
                  stack.layers[i].thickness_mm);
    s += buf;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, " f=%.6g theta=%.6g %s", wave.f_ghz, wave.theta_deg, to_string(wave.pol));
  return s + buf;
}

SuiteResult finish(std::string name, const Tracker& t, double tolerance) {
  SuiteResult r;
  r.name = std::move(name);
  r.max_deviation = t.worst;
  r.tolerance = tolerance;
  r.passed = t.worst <= tolerance;
  if (!r.passed) r.detail = t.where;
  return r;
}

PlaneWave random_wave(Rng& rng, Polarization pol) {
  return {rng.uniform(2.0, 18.0), kAngles[rng.index(4)], pol};
}

SuiteResult slab_check(const std::string& name, const ReflectionModel& model, const MaterialDatabase& db,
                       double wavelength_fraction, double expected, double tolerance) {
  Tracker t;
  const int id = 1;
  const auto eps = db.constitutives<double>(id, 1.0).eps_r.real();
  LayerStack slab{{Layer{id, 0.0}}};
  for (double f : {2.0, 3.0, 5.5, 10.0, 17.0}) {
    const double wavelength_mm = kSpeedOfLight / (f * 1e9) * 1e3;
    slab.layers[0].thickness_mm = wavelength_fraction * wavelength_mm / std::sqrt(eps);
    for (auto pol : kPols) {
      const PlaneWave w{f, 0.0, pol};
      t.observe(std::abs(std::abs(model(slab, db, w)) - expected), describe(slab, w));
    }
  }
  return finish(name, t, tolerance);
}

std::vector<ObjectiveVector> random_points(Rng& rng, int count, bool trade_off) {
  std::vector<ObjectiveVector> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) {
    const double u = rng.uniform();
    if (trade_off) {
      p = ObjectiveVector(u, (1.0 - u) * (1.0 - u) + 0.05 * rng.uniform());
    } else {
      p = ObjectiveVector(u, rng.uniform());
    }
  }
  return pts;
}

std::vector<ObjectiveVector> sorted_points(std::vector<ObjectiveVector> pts) {
  std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  return pts;
}

}  // namespace

LayerStack random_stack(const MaterialDatabase& db, Rng& rng, int max_layers) {
  LayerStack stack;
  const auto n = 1 + rng.index(static_cast<std::size_t>(max_layers));
  for (std::size_t i = 0; i < n; ++i) {
    stack.layers.push_back({1 + static_cast<int>(rng.index(db.size())), rng.uniform(0.0, 3.0)});
  }
  return stack;
}

std::vector<SuiteResult> run_validation(const MaterialDatabase& db, const ValidationOptions& options) {
  return run_validation(db, [](const LayerStack& s, const MaterialDatabase& d,
                               const PlaneWave& w) { return total_reflection<double>(s, d, w); },
                        options);
}

std::vector<SuiteResult> run_validation(const MaterialDatabase& db, const ReflectionModel& model,
                                        const ValidationOptions& options) {
  if (db.empty()) throw ConfigError("validation needs a non-empty material database");
  std::vector<SuiteResult> results;
  Rng root(options.seed);

  // Recursion against the transfer-matrix oracle, plus passivity on the same draws.
  {
    Rng rng = root.split();
    Tracker tmm[2];
    Tracker passive;
    for (int s = 0; s < options.random_stacks; ++s) {
      const LayerStack stack = random_stack(db, rng);
      const double f = rng.uniform(2.0, 18.0);
      const double theta = kAngles[rng.index(4)];
      for (int p = 0; p < 2; ++p) {
        const PlaneWave w{f, theta, kPols[p]};
        const auto tr = model(stack, db, w);
        tmm[p].observe(std::abs(tr - reference::tmm_total_reflection<double>(stack, db, w)), describe(stack, w));
        passive.observe(std::abs(tr) - 1.0, describe(stack, w));
      }
    }
    results.push_back(finish("tmm-equivalence-TE", tmm[0], 1e-9));
    results.push_back(finish("tmm-equivalence-TM", tmm[1], 1e-9));
    results.push_back(finish("passivity", passive, 1e-9));
  }

  // Single slabs against the closed form.
  {
    Rng rng = root.split();
    Tracker airy[2];
    for (int s = 0; s < options.random_stacks; ++s) {
      const int id = 1 + static_cast<int>(rng.index(db.size()));
      const double d = rng.uniform(0.0, 3.0);
      const double f = rng.uniform(2.0, 18.0);
      const double theta = kAngles[rng.index(4)];
      const LayerStack slab{{Layer{id, d}}};
      const auto c = db.constitutives<double>(id, f);
      for (int p = 0; p < 2; ++p) {
        const PlaneWave w{f, theta, kPols[p]};
        airy[p].observe(std::abs(model(slab, db, w) - reference::airy_single_layer<double>(c.eps_r, c.mu_r, d, w)),
                        describe(slab, w));
      }
    }
    results.push_back(finish("airy-single-slab-TE", airy[0], 1e-12));
    results.push_back(finish("airy-single-slab-TM", airy[1], 1e-12));
  }

  if (std::holds_alternative<LosslessDielectric>(db.model(1))) {
    results.push_back(slab_check("half-wave-slab", model, db, 0.5, 0.0, 1e-9));
    const double eps = std::get<LosslessDielectric>(db.model(1)).eps_real;
    results.push_back(slab_check("quarter-wave-slab", model, db, 0.25, std::abs((1.0 - eps) / (1.0 + eps)), 1e-9));
  }

  // Zero-thickness insertion and normal-incidence degeneracy.
  {
    Rng rng = root.split();
    Tracker insertion;
    Tracker magnitude;
    Tracker sign;
    for (int s = 0; s < options.random_stacks; ++s) {
      const LayerStack stack = random_stack(db, rng);
      LayerStack padded = stack;
      const auto at = static_cast<std::ptrdiff_t>(rng.index(stack.size() + 1));
      padded.layers.insert(padded.layers.begin() + at, Layer{1 + static_cast<int>(rng.index(db.size())), 0.0});
      const PlaneWave w = random_wave(rng, kPols[rng.index(2)]);
      insertion.observe(std::abs(model(padded, db, w) - model(stack, db, w)), describe(padded, w));

      const double f = rng.uniform(2.0, 18.0);
      const auto te = model(stack, db, {f, 0.0, Polarization::TE});
      const auto tm = model(stack, db, {f, 0.0, Polarization::TM});
      magnitude.observe(std::abs(std::abs(te) - std::abs(tm)), describe(stack, {f, 0.0, Polarization::TE}));
      sign.observe(std::abs(te + tm), describe(stack, {f, 0.0, Polarization::TM}));
    }
    results.push_back(finish("zero-thickness-insertion", insertion, 1e-12));
    results.push_back(finish("normal-incidence-magnitude", magnitude, 1e-12));
    results.push_back(finish("normal-incidence-TM-sign", sign, 1e-12));
  }

  // kx conservation against explicit refraction angles, lossless materials only.
  {
    std::vector<int> lossless;
    for (int id = 1; id <= static_cast<int>(db.size()); ++id) {
      if (std::holds_alternative<LosslessDielectric>(db.model(id))) lossless.push_back(id);
    }
    Tracker angle_form;
    if (!lossless.empty()) {
      Rng rng = root.split();
      for (int s = 0; s < options.random_stacks; ++s) {
        LayerStack stack = random_stack(db, rng);
        for (auto& l : stack.layers) l.material_id = lossless[rng.index(lossless.size())];
        const double f = rng.uniform(2.0, 18.0);
        const double theta = rng.uniform(0.0, 45.0);
        const auto snell = reference::snell_longitudinal_wavenumbers(stack, db, f, theta);
        const double kx = transverse_wavenumber(theta, f);
        for (std::size_t i = 0; i < snell.size(); ++i) {
          const int id = (i == 0 || i + 1 == snell.size()) ? MaterialDatabase::kAir : stack.layers[i - 1].material_id;
          const auto kz = longitudinal_wavenumber(db.constitutives<double>(id, f), f, kx);
          angle_form.observe(std::abs(kz - snell[i]) / std::abs(kz), describe(stack, {f, theta, Polarization::TE}));
        }
      }
    }
    results.push_back(finish("snell-angle-form", angle_form, 1e-12));
  }

  // Sequential archive insertion against the brute-force front.
  {
    Rng rng = root.split();
    Tracker mismatch;
    for (int set = 0; set < options.pareto_sets; ++set) {
      auto pts = random_points(rng, options.pareto_points, set % 2 == 1);
      const auto expected = sorted_points(reference::brute_force_pareto(pts));
      for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.index(i)]);
      ParetoArchive archive;
      for (const auto& p : pts) archive.insert(DecisionVector(), p);
      std::vector<ObjectiveVector> got;
      for (const auto& e : archive.entries()) got.push_back(e.objectives);
      got = sorted_points(std::move(got));
      mismatch.observe(got == expected ? 0.0 : 1.0, "point set " + std::to_string(set));
    }
    results.push_back(finish("brute-force-pareto", mismatch, 0.0));
  }

  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
}

void print_report(std::ostream& out, const std::vector<SuiteResult>& results) {
  for (const auto& r : results) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s  %-28s max deviation %.3e  (tolerance %.1e)", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.max_deviation, r.tolerance);
    out << buf << '\n';
    if (!r.detail.empty()) out << "      worst case: " << r.detail << '\n';
  }
}

}  // namespace mmdf
