#include <algorithm>

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "mmdf/reference.hpp"
#include "mmdf/validate.hpp"

using namespace mmdf;
using cd = std::complex<double>;

namespace {

const MaterialDatabase& db() { return builtin_database(); }

double slab_thickness_mm(double f_ghz, double eps, double fraction) {
  return fraction * kSpeedOfLight / (f_ghz * 1e9) / std::sqrt(eps) * 1e3;
}

}  // namespace

TEST(TransferMatrix, AnalyticCases) {
  EXPECT_EQ(reference::tmm_total_reflection(LayerStack{}, db(), {5.0, 15.0, Polarization::TE}), cd(0.0, 0.0));
  const LayerStack half{{Layer{1, slab_thickness_mm(7.0, 10.0, 0.5)}}};
  const LayerStack quarter{{Layer{1, slab_thickness_mm(7.0, 10.0, 0.25)}}};
  EXPECT_LT(std::abs(reference::tmm_total_reflection(half, db(), {7.0, 0.0, Polarization::TM})), 1e-9);
  EXPECT_NEAR(std::abs(reference::tmm_total_reflection(quarter, db(), {7.0, 0.0, Polarization::TE})), 9.0 / 11.0,
              1e-9);
}

TEST(TransferMatrix, UnitDeterminant) {
  for (int id : {1, 2, 4, 9}) {
    const auto c = db().constitutives<double>(id, 6.0);
    const cd kz = reference::normal_wavenumber<double>(c.eps_r, c.mu_r, 6.0, 30.0);
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      const auto m = reference::characteristic_matrix<double>(
          kz, reference::transverse_admittance<double>(kz, c.eps_r, c.mu_r, pol), 1.7e-3);
      EXPECT_LT(std::abs(m.determinant() - 1.0), 1e-9) << "id " << id;
    }
  }
}

TEST(Airy, ClosedFormCases) {
  const cd eps(10.0, 0.0);
  const cd mu(1.0, 0.0);
  for (auto pol : {Polarization::TE, Polarization::TM}) {
    EXPECT_EQ(reference::airy_single_layer<double>(eps, mu, 0.0, {4.0, 30.0, pol}), cd(0.0, 0.0));
    EXPECT_LT(std::abs(reference::airy_single_layer<double>(eps, mu, slab_thickness_mm(4.0, 10.0, 0.5),
                                                            {4.0, 0.0, pol})),
              1e-9);
    EXPECT_NEAR(std::abs(reference::airy_single_layer<double>(eps, mu, slab_thickness_mm(4.0, 10.0, 0.25),
                                                              {4.0, 0.0, pol})),
                9.0 / 11.0, 1e-12);
  }
}

TEST(Airy, AgreesWithBothStackMethods) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const int id = 1 + static_cast<int>(rng.index(16));
    const double d = rng.uniform(0.0, 3.0);
    const PlaneWave w{rng.uniform(2.0, 18.0), rng.uniform(0.0, 45.0), i % 2 ? Polarization::TE : Polarization::TM};
    const auto c = db().constitutives<double>(id, w.f_ghz);
    const cd airy = reference::airy_single_layer<double>(c.eps_r, c.mu_r, d, w);
    const LayerStack slab{{Layer{id, d}}};
    ASSERT_LT(std::abs(airy - total_reflection(slab, db(), w)), 1e-12);
    ASSERT_LT(std::abs(airy - reference::tmm_total_reflection(slab, db(), w)), 1e-9);
  }
}

TEST(SnellAngleForm, MatchesConservedTransverseWavenumber) {
  const LayerStack stack{{Layer{1, 1.0}, Layer{2, 0.5}, Layer{1, 2.0}}};
  for (double theta : {0.0, 15.0, 30.0, 45.0, 60.0}) {
    const auto kz_snell = reference::snell_longitudinal_wavenumbers(stack, db(), 9.0, theta);
    ASSERT_EQ(kz_snell.size(), 5u);
    const double kx = transverse_wavenumber(theta, 9.0);
    const int ids[] = {0, 1, 2, 1, 0};
    for (std::size_t i = 0; i < 5; ++i) {
      const cd kz = longitudinal_wavenumber(db().constitutives<double>(ids[i], 9.0), 9.0, kx);
      EXPECT_LT(std::abs(kz - kz_snell[i]) / std::abs(kz), 1e-12);
    }
  }
}

TEST(BruteForcePareto, Examples) {
  const std::vector<ObjectiveVector> single{{0.3, 0.4}};
  EXPECT_EQ(reference::brute_force_pareto(single).size(), 1u);

  const std::vector<ObjectiveVector> three{{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  const auto front = reference::brute_force_pareto(three);
  ASSERT_EQ(front.size(), 2u);
  EXPECT_EQ(front[0], ObjectiveVector(0.0, 1.0));
  EXPECT_EQ(front[1], ObjectiveVector(1.0, 0.0));

  const std::vector<ObjectiveVector> dup{{0.2, 0.2}, {0.2, 0.2}};
  EXPECT_EQ(reference::brute_force_pareto(dup).size(), 1u);
}

TEST(BruteForcePareto, OrderIndependent) {
  Rng rng(5);
  std::vector<ObjectiveVector> pts(300);
  for (auto& p : pts) p = ObjectiveVector(rng.uniform(), rng.uniform());
  auto sorted = [](std::vector<ObjectiveVector> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return v;
  };
  const auto base = sorted(reference::brute_force_pareto(pts));
  std::reverse(pts.begin(), pts.end());
  EXPECT_EQ(sorted(reference::brute_force_pareto(pts)), base);
}

TEST(Validation, CleanBuildPasses) {
  ValidationOptions opts;
  opts.random_stacks = 200;
  opts.pareto_sets = 10;
  opts.pareto_points = 200;
  const auto results = run_validation(db(), opts);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << " " << r.max_deviation << " " << r.detail;
  EXPECT_GE(results.size(), 12u);
}

TEST(Validation, DetectsTmSignFlip) {
  // Mutant: the permittivity-form interface coefficient with its sign flipped.
  const ReflectionModel mutant = [](const LayerStack& stack, const MaterialDatabase& d, const PlaneWave& wave) {
    const double kx = transverse_wavenumber(wave.theta_deg, wave.f_ghz);
    std::vector<MediumResponse<double>> media;
    std::vector<double> thickness;
    auto push = [&](int id) {
      const auto c = d.constitutives<double>(id, wave.f_ghz);
      media.push_back({c, longitudinal_wavenumber(c, wave.f_ghz, kx)});
    };
    push(0);
    for (const auto& l : stack.layers) {
      push(l.material_id);
      thickness.push_back(l.thickness_mm * 1e-3);
    }
    push(0);
    const double sign = wave.pol == Polarization::TM ? -1.0 : 1.0;
    auto r = [&](std::size_t i) {
      return sign * interface_reflection(media[i - 1].constitutives, media[i].constitutives, media[i - 1].kz,
                                         media[i].kz, wave.pol);
    };
    cd t = r(media.size() - 1);
    for (std::size_t i = thickness.size(); i >= 1; --i) {
      const cd tail = t * std::exp(cd(0, -2) * media[i].kz * thickness[i - 1]);
      t = (r(i) + tail) / (1.0 + r(i) * tail);
    }
    return t;
  };

  ValidationOptions opts;
  opts.random_stacks = 100;
  opts.pareto_sets = 2;
  opts.pareto_points = 50;
  const auto results = run_validation(db(), mutant, opts);
  auto find = [&](const std::string& name) {
    const auto it = std::find_if(results.begin(), results.end(), [&](const auto& r) { return r.name == name; });
    EXPECT_NE(it, results.end()) << name;
    return *it;
  };
  EXPECT_TRUE(find("tmm-equivalence-TE").passed);
  EXPECT_FALSE(find("tmm-equivalence-TM").passed);
  EXPECT_FALSE(find("airy-single-slab-TM").passed);
  EXPECT_FALSE(find("normal-incidence-TM-sign").passed);
  EXPECT_FALSE(all_passed(results));
}

TEST(Validation, EmptyDatabaseIsConfigError) {
  EXPECT_THROW(run_validation(MaterialDatabase{}), ConfigError);
}
