#include "mmdf/reference.hpp"

namespace mmdf::reference {

std::vector<std::complex<double>> snell_longitudinal_wavenumbers(const LayerStack& stack, const MaterialDatabase& db,
                                                                 double f_ghz, double theta_deg) {
  std::vector<int> ids{MaterialDatabase::kAir};
  for (const auto& l : stack.layers) ids.push_back(l.material_id);
  ids.push_back(MaterialDatabase::kAir);

  const double omega_over_c = 2.0 * std::numbers::pi * f_ghz * 1e9 / kSpeedOfLight;
  std::vector<std::complex<double>> kz;
  kz.reserve(ids.size());

  std::complex<double> sin_prev = std::sin(theta_deg * std::numbers::pi / 180.0);
  std::complex<double> index_prev = 1.0;
  for (int id : ids) {
    const auto c = db.constitutives<double>(id, f_ghz);
    const std::complex<double> index = std::sqrt(c.mu_r * c.eps_r);
    const std::complex<double> sin_t = sin_prev * index_prev / index;
    std::complex<double> cos_t = std::sqrt(1.0 - sin_t * sin_t);
    if (cos_t.real() < 0.0 || (cos_t.real() == 0.0 && cos_t.imag() > 0.0)) cos_t = -cos_t;
    kz.push_back(cos_t * omega_over_c * index);
    sin_prev = sin_t;
    index_prev = index;
  }
  return kz;
}

std::vector<ObjectiveVector> brute_force_pareto(std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t k = 0; k < points.size() && keep; ++k) {
      if (k == i) continue;
      const auto& a = points[k];
      const auto& b = points[i];
      const bool a_dominates_b = (a.array() <= b.array()).all() && (a.array() < b.array()).any();
      if (a_dominates_b || (k < i && a == b)) keep = false;
    }
    if (keep) front.push_back(points[i]);
  }
  return front;
}

}  // namespace mmdf::reference
