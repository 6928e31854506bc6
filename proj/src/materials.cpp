#include "mmdf/materials.hpp"

#include <string>

namespace mmdf {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("material parameter '") + what + "' must be positive and finite");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("material exponent '") + what + "' must be finite");
  }
}

}  // namespace

void check_material(const MaterialModel& mat) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LosslessDielectric>) {
          require_positive(m.eps_real, "eps");
        } else if constexpr (std::is_same_v<T, LossyMagneticPowerLaw>) {
          require_positive(m.mu1, "mu1");
          require_positive(m.mu1_imag, "mu1_imag");
          require_finite(m.alpha, "alpha");
          require_finite(m.beta, "beta");
        } else if constexpr (std::is_same_v<T, LossyDielectricPowerLaw>) {
          require_positive(m.eps1, "eps1");
          require_positive(m.eps1_imag, "eps1_imag");
          require_finite(m.alpha, "alpha");
          require_finite(m.beta, "beta");
        } else {
          require_positive(m.mu_m, "mu_m");
          require_positive(m.f_m, "f_m");
        }
      },
      mat);
}

MaterialDatabase::MaterialDatabase(std::vector<MaterialModel> materials) : materials_(std::move(materials)) {
  for (const auto& m : materials_) check_material(m);
}

const MaterialModel& MaterialDatabase::model(int id) const {
  if (id < 1 || static_cast<std::size_t>(id) > materials_.size()) {
    throw ConfigError("unknown material id " + std::to_string(id) + " (database has ids 1.." +
                      std::to_string(materials_.size()) + ")");
  }
  return materials_[static_cast<std::size_t>(id - 1)];
}

const MaterialDatabase& builtin_database() {
  static const MaterialDatabase db(std::vector<MaterialModel>{
      LosslessDielectric{10.0},
      LosslessDielectric{50.0},
      LossyMagneticPowerLaw{5.0, 0.974, 10.0, 0.961},
      LossyMagneticPowerLaw{3.0, 1.000, 15.0, 0.957},
      LossyMagneticPowerLaw{7.0, 1.000, 12.0, 1.000},
      LossyDielectricPowerLaw{5.0, 0.861, 8.0, 0.569},
      LossyDielectricPowerLaw{8.0, 0.778, 10.0, 0.682},
      LossyDielectricPowerLaw{10.0, 0.778, 6.0, 0.861},
      RelaxationMagnetic{35.0, 0.8},
      RelaxationMagnetic{35.0, 0.5},
      RelaxationMagnetic{30.0, 1.0},
      RelaxationMagnetic{18.0, 0.5},
      RelaxationMagnetic{20.0, 1.5},
      RelaxationMagnetic{30.0, 2.5},
      RelaxationMagnetic{30.0, 2.0},
      RelaxationMagnetic{25.0, 3.5},
  });
  return db;
}

std::string variant_tag(const MaterialModel& mat) {
  switch (mat.index()) {
    case 0: return "lossless_dielectric";
    case 1: return "magnetic_power_law";
    case 2: return "dielectric_power_law";
    default: return "magnetic_relaxation";
  }
}

}  // namespace mmdf
