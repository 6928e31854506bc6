#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace mmdf {

/// Thrown when a physical argument lies outside the domain of a model
/// (non-positive frequency, grazing incidence, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Thrown for unresolvable inputs: unknown material ids, malformed files,
/// inconsistent band definitions.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dispersion laws. Frequencies are in GHz; the power laws are referenced to 1 GHz.

struct LosslessDielectric {
  double eps_real;
};

/// mu'(f) = mu1 / f^alpha, mu''(f) = mu1_imag / f^beta, eps = 15.
struct LossyMagneticPowerLaw {
  double mu1;
  double alpha;
  double mu1_imag;
  double beta;
};

/// eps'(f) = eps1 / f^alpha, eps''(f) = eps1_imag / f^beta, mu = 1.
struct LossyDielectricPowerLaw {
  double eps1;
  double alpha;
  double eps1_imag;
  double beta;
};

/// mu'(f) = mu_m f_m^2 / (f^2 + f_m^2), mu''(f) = mu_m f_m f / (f^2 + f_m^2), eps = 15.
struct RelaxationMagnetic {
  double mu_m;
  double f_m;
};

using MaterialModel =
    std::variant<LosslessDielectric, LossyMagneticPowerLaw, LossyDielectricPowerLaw, RelaxationMagnetic>;

/// Fixed permittivity of the magnetic families.
inline constexpr double kMagneticHostPermittivity = 15.0;

/// Complex relative constitutive parameters under the exp(+j w t) convention:
/// passive media have non-positive imaginary parts.
template <typename Scalar>
struct ComplexConstitutives {
  std::complex<Scalar> eps_r{1, 0};
  std::complex<Scalar> mu_r{1, 0};
};

/// Throws DomainError when a model carries non-positive magnitudes or
/// non-finite exponents.
void check_material(const MaterialModel& mat);

/// Evaluates a dispersion law at frequency `f` (GHz).
template <typename Scalar>
ComplexConstitutives<Scalar> eval_material(const MaterialModel& mat, Scalar f) {
  if (!(f > Scalar(0)) || !std::isfinite(f)) {
    throw DomainError("material evaluation requires a positive frequency");
  }
  using C = std::complex<Scalar>;
  return std::visit(
      [f](const auto& m) -> ComplexConstitutives<Scalar> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LosslessDielectric>) {
          return {C(Scalar(m.eps_real), 0), C(1, 0)};
        } else if constexpr (std::is_same_v<T, LossyMagneticPowerLaw>) {
          const Scalar re = Scalar(m.mu1) / std::pow(f, Scalar(m.alpha));
          const Scalar im = Scalar(m.mu1_imag) / std::pow(f, Scalar(m.beta));
          return {C(Scalar(kMagneticHostPermittivity), 0), C(re, -im)};
        } else if constexpr (std::is_same_v<T, LossyDielectricPowerLaw>) {
          const Scalar re = Scalar(m.eps1) / std::pow(f, Scalar(m.alpha));
          const Scalar im = Scalar(m.eps1_imag) / std::pow(f, Scalar(m.beta));
          return {C(re, -im), C(1, 0)};
        } else {
          const Scalar fm = Scalar(m.f_m);
          const Scalar den = f * f + fm * fm;
          const Scalar re = Scalar(m.mu_m) * fm * fm / den;
          const Scalar im = Scalar(m.mu_m) * fm * f / den;
          return {C(Scalar(kMagneticHostPermittivity), 0), C(re, -im)};
        }
      },
      mat);
}

/// Ordered material table with 1-based ids. Id 0 is air.
class MaterialDatabase {
public:
  static constexpr int kAir = 0;

  MaterialDatabase() = default;
  explicit MaterialDatabase(std::vector<MaterialModel> materials);

  /// Number of materials, excluding air.
  std::size_t size() const { return materials_.size(); }
  bool empty() const { return materials_.empty(); }

  bool contains(int id) const { return id >= 0 && static_cast<std::size_t>(id) <= materials_.size(); }

  /// Model for `id` in 1..size(). Throws ConfigError otherwise (air has no model).
  const MaterialModel& model(int id) const;

  /// Constitutives of `id` at `f` GHz; id 0 yields vacuum.
  template <typename Scalar>
  ComplexConstitutives<Scalar> constitutives(int id, Scalar f) const {
    if (id == kAir) {
      if (!(f > Scalar(0))) throw DomainError("material evaluation requires a positive frequency");
      return {};
    }
    return eval_material<Scalar>(model(id), f);
  }

  const std::vector<MaterialModel>& materials() const { return materials_; }

private:
  std::vector<MaterialModel> materials_;
};

/// The 16-entry artificial material table (ids 1-16).
const MaterialDatabase& builtin_database();

/// Short tag naming the variant, as used in material files.
std::string variant_tag(const MaterialModel& mat);

}  // namespace mmdf
