#pragma once

// Independent oracles for validating the interface recursion and the Pareto archive.
// Nothing here calls the recursion or the archive.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmdf/em_model.hpp"
#include "mmdf/objectives.hpp"

namespace mmdf::reference {

template <typename Scalar>
using CharacteristicMatrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Normal wavenumber k0 sqrt(eps mu - sin^2 theta0) on the decaying branch
/// (Im <= 0, Re >= 0 when Im vanishes).
template <typename Scalar>
std::complex<Scalar> normal_wavenumber(std::complex<Scalar> eps_r, std::complex<Scalar> mu_r, Scalar f_ghz,
                                       Scalar theta_deg) {
  const Scalar omega = Scalar(2) * std::numbers::pi_v<Scalar> * f_ghz * Scalar(1e9);
  const Scalar k0 = omega / Scalar(kSpeedOfLight);
  const Scalar s = std::sin(theta_deg * std::numbers::pi_v<Scalar> / Scalar(180));
  std::complex<Scalar> q = std::sqrt(eps_r * mu_r - std::complex<Scalar>(s * s, 0));
  if (q.imag() > Scalar(0) || (q.imag() == Scalar(0) && q.real() < Scalar(0))) q = -q;
  return k0 * q;
}

/// Transverse admittance-like quantity carried through the matrices:
/// kz/mu_r for TE (E-field form) and kz/eps_r for TM (H-field, dual form).
template <typename Scalar>
std::complex<Scalar> transverse_admittance(std::complex<Scalar> kz, std::complex<Scalar> eps_r,
                                           std::complex<Scalar> mu_r, Polarization pol) {
  return pol == Polarization::TE ? kz / mu_r : kz / eps_r;
}

/// [[cos d, j sin d / y], [j y sin d, cos d]] with d = kz * thickness.
template <typename Scalar>
CharacteristicMatrix<Scalar> characteristic_matrix(std::complex<Scalar> kz, std::complex<Scalar> admittance,
                                                   Scalar thickness_m) {
  const std::complex<Scalar> j(0, 1);
  const std::complex<Scalar> delta = kz * thickness_m;
  const std::complex<Scalar> c = std::cos(delta);
  const std::complex<Scalar> s = std::sin(delta);
  CharacteristicMatrix<Scalar> m;
  m << c, j * s / admittance, j * admittance * s, c;
  return m;
}

/// Transfer-matrix total reflection of a stack in air.
template <typename Scalar = double>
std::complex<Scalar> tmm_total_reflection(const LayerStack& stack, const MaterialDatabase& db,
                                          const PlaneWave& wave) {
  using C = std::complex<Scalar>;
  const Scalar f = Scalar(wave.f_ghz);
  const Scalar theta = Scalar(wave.theta_deg);
  if (!(f > Scalar(0))) throw DomainError("frequency must be positive");
  if (!(theta >= Scalar(0) && theta < Scalar(90))) throw DomainError("incidence angle must lie in [0, 90) degrees");

  const C one(1, 0);
  const C kz_air = normal_wavenumber<Scalar>(one, one, f, theta);
  const C y_air = transverse_admittance<Scalar>(kz_air, one, one, wave.pol);

  CharacteristicMatrix<Scalar> total = CharacteristicMatrix<Scalar>::Identity();
  for (const auto& layer : stack.layers) {
    if (!(layer.thickness_mm >= 0.0)) throw DomainError("layer thickness must be non-negative");
    const auto c = db.constitutives<Scalar>(layer.material_id, f);
    const C kz = normal_wavenumber<Scalar>(c.eps_r, c.mu_r, f, theta);
    total = total * characteristic_matrix<Scalar>(kz, transverse_admittance<Scalar>(kz, c.eps_r, c.mu_r, wave.pol),
                                                  Scalar(layer.thickness_mm) * Scalar(1e-3));
  }
  Eigen::Matrix<C, 2, 1> exit;
  exit << one, y_air;
  const Eigen::Matrix<C, 2, 1> bc = total * exit;
  return (y_air * bc[0] - bc[1]) / (y_air * bc[0] + bc[1]);
}

/// Closed-form reflection of one homogeneous slab in air.
template <typename Scalar = double>
std::complex<Scalar> airy_single_layer(std::complex<Scalar> eps_r, std::complex<Scalar> mu_r, Scalar thickness_mm,
                                       const PlaneWave& wave) {
  using C = std::complex<Scalar>;
  const Scalar f = Scalar(wave.f_ghz);
  const Scalar theta = Scalar(wave.theta_deg);
  const C one(1, 0);
  const C kz0 = normal_wavenumber<Scalar>(one, one, f, theta);
  const C kz1 = normal_wavenumber<Scalar>(eps_r, mu_r, f, theta);
  const C w = wave.pol == Polarization::TE ? mu_r : eps_r;
  const C r1 = (w * kz0 - kz1) / (w * kz0 + kz1);
  const C phase = std::exp(C(0, -2) * kz1 * (thickness_mm * Scalar(1e-3)));
  // The exit interface is the mirror image of the entry one: r2 = -r1.
  return (r1 - r1 * phase) / (one - r1 * r1 * phase);
}

/// kz of [entry air, layers..., exit air] from explicit refraction angles
/// (sin t_i / sin t_{i-1} = sqrt(mu_{i-1} eps_{i-1} / (mu_i eps_i))), kz_i = cos t_i w sqrt(mu_i eps_i).
/// Meaningful for lossless media only.
std::vector<std::complex<double>> snell_longitudinal_wavenumbers(const LayerStack& stack, const MaterialDatabase& db,
                                                                 double f_ghz, double theta_deg);

/// O(n^2) non-dominated filter; exact duplicates keep their first occurrence.
std::vector<ObjectiveVector> brute_force_pareto(std::span<const ObjectiveVector> points);

}  // namespace mmdf::reference
