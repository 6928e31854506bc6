#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "mmdf/materials.hpp"

namespace mmdf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class Polarization { TE, TM };

inline const char* to_string(Polarization pol) { return pol == Polarization::TE ? "TE" : "TM"; }

/// One slab of the filter. Thickness in millimetres.
struct Layer {
  int material_id = 1;
  double thickness_mm = 0.0;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Layers ordered from the incidence side; air half-spaces on both ends are implicit.
struct LayerStack {
  std::vector<Layer> layers;

  std::size_t size() const { return layers.size(); }
  bool empty() const { return layers.empty(); }
  double total_thickness_mm() const {
    double tt = 0.0;
    for (const auto& l : layers) tt += l.thickness_mm;
    return tt;
  }

  friend bool operator==(const LayerStack&, const LayerStack&) = default;
};

/// Throws ConfigError for ids missing from `db` and DomainError for negative thickness.
void check_stack(const LayerStack& stack, const MaterialDatabase& db);

struct PlaneWave {
  double f_ghz = 1.0;
  double theta_deg = 0.0;
  Polarization pol = Polarization::TE;
};

template <typename Scalar>
Scalar free_space_wavenumber(Scalar f_ghz) {
  return Scalar(2) * std::numbers::pi_v<Scalar> * f_ghz * Scalar(1e9) / Scalar(kSpeedOfLight);
}

/// Tangential wavenumber kx (rad/m), conserved across every interface.
template <typename Scalar>
Scalar transverse_wavenumber(Scalar theta_deg, Scalar f_ghz) {
  if (!(theta_deg >= Scalar(0) && theta_deg < Scalar(90))) {
    throw DomainError("incidence angle must lie in [0, 90) degrees");
  }
  if (!(f_ghz > Scalar(0))) throw DomainError("frequency must be positive");
  return free_space_wavenumber(f_ghz) * std::sin(theta_deg * std::numbers::pi_v<Scalar> / Scalar(180));
}

/// kz = sqrt(k0^2 mu_r eps_r - kx^2) on the forward, decaying branch:
/// Re(kz) >= 0, and Im(kz) <= 0 when Re(kz) vanishes.
template <typename Scalar>
std::complex<Scalar> longitudinal_wavenumber(const ComplexConstitutives<Scalar>& c, Scalar f_ghz, Scalar kx) {
  const Scalar k0 = free_space_wavenumber(f_ghz);
  std::complex<Scalar> kz = std::sqrt(k0 * k0 * c.mu_r * c.eps_r - std::complex<Scalar>(kx * kx, 0));
  if (kz.real() < Scalar(0) || (kz.real() == Scalar(0) && kz.imag() > Scalar(0))) kz = -kz;
  return kz;
}

/// Single-interface Fresnel coefficient between `before` (incidence side) and `after`.
/// TE uses the permeability form, TM the permittivity form.
template <typename Scalar>
std::complex<Scalar> interface_reflection(const ComplexConstitutives<Scalar>& before,
                                          const ComplexConstitutives<Scalar>& after,
                                          std::complex<Scalar> kz_before, std::complex<Scalar> kz_after,
                                          Polarization pol) {
  const auto& w_before = pol == Polarization::TE ? before.mu_r : before.eps_r;
  const auto& w_after = pol == Polarization::TE ? after.mu_r : after.eps_r;
  const std::complex<Scalar> a = w_after * kz_before;
  const std::complex<Scalar> b = w_before * kz_after;
  const std::complex<Scalar> den = a + b;
  if (den == std::complex<Scalar>(0, 0)) throw DomainError("singular interface: zero Fresnel denominator");
  return (a - b) / den;
}

/// Constitutives and kz of one medium at a fixed (f, kx).
template <typename Scalar>
struct MediumResponse {
  ComplexConstitutives<Scalar> constitutives;
  std::complex<Scalar> kz;
};

/// Backward interface recursion over media [entry, layer 1..n, exit].
/// `thickness_m` holds the n layer thicknesses in metres.
template <typename Scalar>
std::complex<Scalar> reflection_recursion(std::span<const MediumResponse<Scalar>> media,
                                          std::span<const Scalar> thickness_m, Polarization pol) {
  const std::size_t n = thickness_m.size();
  if (media.size() != n + 2) throw DomainError("reflection_recursion: media/thickness size mismatch");
  auto fresnel = [&](std::size_t i) {
    return interface_reflection(media[i - 1].constitutives, media[i].constitutives, media[i - 1].kz, media[i].kz,
                                pol);
  };
  const std::complex<Scalar> minus_2j(0, -2);
  std::complex<Scalar> total = fresnel(n + 1);
  for (std::size_t i = n; i >= 1; --i) {
    const std::complex<Scalar> r = fresnel(i);
    const std::complex<Scalar> tail = total * std::exp(minus_2j * media[i].kz * thickness_m[i - 1]);
    total = (r + tail) / (Scalar(1) + r * tail);
  }
  return total;
}

/// Complex total reflection coefficient seen from the entry air half-space.
template <typename Scalar = double>
std::complex<Scalar> total_reflection(const LayerStack& stack, const MaterialDatabase& db, const PlaneWave& wave) {
  const Scalar f = Scalar(wave.f_ghz);
  const Scalar kx = transverse_wavenumber(Scalar(wave.theta_deg), f);

  std::vector<MediumResponse<Scalar>> media;
  std::vector<Scalar> thickness;
  media.reserve(stack.size() + 2);
  thickness.reserve(stack.size());

  auto push = [&](int id) {
    const auto c = db.constitutives<Scalar>(id, f);
    media.push_back({c, longitudinal_wavenumber(c, f, kx)});
  };
  push(MaterialDatabase::kAir);
  for (const auto& layer : stack.layers) {
    if (!(layer.thickness_mm >= 0.0)) throw DomainError("layer thickness must be non-negative");
    push(layer.material_id);
    thickness.push_back(Scalar(layer.thickness_mm) * Scalar(1e-3));
  }
  push(MaterialDatabase::kAir);
  return reflection_recursion<Scalar>(media, thickness, wave.pol);
}

struct SpectrumRow {
  double f_ghz;
  double theta_deg;
  std::complex<double> te;
  std::complex<double> tm;
};

/// TE and TM total reflection over the Cartesian grid, frequency-major.
std::vector<SpectrumRow> tr_spectrum(const LayerStack& stack, const MaterialDatabase& db,
                                     std::span<const double> freqs_ghz, std::span<const double> angles_deg);

/// 20 log10 |value| floored at -200 dB.
inline constexpr double kDecibelFloor = -200.0;
inline double magnitude_db(std::complex<double> value) {
  const double mag = std::abs(value);
  if (!(mag > 0.0)) return kDecibelFloor;
  const double db = 20.0 * std::log10(mag);
  return db < kDecibelFloor ? kDecibelFloor : db;
}

}  // namespace mmdf
