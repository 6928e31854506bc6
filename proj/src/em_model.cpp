#include "mmdf/em_model.hpp"

#include <string>

namespace mmdf {

void check_stack(const LayerStack& stack, const MaterialDatabase& db) {
  for (std::size_t i = 0; i < stack.size(); ++i) {
    const auto& layer = stack.layers[i];
    if (layer.material_id < 1 || !db.contains(layer.material_id)) {
      throw ConfigError("layer " + std::to_string(i + 1) + ": unknown material id " +
                        std::to_string(layer.material_id));
    }
    if (!(layer.thickness_mm >= 0.0) || !std::isfinite(layer.thickness_mm)) {
      throw DomainError("layer " + std::to_string(i + 1) + ": thickness must be finite and non-negative");
    }
  }
}

std::vector<SpectrumRow> tr_spectrum(const LayerStack& stack, const MaterialDatabase& db,
                                     std::span<const double> freqs_ghz, std::span<const double> angles_deg) {
  if (freqs_ghz.empty() || angles_deg.empty()) throw DomainError("tr_spectrum: empty frequency or angle grid");
  check_stack(stack, db);
  std::vector<SpectrumRow> rows;
  rows.reserve(freqs_ghz.size() * angles_deg.size());
  for (double f : freqs_ghz) {
    for (double theta : angles_deg) {
      rows.push_back({f, theta, total_reflection(stack, db, {f, theta, Polarization::TE}),
                      total_reflection(stack, db, {f, theta, Polarization::TM})});
    }
  }
  return rows;
}

}  // namespace mmdf
