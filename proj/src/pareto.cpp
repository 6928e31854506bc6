#include "mmdf/pareto.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mmdf {

bool ParetoArchive::insert(const ArchiveEntry& entry) {
  for (const auto& member : entries_) {
    if (dominates(member.objectives, entry.objectives)) return false;
    if ((member.objectives - entry.objectives).norm() < kDuplicateTolerance) return false;
  }
  std::erase_if(entries_, [&](const ArchiveEntry& m) { return dominates(entry.objectives, m.objectives); });
  entries_.push_back(entry);
  if (cap_ > 0 && entries_.size() > cap_) thin();
  return true;
}

std::vector<ArchiveEntry> ParetoArchive::sorted() const {
  auto out = entries_;
  std::sort(out.begin(), out.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
    if (a.objectives[0] != b.objectives[0]) return a.objectives[0] < b.objectives[0];
    return a.objectives[1] < b.objectives[1];
  });
  return out;
}

// Greedy farthest-point selection in objective space, starting from the knee.
void ParetoArchive::thin() {
  const std::size_t n = entries_.size();
  const auto& knee = knee_selection(entries_);
  const auto first = static_cast<std::size_t>(&knee - entries_.data());

  std::vector<bool> chosen(n, false);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::size_t pick = first;
  for (std::size_t kept = 0; kept < cap_; ++kept) {
    chosen[pick] = true;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], (entries_[i].objectives - entries_[pick].objectives).norm());
    }
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i] && dist[i] > best) {
        best = dist[i];
        pick = i;
      }
    }
  }
  std::vector<ArchiveEntry> kept;
  kept.reserve(cap_);
  for (std::size_t i = 0; i < n; ++i) {
    if (chosen[i]) kept.push_back(std::move(entries_[i]));
  }
  entries_ = std::move(kept);
}

const ArchiveEntry& knee_selection(std::span<const ArchiveEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("knee_selection: archive is empty");
  const ArchiveEntry* best = &entries.front();
  double best_norm = best->objectives.squaredNorm();
  for (const auto& e : entries.subspan(1)) {
    const double norm = e.objectives.squaredNorm();
    if (norm < best_norm || (norm == best_norm && e.objectives[0] < best->objectives[0])) {
      best = &e;
      best_norm = norm;
    }
  }
  return *best;
}

}  // namespace mmdf
