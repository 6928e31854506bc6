#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmdf/objectives.hpp"

namespace mmdf {

using DecisionVector = Eigen::VectorXd;

/// Minimization dominance: a is no worse everywhere and strictly better somewhere.
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.array() <= b.array()).all() && (a.array() < b.array()).any();
}

struct ArchiveEntry {
  DecisionVector position;
  ObjectiveVector objectives;
};

/// Objective vectors closer than this are treated as the same point.
inline constexpr double kDuplicateTolerance = 1e-12;

/// Set of mutually non-dominated solutions.
class ParetoArchive {
public:
  /// `cap` = 0 keeps the archive unbounded.
  explicit ParetoArchive(std::size_t cap = 0) : cap_(cap) {}

  /// Inserts `entry` unless a member dominates or duplicates it; evicts members
  /// that `entry` dominates. Returns whether the entry was kept.
  bool insert(const ArchiveEntry& entry);
  bool insert(const DecisionVector& position, const ObjectiveVector& objectives) {
    return insert(ArchiveEntry{position, objectives});
  }

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t cap() const { return cap_; }

  /// Entries sorted by (of1, of2); stable output order for reports.
  std::vector<ArchiveEntry> sorted() const;

private:
  void thin();

  std::size_t cap_;
  std::vector<ArchiveEntry> entries_;
};

/// Member nearest the objective-space origin; ties go to the smaller of1.
/// Throws std::invalid_argument on an empty range.
const ArchiveEntry& knee_selection(std::span<const ArchiveEntry> entries);
inline const ArchiveEntry& knee_selection(const ParetoArchive& archive) { return knee_selection(archive.entries()); }

}  // namespace mmdf
