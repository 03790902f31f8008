#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace fmner {

using FeatureIndex = std::uint32_t;

struct SparseEntry {
  FeatureIndex index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// One vectorized instance: index/value pairs, strictly increasing by index,
/// every value finite and nonzero.
class SparseVector {
public:
  SparseVector() = default;

  /// Validates the invariants; throws InputError on unsorted, duplicate,
  /// non-finite or zero entries.
  explicit SparseVector(std::vector<SparseEntry> entries);

  /// Sorts by index and drops zero values. Duplicates and non-finite
  /// values are still rejected.
  static SparseVector from_unsorted(std::vector<SparseEntry> entries);

  std::span<const SparseEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Largest index + 1, or 0 for an empty vector.
  std::size_t min_dimension() const noexcept {
    return entries_.empty() ? 0 : std::size_t{entries_.back().index} + 1;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
  std::vector<SparseEntry> entries_;
};

} // namespace fmner
