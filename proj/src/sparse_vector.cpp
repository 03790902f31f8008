#include "fmner/sparse_vector.hpp"

#include "fmner/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fmner {

namespace {

void validate(const std::vector<SparseEntry>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!std::isfinite(e.value)) {
      throw InputError("sparse vector: non-finite value at index " + std::to_string(e.index));
    }
    if (e.value == 0.0) {
      throw InputError("sparse vector: explicit zero at index " + std::to_string(e.index));
    }
    if (i > 0 && entries[i - 1].index >= e.index) {
      throw InputError(entries[i - 1].index == e.index
                           ? "sparse vector: duplicate index " + std::to_string(e.index)
                           : "sparse vector: indices not increasing at " + std::to_string(e.index));
    }
  }
}

} // namespace

SparseVector::SparseVector(std::vector<SparseEntry> entries) : entries_(std::move(entries)) {
  validate(entries_);
}

SparseVector SparseVector::from_unsorted(std::vector<SparseEntry> entries) {
  std::erase_if(entries, [](const SparseEntry& e) { return e.value == 0.0; });
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return SparseVector(std::move(entries));
}

} // namespace fmner
