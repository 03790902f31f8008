#pragma once

#include "fmner/multiclass.hpp"
#include "fmner/sparse_vector.hpp"
#include "fmner/trainer.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fmner {

// Sparse text lines: "<label> <index>:<value> ...", integer labels,
// non-negative indices in any order (no duplicates), nonzero values.

struct SparseTextRecord {
  long long label = 0;
  SparseVector x;

  friend bool operator==(const SparseTextRecord&, const SparseTextRecord&) = default;
};

/// Throws ParseError with the line number on any malformed line.
std::vector<SparseTextRecord> read_sparse_text(std::istream& in, const std::string& source);
void write_sparse_text(std::ostream& out, std::span<const SparseTextRecord> records);

/// Binary instances; labels must be -1 or +1.
std::vector<LabeledInstance> import_binary(const std::filesystem::path& path);
void export_binary(const std::filesystem::path& path, std::span<const LabeledInstance> data);

/// Multiclass instances. The integer label is a line number (from 0) in
/// the sidecar tag map, which lists the distinct tags in sorted order.
std::vector<TaggedInstance> import_multiclass(const std::filesystem::path& data_path,
                                              const std::filesystem::path& tag_map_path);
void export_multiclass(const std::filesystem::path& data_path,
                       const std::filesystem::path& tag_map_path,
                       std::span<const TaggedInstance> data);

} // namespace fmner
