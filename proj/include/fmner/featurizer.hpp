#pragma once

#include "fmner/sparse_vector.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fmner {

/// A potential entity mention with its sentence context.
struct Candidate {
  std::vector<std::string> span_tokens;
  std::vector<std::string> left_context;
  std::vector<std::string> right_context;
  std::optional<std::string> gold_tag;

  /// Span tokens joined by single spaces.
  std::string surface() const;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Throws InputError on an empty span or an empty/whitespace-bearing token.
void check_candidate(const Candidate& c);

using FeatureSet = std::set<std::string>;

/// Context bag ("ctx=<token>", unordered, left and right merged), the four
/// binary character-shape predicates (cap, all-low, all-cap1, all-cap2),
/// the token-count bucket and the always-on "dummy" feature.
FeatureSet extract_features(const Candidate& c);

/// Frozen bijection between feature names and dense column indices.
class FeatureSpace {
public:
  FeatureSpace() = default;

  /// Index i is assigned to names[i]. Throws ConfigError on duplicates or
  /// names that are empty or contain whitespace.
  explicit FeatureSpace(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<FeatureIndex> index_of(std::string_view name) const;

  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, FeatureIndex> index_;
};

/// Union of extract_features over the training candidates, indexed in
/// lexicographic order. Throws ConfigError on an empty list.
FeatureSpace fit_feature_space(std::span<const Candidate> training);

/// Binary vector over the names present in `space`; unknown names are dropped.
SparseVector vectorize(const FeatureSpace& space, const FeatureSet& names);

// One feature name per line; the line number (from 0) is the index.
void save_feature_space(const std::filesystem::path& path, const FeatureSpace& space);
FeatureSpace load_feature_space(const std::filesystem::path& path);

} // namespace fmner
