#include "fmner/featurizer.hpp"

#include "fmner/error.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>

namespace fmner {

namespace {

// ASCII only: bytes of multi-byte UTF-8 sequences are neither case.
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

bool valid_token(std::string_view token) {
  return !token.empty() && std::none_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

template <typename Pred>
bool every_char(const std::vector<std::string>& tokens, Pred pred) {
  return std::all_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
    return std::all_of(t.begin(), t.end(), pred);
  });
}

std::string flag(std::string_view name, bool on) { return fmt::format("{}={}", name, on ? 1 : 0); }

} // namespace

std::string Candidate::surface() const {
  std::string out;
  for (std::size_t i = 0; i < span_tokens.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += span_tokens[i];
  }
  return out;
}

void check_candidate(const Candidate& c) {
  if (c.span_tokens.empty()) {
    throw InputError("candidate has an empty span");
  }
  for (const auto* part : {&c.span_tokens, &c.left_context, &c.right_context}) {
    for (const auto& token : *part) {
      if (!valid_token(token)) {
        throw InputError(fmt::format("candidate token '{}' is empty or contains whitespace", token));
      }
    }
  }
}

FeatureSet extract_features(const Candidate& c) {
  check_candidate(c);
  FeatureSet features;
  for (const auto* context : {&c.left_context, &c.right_context}) {
    for (const auto& token : *context) {
      features.insert("ctx=" + token);
    }
  }
  const auto& span = c.span_tokens;
  features.insert(flag("cap", is_upper(span.front().front())));
  features.insert(flag("all-low", every_char(span, is_lower)));
  features.insert(flag("all-cap1", every_char(span, is_upper)));
  features.insert(flag("all-cap2", every_char(span, [](char ch) { return is_upper(ch) || ch == '.'; })));
  features.insert(span.size() == 1   ? "num-tokens=1"
                  : span.size() == 2 ? "num-tokens=2"
                                     : "num-tokens>2");
  features.insert("dummy");
  return features;
}

FeatureSpace::FeatureSpace(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_token(names_[i])) {
      throw ConfigError(fmt::format("invalid feature name '{}'", names_[i]));
    }
    if (!index_.emplace(names_[i], static_cast<FeatureIndex>(i)).second) {
      throw ConfigError(fmt::format("duplicate feature name '{}'", names_[i]));
    }
  }
}

std::optional<FeatureIndex> FeatureSpace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

FeatureSpace fit_feature_space(std::span<const Candidate> training) {
  if (training.empty()) {
    throw ConfigError("cannot fit a feature space on no candidates");
  }
  FeatureSet all;
  for (const auto& c : training) {
    all.merge(extract_features(c));
  }
  return FeatureSpace(std::vector<std::string>(all.begin(), all.end()));
}

SparseVector vectorize(const FeatureSpace& space, const FeatureSet& names) {
  std::vector<SparseEntry> entries;
  entries.reserve(names.size());
  for (const auto& name : names) {
    if (auto index = space.index_of(name)) {
      entries.push_back({*index, 1.0});
    }
  }
  return SparseVector::from_unsorted(std::move(entries));
}

void save_feature_space(const std::filesystem::path& path, const FeatureSpace& space) {
  write_file_atomic(path, [&](std::ostream& out) {
    for (const auto& name : space.names()) {
      out << name << '\n';
    }
  });
}

FeatureSpace load_feature_space(const std::filesystem::path& path) {
  auto in = open_input(path);
  LineReader reader(in, path.string());
  std::vector<std::string> names;
  while (auto line = reader.next()) {
    if (!valid_token(*line)) {
      reader.fail(fmt::format("invalid feature name '{}'", *line));
    }
    names.push_back(std::move(*line));
  }
  try {
    return FeatureSpace(std::move(names));
  } catch (const ConfigError& e) {
    reader.fail(e.what());
  }
}

} // namespace fmner
