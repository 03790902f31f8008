#pragma once

#include "fmner/featurizer.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fmner {

/// Tag carried by non-entity candidates and non-entity tokens.
inline constexpr std::string_view kOutsideTag = "O";

struct TaggedToken {
  std::string surface;
  std::string tag; // "O", "B-X" or "I-X"

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

using Sentence = std::vector<TaggedToken>;

/// Rewrites every I-X that does not continue a B-X/I-X run into B-X.
void repair_bio(std::vector<std::string>& tags);

/// Whitespace-column reader. Blank lines end sentences, "-DOCSTART-"
/// lines are skipped, tags are BIO-repaired. Throws ParseError (with line
/// number) on ragged rows and malformed tags.
std::vector<Sentence> parse_columns(std::istream& in, const std::string& source,
                                    std::size_t token_column, std::size_t tag_column);

/// As parse_columns; IoError if the file cannot be opened.
std::vector<Sentence> parse_column_file(const std::filesystem::path& path, std::size_t token_column,
                                        std::size_t tag_column);

/// One candidate per maximal B-X I-X* span (gold X), plus one O candidate
/// per non-entity token starting with an uppercase letter. The rest of
/// the sentence on either side becomes the left/right context.
std::vector<Candidate> extract_candidates(std::span<const Sentence> sentences);

/// Lowercased surface form used to match candidates across splits.
std::string normalized_surface(const Candidate& c);

/// Drops eval candidates whose normalized surface occurs in training.
std::vector<Candidate> filter_unknown(std::span<const Candidate> eval,
                                      std::span<const Candidate> training);

struct TagCounts {
  std::size_t tokens = 0;
  std::size_t types = 0;

  friend bool operator==(const TagCounts&, const TagCounts&) = default;
};

/// Per-tag token count and distinct lowercased-surface count. Candidates
/// without a gold tag are counted under the empty tag.
using CorpusStats = std::map<std::string, TagCounts>;

CorpusStats corpus_stats(std::span<const Candidate> candidates);

/// Fixed-width table: one row per tag, one "tokens (types)" column per
/// split, thousands separated.
std::string format_stats_table(const std::vector<std::pair<std::string, CorpusStats>>& splits);

// Candidates file: tab-separated tag, span, left context, right context;
// tokens within a field are joined by single spaces. An empty tag field
// means no gold tag.
void write_candidates(std::ostream& out, std::span<const Candidate> candidates);
std::vector<Candidate> read_candidates(std::istream& in, const std::string& source);
void save_candidates(const std::filesystem::path& path, std::span<const Candidate> candidates);
std::vector<Candidate> load_candidates(const std::filesystem::path& path);

} // namespace fmner
