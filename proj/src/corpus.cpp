#include "fmner/corpus.hpp"

#include "fmner/error.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

namespace fmner {

namespace {

bool is_entity_tag(std::string_view tag) {
  return tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-';
}

std::string_view entity_type(std::string_view tag) { return tag.substr(2); }

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; });
  return s;
}

std::string thousands(std::size_t value) {
  auto digits = std::to_string(value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) {
      out += ',';
    }
    out += digits[i];
  }
  return out;
}

std::vector<std::string> split_tokens(std::string_view field) {
  std::vector<std::string> out;
  for (auto token : split_whitespace(field)) {
    out.emplace_back(token);
  }
  return out;
}

std::vector<std::string> tokens_of(const Sentence& s, std::size_t begin, std::size_t end) {
  std::vector<std::string> out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(s[i].surface);
  }
  return out;
}

} // namespace

void repair_bio(std::vector<std::string>& tags) {
  std::string_view previous = kOutsideTag;
  for (auto& tag : tags) {
    if (tag.size() > 2 && tag[0] == 'I' && tag[1] == '-') {
      const bool continues = is_entity_tag(previous) && entity_type(previous) == entity_type(tag);
      if (!continues) {
        tag[0] = 'B';
      }
    }
    previous = tag;
  }
}

std::vector<Sentence> parse_columns(std::istream& in, const std::string& source,
                                    std::size_t token_column, std::size_t tag_column) {
  LineReader reader(in, source);
  const std::size_t needed = std::max(token_column, tag_column) + 1;
  std::vector<Sentence> sentences;
  Sentence current;

  auto flush = [&] {
    if (current.empty()) {
      return;
    }
    std::vector<std::string> tags;
    tags.reserve(current.size());
    for (const auto& t : current) {
      tags.push_back(t.tag);
    }
    repair_bio(tags);
    for (std::size_t i = 0; i < current.size(); ++i) {
      current[i].tag = std::move(tags[i]);
    }
    sentences.push_back(std::move(current));
    current.clear();
  };

  while (auto line = reader.next()) {
    const auto columns = split_whitespace(*line);
    if (columns.empty()) {
      flush();
      continue;
    }
    if (columns.front().starts_with("-DOCSTART-")) {
      flush();
      continue;
    }
    if (columns.size() < needed) {
      reader.fail(fmt::format("expected at least {} columns, found {}", needed, columns.size()));
    }
    std::string tag(columns[tag_column]);
    if (tag != kOutsideTag && !is_entity_tag(tag)) {
      reader.fail(fmt::format("malformed tag '{}'", tag));
    }
    current.push_back({std::string(columns[token_column]), std::move(tag)});
  }
  flush();
  return sentences;
}

std::vector<Sentence> parse_column_file(const std::filesystem::path& path, std::size_t token_column,
                                        std::size_t tag_column) {
  auto in = open_input(path);
  return parse_columns(in, path.string(), token_column, tag_column);
}

std::vector<Candidate> extract_candidates(std::span<const Sentence> sentences) {
  std::vector<Candidate> out;
  for (const auto& s : sentences) {
    std::size_t i = 0;
    while (i < s.size()) {
      const auto& tag = s[i].tag;
      std::size_t end = i + 1;
      std::string gold;
      if (is_entity_tag(tag)) {
        const auto type = entity_type(tag);
        while (end < s.size() && s[end].tag.size() > 2 && s[end].tag.starts_with("I-") &&
               entity_type(s[end].tag) == type) {
          ++end;
        }
        gold = std::string(type);
      } else {
        const auto& surface = s[i].surface;
        if (surface.empty() || !(surface.front() >= 'A' && surface.front() <= 'Z')) {
          ++i;
          continue;
        }
        gold = std::string(kOutsideTag);
      }
      out.push_back(Candidate{tokens_of(s, i, end), tokens_of(s, 0, i), tokens_of(s, end, s.size()),
                              std::move(gold)});
      i = end;
    }
  }
  return out;
}

std::string normalized_surface(const Candidate& c) { return lowercase(c.surface()); }

std::vector<Candidate> filter_unknown(std::span<const Candidate> eval,
                                      std::span<const Candidate> training) {
  std::unordered_set<std::string> known;
  known.reserve(training.size());
  for (const auto& c : training) {
    known.insert(normalized_surface(c));
  }
  std::vector<Candidate> out;
  for (const auto& c : eval) {
    if (!known.contains(normalized_surface(c))) {
      out.push_back(c);
    }
  }
  return out;
}

CorpusStats corpus_stats(std::span<const Candidate> candidates) {
  std::map<std::string, std::set<std::string>> types;
  CorpusStats stats;
  for (const auto& c : candidates) {
    const std::string tag = c.gold_tag.value_or("");
    ++stats[tag].tokens;
    types[tag].insert(normalized_surface(c));
  }
  for (auto& [tag, counts] : stats) {
    counts.types = types[tag].size();
  }
  return stats;
}

std::string format_stats_table(const std::vector<std::pair<std::string, CorpusStats>>& splits) {
  // Conventional CoNLL order first, anything else alphabetically after.
  static const std::vector<std::string> preferred = {"PER", "LOC", "ORG", "MISC", "O"};
  std::set<std::string> all_tags;
  for (const auto& [name, stats] : splits) {
    for (const auto& [tag, counts] : stats) {
      all_tags.insert(tag);
    }
  }
  std::vector<std::string> rows;
  for (const auto& tag : preferred) {
    if (all_tags.erase(tag) > 0) {
      rows.push_back(tag);
    }
  }
  rows.insert(rows.end(), all_tags.begin(), all_tags.end());

  std::string out = fmt::format("{:<8}", "tag");
  for (const auto& [name, stats] : splits) {
    out += fmt::format(" {:>20}", name);
  }
  out += '\n';
  for (const auto& tag : rows) {
    out += fmt::format("{:<8}", tag.empty() ? "(none)" : tag);
    for (const auto& [name, stats] : splits) {
      auto it = stats.find(tag);
      const TagCounts counts = it == stats.end() ? TagCounts{} : it->second;
      out += fmt::format(" {:>20}",
                         fmt::format("{} ({})", thousands(counts.tokens), thousands(counts.types)));
    }
    out += '\n';
  }
  return out;
}

void write_candidates(std::ostream& out, std::span<const Candidate> candidates) {
  for (const auto& c : candidates) {
    check_candidate(c);
    out << c.gold_tag.value_or("") << '\t' << c.surface() << '\t' << join(c.left_context, " ")
        << '\t' << join(c.right_context, " ") << '\n';
  }
}

std::vector<Candidate> read_candidates(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<Candidate> out;
  while (auto line = reader.next()) {
    if (line->empty()) {
      continue;
    }
    const auto fields = split_exact(*line, '\t');
    if (fields.size() != 4) {
      reader.fail(fmt::format("expected 4 tab-separated fields, found {}", fields.size()));
    }
    Candidate c;
    if (!fields[0].empty()) {
      c.gold_tag = std::string(fields[0]);
    }
    c.span_tokens = split_tokens(fields[1]);
    c.left_context = split_tokens(fields[2]);
    c.right_context = split_tokens(fields[3]);
    if (c.span_tokens.empty()) {
      reader.fail("empty candidate span");
    }
    out.push_back(std::move(c));
  }
  return out;
}

void save_candidates(const std::filesystem::path& path, std::span<const Candidate> candidates) {
  write_file_atomic(path, [&](std::ostream& out) { write_candidates(out, candidates); });
}

std::vector<Candidate> load_candidates(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_candidates(in, path.string());
}

} // namespace fmner
