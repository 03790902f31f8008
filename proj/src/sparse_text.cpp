#include "fmner/sparse_text.hpp"

#include "fmner/error.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace fmner {

std::vector<SparseTextRecord> read_sparse_text(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::vector<SparseTextRecord> out;
  while (auto line = reader.next()) {
    const auto tokens = split_whitespace(*line);
    if (tokens.empty()) {
      continue;
    }
    SparseTextRecord record;
    const auto label = parse_integer(tokens.front());
    if (!label) {
      reader.fail(fmt::format("invalid label '{}'", tokens.front()));
    }
    record.label = *label;

    std::vector<SparseEntry> entries;
    entries.reserve(tokens.size() - 1);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto token = tokens[t];
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        reader.fail(fmt::format("expected <index>:<value>, got '{}'", token));
      }
      const auto index = parse_integer(token.substr(0, colon));
      const auto value = parse_real(token.substr(colon + 1));
      if (!index || *index < 0 || *index > std::numeric_limits<FeatureIndex>::max()) {
        reader.fail(fmt::format("invalid feature index in '{}'", token));
      }
      if (!value || !std::isfinite(*value) || *value == 0.0) {
        reader.fail(fmt::format("invalid feature value in '{}'", token));
      }
      entries.push_back({static_cast<FeatureIndex>(*index), *value});
    }
    try {
      record.x = SparseVector::from_unsorted(std::move(entries));
    } catch (const InputError& e) {
      reader.fail(e.what());
    }
    out.push_back(std::move(record));
  }
  return out;
}

void write_sparse_text(std::ostream& out, std::span<const SparseTextRecord> records) {
  for (const auto& r : records) {
    out << r.label;
    for (const auto& e : r.x) {
      out << ' ' << e.index << ':' << format_real(e.value);
    }
    out << '\n';
  }
}

std::vector<LabeledInstance> import_binary(const std::filesystem::path& path) {
  auto in = open_input(path);
  auto records = read_sparse_text(in, path.string());
  std::vector<LabeledInstance> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].label != 1 && records[i].label != -1) {
      throw InputError(fmt::format("{}: record {} has label {}, expected -1 or +1", path.string(),
                                   i + 1, records[i].label));
    }
    out.push_back({std::move(records[i].x), static_cast<int>(records[i].label)});
  }
  return out;
}

void export_binary(const std::filesystem::path& path, std::span<const LabeledInstance> data) {
  std::vector<SparseTextRecord> records;
  records.reserve(data.size());
  for (const auto& inst : data) {
    check_label(inst.y);
    records.push_back({inst.y, inst.x});
  }
  write_file_atomic(path, [&](std::ostream& out) { write_sparse_text(out, records); });
}

std::vector<TaggedInstance> import_multiclass(const std::filesystem::path& data_path,
                                              const std::filesystem::path& tag_map_path) {
  std::vector<std::string> tags;
  {
    auto in = open_input(tag_map_path);
    LineReader reader(in, tag_map_path.string());
    while (auto line = reader.next()) {
      if (line->empty() || split_whitespace(*line).size() != 1) {
        reader.fail(fmt::format("invalid tag '{}'", *line));
      }
      tags.push_back(std::move(*line));
    }
  }
  auto in = open_input(data_path);
  auto records = read_sparse_text(in, data_path.string());
  std::vector<TaggedInstance> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto label = records[i].label;
    if (label < 0 || static_cast<std::size_t>(label) >= tags.size()) {
      throw InputError(fmt::format("{}: record {} has label {} but the tag map has {} entries",
                                   data_path.string(), i + 1, label, tags.size()));
    }
    out.push_back({std::move(records[i].x), tags[static_cast<std::size_t>(label)]});
  }
  return out;
}

void export_multiclass(const std::filesystem::path& data_path,
                       const std::filesystem::path& tag_map_path,
                       std::span<const TaggedInstance> data) {
  std::set<std::string> tag_set;
  for (const auto& inst : data) {
    tag_set.insert(inst.tag);
  }
  std::map<std::string, long long> ids;
  for (const auto& tag : tag_set) {
    ids.emplace(tag, static_cast<long long>(ids.size()));
  }
  std::vector<SparseTextRecord> records;
  records.reserve(data.size());
  for (const auto& inst : data) {
    records.push_back({ids.at(inst.tag), inst.x});
  }
  write_file_atomic(tag_map_path, [&](std::ostream& out) {
    for (const auto& tag : tag_set) {
      out << tag << '\n';
    }
  });
  write_file_atomic(data_path, [&](std::ostream& out) { write_sparse_text(out, records); });
}

} // namespace fmner
