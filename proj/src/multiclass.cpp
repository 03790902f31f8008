#include "fmner/multiclass.hpp"

#include "fmner/error.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <future>
#include <ostream>
#include <set>

namespace fmner {

namespace {

constexpr std::string_view kOvAHeader = "FMOVA v1";

} // namespace

OvAModel::OvAModel(std::vector<std::string> labels, std::vector<FMModel> models)
    : labels_(std::move(labels)), models_(std::move(models)) {
  if (labels_.empty()) {
    throw ConfigError("one-vs-all model needs at least one label");
  }
  if (labels_.size() != models_.size()) {
    throw ConfigError(fmt::format("one-vs-all model has {} labels but {} models", labels_.size(),
                                  models_.size()));
  }
  if (std::adjacent_find(labels_.begin(), labels_.end(), std::greater_equal<>()) != labels_.end()) {
    throw ConfigError("one-vs-all labels must be unique and sorted");
  }
  for (const auto& m : models_) {
    if (m.num_features() != models_.front().num_features() ||
        m.num_factors() != models_.front().num_factors()) {
      throw ConfigError("one-vs-all member models disagree on shape");
    }
  }
}

std::uint64_t label_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, folded into the seed with a splitmix64 round.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OvAModel train_ova(std::span<const TaggedInstance> data, std::size_t n, const TrainConfig& config,
                   OvATrainingLog* log) {
  config.validate();
  if (data.empty()) {
    throw ConfigError("cannot train on an empty data set");
  }
  std::set<std::string> tag_set;
  for (const auto& inst : data) {
    tag_set.insert(inst.tag);
  }
  std::vector<std::string> labels(tag_set.begin(), tag_set.end());

  std::vector<std::vector<double>> losses(labels.size());
  std::vector<std::future<FMModel>> jobs;
  jobs.reserve(labels.size());
  for (std::size_t li = 0; li < labels.size(); ++li) {
    jobs.push_back(std::async(std::launch::async, [&, li] {
      std::vector<LabeledInstance> binary;
      binary.reserve(data.size());
      for (const auto& inst : data) {
        binary.push_back({inst.x, inst.tag == labels[li] ? 1 : -1});
      }
      TrainConfig label_config = config;
      label_config.seed = label_seed(config.seed, labels[li]);
      return train_binary(binary, n, label_config,
                          [&losses, li](int, double loss) { losses[li].push_back(loss); });
    }));
  }
  std::vector<FMModel> models;
  models.reserve(labels.size());
  for (auto& job : jobs) {
    models.push_back(job.get());
  }
  if (log != nullptr) {
    log->labels = labels;
    log->epoch_losses = std::move(losses);
  }
  return OvAModel(std::move(labels), std::move(models));
}

std::vector<std::pair<std::string, double>> predict_scores(const OvAModel& model,
                                                           const SparseVector& x) {
  std::vector<std::pair<std::string, double>> scores;
  scores.reserve(model.labels().size());
  for (std::size_t i = 0; i < model.labels().size(); ++i) {
    scores.emplace_back(model.labels()[i], predict_raw(model.models()[i], x));
  }
  return scores;
}

const std::string& argmax_label(std::span<const std::pair<std::string, double>> scores) {
  if (scores.empty()) {
    throw InputError("argmax over an empty score list");
  }
  const auto* best = &scores.front();
  for (const auto& entry : scores.subspan(1)) {
    if (entry.second > best->second || (entry.second == best->second && entry.first < best->first)) {
      best = &entry;
    }
  }
  return best->first;
}

std::string predict_label(const OvAModel& model, const SparseVector& x) {
  const auto scores = predict_scores(model, x);
  return argmax_label(scores);
}

void write_ova(std::ostream& out, const OvAModel& model) {
  out << kOvAHeader << '\n' << model.labels().size() << '\n';
  for (std::size_t i = 0; i < model.labels().size(); ++i) {
    out << model.labels()[i] << '\n';
    write_model(out, model.models()[i]);
  }
}

OvAModel read_ova(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  if (reader.expect("header") != kOvAHeader) {
    reader.fail(fmt::format("expected '{}' header", kOvAHeader));
  }
  const auto count_line = reader.expect("label count");
  const auto count = parse_integer(count_line);
  if (!count || *count < 1) {
    reader.fail(fmt::format("invalid label count '{}'", count_line));
  }
  std::vector<std::string> labels;
  std::vector<FMModel> models;
  for (long long i = 0; i < *count; ++i) {
    auto label = reader.expect("label");
    if (label.empty() || split_whitespace(label).size() != 1) {
      reader.fail(fmt::format("invalid label '{}'", label));
    }
    labels.push_back(std::move(label));
    models.push_back(read_model(reader));
  }
  try {
    return OvAModel(std::move(labels), std::move(models));
  } catch (const ConfigError& e) {
    reader.fail(e.what());
  }
}

void save_ova(const std::filesystem::path& path, const OvAModel& model) {
  write_file_atomic(path, [&](std::ostream& out) { write_ova(out, model); });
}

OvAModel load_ova(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_ova(in, path.string());
}

} // namespace fmner
