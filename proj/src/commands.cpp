#include "fmner/commands.hpp"

#include "fmner/corpus.hpp"
#include "fmner/error.hpp"
#include "fmner/eval.hpp"
#include "fmner/sparse_text.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace fmner::cli {

namespace {

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  write_file_atomic(path, [&](std::ostream& out) { out << text; });
}

struct LoadedModel {
  OvAModel model;
  FeatureSpace space;
  std::vector<Candidate> candidates;
  std::vector<TaggedInstance> instances;
};

LoadedModel load_inputs(const ModelInputs& inputs) {
  auto model = load_ova(inputs.model);
  auto space = load_feature_space(inputs.space);
  if (model.num_features() != space.size()) {
    throw CompatibilityError(fmt::format("model '{}' has {} features but feature space '{}' has {}",
                                         inputs.model.string(), model.num_features(),
                                         inputs.space.string(), space.size()));
  }
  auto candidates = load_candidates(inputs.candidates);
  if (candidates.empty()) {
    throw InputError("no candidates in '" + inputs.candidates.string() + "'");
  }
  std::vector<TaggedInstance> instances;
  instances.reserve(candidates.size());
  for (const auto& c : candidates) {
    instances.push_back({vectorize(space, extract_features(c)), c.gold_tag.value_or("")});
  }
  return {std::move(model), std::move(space), std::move(candidates), std::move(instances)};
}

void require_gold(std::span<const TaggedInstance> instances, const fs::path& source) {
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].tag.empty()) {
      throw InputError(fmt::format("{}: candidate {} has no gold tag", source.string(), i + 1));
    }
  }
}

std::vector<PRPoint> curve_for(const OvAModel& model, std::span<const TaggedInstance> instances,
                               const std::string& tag) {
  const auto& labels = model.labels();
  const auto it = std::find(labels.begin(), labels.end(), tag);
  if (it == labels.end()) {
    throw InputError(fmt::format("tag '{}' is not a model label", tag));
  }
  const auto& member = model.models()[static_cast<std::size_t>(it - labels.begin())];
  std::vector<ScoredLabel> scored;
  scored.reserve(instances.size());
  for (const auto& inst : instances) {
    scored.push_back({predict_raw(member, inst.x), inst.tag == tag});
  }
  return pr_curve(scored);
}

void write_curve_file(const fs::path& out_dir, const OvAModel& model,
                      std::span<const TaggedInstance> instances, const std::string& tag) {
  const auto curve = curve_for(model, instances, tag);
  write_file_atomic(out_dir / pr_curve_file_name(tag),
                    [&](std::ostream& out) { write_pr_curve(out, curve); });
}

bool has_positive(std::span<const TaggedInstance> instances, const std::string& tag) {
  return std::any_of(instances.begin(), instances.end(),
                     [&](const TaggedInstance& i) { return i.tag == tag; });
}

} // namespace

std::string pr_curve_file_name(const std::string& tag) { return "pr-" + tag + ".tsv"; }

std::vector<TaggedInstance> to_instances(const FeatureSpace& space,
                                         std::span<const Candidate> candidates) {
  std::vector<TaggedInstance> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i].gold_tag) {
      throw InputError(fmt::format("candidate {} ('{}') has no gold tag", i + 1,
                                   candidates[i].surface()));
    }
    out.push_back({vectorize(space, extract_features(candidates[i])), *candidates[i].gold_tag});
  }
  return out;
}

void run_prepare(const PrepareOptions& options, std::ostream& out) {
  ensure_directory(options.out_dir);
  const auto train_sentences =
      parse_column_file(options.train, options.token_column, options.tag_column);
  const auto train = extract_candidates(train_sentences);
  save_candidates(options.out_dir / kTrainCandidates, train);

  std::vector<std::pair<std::string, CorpusStats>> stats{{"training", corpus_stats(train)}};
  auto eval_split = [&](const std::optional<fs::path>& path, const char* name, const char* file) {
    if (!path) {
      return;
    }
    const auto sentences = parse_column_file(*path, options.token_column, options.tag_column);
    const auto kept = filter_unknown(extract_candidates(sentences), train);
    save_candidates(options.out_dir / file, kept);
    stats.emplace_back(name, corpus_stats(kept));
  };
  eval_split(options.dev, "development", kDevCandidates);
  eval_split(options.test, "test", kTestCandidates);

  const auto table = format_stats_table(stats);
  write_text(options.out_dir / kStatsFile, table);
  out << table;
}

void run_stats(const std::vector<std::pair<std::string, fs::path>>& splits, std::ostream& out) {
  std::vector<std::pair<std::string, CorpusStats>> stats;
  for (const auto& [name, path] : splits) {
    stats.emplace_back(name, corpus_stats(load_candidates(path)));
  }
  out << format_stats_table(stats);
}

void run_train(const TrainOptions& options, std::ostream& log) {
  options.config.validate();
  if (options.candidates.has_value() == options.sparse.has_value()) {
    throw ConfigError("train needs exactly one of a candidates file or a sparse text file");
  }
  std::vector<TaggedInstance> instances;
  std::optional<FeatureSpace> space;
  std::size_t n = 0;
  if (options.candidates) {
    const auto candidates = load_candidates(*options.candidates);
    if (candidates.empty()) {
      throw ConfigError("no training candidates in '" + options.candidates->string() + "'");
    }
    space = fit_feature_space(candidates);
    instances = to_instances(*space, candidates);
    n = space->size();
  } else {
    if (!options.tag_map) {
      throw ConfigError("sparse training input needs a tag map");
    }
    instances = import_multiclass(*options.sparse, *options.tag_map);
    if (instances.empty()) {
      throw ConfigError("no training instances in '" + options.sparse->string() + "'");
    }
    for (const auto& inst : instances) {
      n = std::max(n, inst.x.min_dimension());
    }
  }

  ensure_directory(options.out_dir);
  OvATrainingLog training_log;
  const auto model = train_ova(instances, n, options.config, &training_log);
  for (std::size_t li = 0; li < training_log.labels.size(); ++li) {
    const auto& losses = training_log.epoch_losses[li];
    for (std::size_t e = 0; e < losses.size(); ++e) {
      log << fmt::format("label {} epoch {} mean {} loss {:.6f}\n", training_log.labels[li], e + 1,
                         to_string(options.config.loss), losses[e]);
    }
  }
  save_ova(options.out_dir / kModelFile, model);
  if (space) {
    save_feature_space(options.out_dir / kSpaceFile, *space);
  }
}

void run_predict(const ModelInputs& inputs, const fs::path& out_file) {
  const auto loaded = load_inputs(inputs);
  write_file_atomic(out_file, [&](std::ostream& out) {
    out << "gold\tpredicted\tspan";
    for (const auto& label : loaded.model.labels()) {
      out << '\t' << label;
    }
    out << '\n';
    for (std::size_t i = 0; i < loaded.instances.size(); ++i) {
      const auto scores = predict_scores(loaded.model, loaded.instances[i].x);
      out << loaded.instances[i].tag << '\t' << argmax_label(scores) << '\t'
          << loaded.candidates[i].surface();
      for (const auto& [label, score] : scores) {
        out << '\t' << format_real(score);
      }
      out << '\n';
    }
  });
}

void run_eval(const ModelInputs& inputs, const fs::path& out_dir, bool pr_curves,
              std::ostream& out) {
  const auto loaded = load_inputs(inputs);
  require_gold(loaded.instances, inputs.candidates);
  std::vector<std::string> gold;
  gold.reserve(loaded.instances.size());
  for (const auto& inst : loaded.instances) {
    gold.push_back(inst.tag);
  }
  const auto report = evaluate(gold, predict_all(loaded.model, loaded.instances));

  ensure_directory(out_dir);
  std::ostringstream text;
  write_report_text(text, report);
  write_text(out_dir / kReportFile, text.str());
  write_file_atomic(out_dir / kMetricsFile, [&](std::ostream& o) { write_metrics_tsv(o, report); });
  write_file_atomic(out_dir / kConfusionFile,
                    [&](std::ostream& o) { write_confusion_tsv(o, report); });
  if (pr_curves) {
    for (const auto& label : loaded.model.labels()) {
      if (label != kOutsideTag && has_positive(loaded.instances, label)) {
        write_curve_file(out_dir, loaded.model, loaded.instances, label);
      }
    }
  }
  out << text.str();
}

void run_pr_curve(const ModelInputs& inputs, const std::optional<std::string>& tag,
                  const fs::path& out_dir) {
  const auto loaded = load_inputs(inputs);
  require_gold(loaded.instances, inputs.candidates);
  ensure_directory(out_dir);
  if (tag) {
    write_curve_file(out_dir, loaded.model, loaded.instances, *tag);
    return;
  }
  for (const auto& label : loaded.model.labels()) {
    if (label != kOutsideTag && has_positive(loaded.instances, label)) {
      write_curve_file(out_dir, loaded.model, loaded.instances, label);
    }
  }
}

void run_sweep_k(const SweepOptions& options, std::ostream& out) {
  options.config.validate();
  const auto train_candidates = load_candidates(options.train);
  if (train_candidates.empty()) {
    throw ConfigError("no training candidates in '" + options.train.string() + "'");
  }
  const auto dev_candidates = load_candidates(options.dev);
  if (dev_candidates.empty()) {
    throw InputError("no development candidates in '" + options.dev.string() + "'");
  }
  const auto space = fit_feature_space(train_candidates);
  const auto train = to_instances(space, train_candidates);
  const auto dev = to_instances(space, dev_candidates);
  const auto sweep = sweep_k(train, dev, space.size(), options.k_values, options.config);

  std::ostringstream text;
  write_k_sweep(text, sweep);
  write_text(options.out_file, text.str());
  out << text.str();
}

void run_export_sparse(const fs::path& space_path, const fs::path& candidates,
                       const fs::path& out_data, const fs::path& out_tag_map) {
  const auto space = load_feature_space(space_path);
  const auto instances = to_instances(space, load_candidates(candidates));
  export_multiclass(out_data, out_tag_map, instances);
}

} // namespace fmner::cli
