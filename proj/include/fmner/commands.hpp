#pragma once

#include "fmner/featurizer.hpp"
#include "fmner/multiclass.hpp"
#include "fmner/trainer.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmner::cli {

namespace fs = std::filesystem;

// Output file names written into --out directories.
inline constexpr const char* kTrainCandidates = "train.tsv";
inline constexpr const char* kDevCandidates = "dev.tsv";
inline constexpr const char* kTestCandidates = "test.tsv";
inline constexpr const char* kStatsFile = "stats.txt";
inline constexpr const char* kModelFile = "model.fmova";
inline constexpr const char* kSpaceFile = "features.txt";
inline constexpr const char* kReportFile = "report.txt";
inline constexpr const char* kMetricsFile = "metrics.tsv";
inline constexpr const char* kConfusionFile = "confusion.tsv";

/// "pr-<TAG>.tsv"
std::string pr_curve_file_name(const std::string& tag);

struct PrepareOptions {
  fs::path train;
  std::optional<fs::path> dev;
  std::optional<fs::path> test;
  std::size_t token_column = 0;
  std::size_t tag_column = 3;
  fs::path out_dir;
};

/// Column files -> candidates files, with dev/test filtered against the
/// training surfaces. Prints the per-split statistics table to `out`.
void run_prepare(const PrepareOptions& options, std::ostream& out);

/// Statistics table for already-prepared candidates files.
void run_stats(const std::vector<std::pair<std::string, fs::path>>& splits, std::ostream& out);

struct TrainOptions {
  std::optional<fs::path> candidates;
  // Alternative input: multiclass sparse text plus its tag map.
  std::optional<fs::path> sparse;
  std::optional<fs::path> tag_map;
  TrainConfig config;
  fs::path out_dir;
};

/// Writes model.fmova and features.txt into out_dir; logs per-epoch mean
/// training loss per label to `log`.
void run_train(const TrainOptions& options, std::ostream& log);

struct ModelInputs {
  fs::path model;
  fs::path space;
  fs::path candidates;
};

/// Per-candidate predictions: gold, predicted, span, then one raw score
/// column per label.
void run_predict(const ModelInputs& inputs, const fs::path& out_file);

/// Writes report.txt, metrics.tsv and confusion.tsv (plus pr-<TAG>.tsv per
/// non-O label when pr_curves is set) into out_dir and prints the report.
void run_eval(const ModelInputs& inputs, const fs::path& out_dir, bool pr_curves,
              std::ostream& out);

/// Precision-recall curve files for one tag, or every non-O label.
void run_pr_curve(const ModelInputs& inputs, const std::optional<std::string>& tag,
                  const fs::path& out_dir);

struct SweepOptions {
  fs::path train;
  fs::path dev;
  std::vector<std::size_t> k_values;
  TrainConfig config;
  fs::path out_file;
};

void run_sweep_k(const SweepOptions& options, std::ostream& out);

/// Vectorizes a candidates file against a feature space and writes it as
/// multiclass sparse text plus the tag map.
void run_export_sparse(const fs::path& space, const fs::path& candidates, const fs::path& out_data,
                       const fs::path& out_tag_map);

/// Candidates with gold tags -> labelled instances. Throws InputError on a
/// candidate without a gold tag.
std::vector<TaggedInstance> to_instances(const FeatureSpace& space,
                                         std::span<const Candidate> candidates);

} // namespace fmner::cli
