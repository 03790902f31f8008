#pragma once

#include "fmner/multiclass.hpp"
#include "fmner/trainer.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fmner {

struct TagScore {
  std::string tag;
  std::size_t gold = 0;      // instances whose gold tag is `tag`
  std::size_t predicted = 0; // instances predicted as `tag`
  std::size_t correct = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Candidate-level scores. Per-tag and micro figures cover every tag except
/// O; 0/0 ratios are 0. The confusion matrix covers all tags including O.
struct EvalReport {
  std::vector<TagScore> per_tag; // non-O tags, sorted
  TagScore micro;                // tag == "micro"
  std::vector<std::string> labels;              // all tags, sorted
  std::vector<std::vector<std::size_t>> confusion; // [gold][predicted], indexed like labels
};

/// Throws InputError on empty input or a length mismatch.
EvalReport evaluate(std::span<const std::string> gold, std::span<const std::string> predicted);

struct ScoredLabel {
  double score;
  bool positive;
};

struct PRPoint {
  double precision;
  double recall;

  friend bool operator==(const PRPoint&, const PRPoint&) = default;
};

/// One (precision, recall) point per prefix of the instances ranked by
/// descending score (stable on ties). Throws InputError if none is positive.
std::vector<PRPoint> pr_curve(std::span<const ScoredLabel> scores);

struct KSweepPoint {
  std::size_t k;
  double micro_f1;
};

/// Trains a one-vs-all model per k (all other settings from base) and
/// scores it on dev. Results follow the order of k_values.
std::vector<KSweepPoint> sweep_k(std::span<const TaggedInstance> train,
                                 std::span<const TaggedInstance> dev, std::size_t n,
                                 std::span<const std::size_t> k_values, const TrainConfig& base);

/// Predicted tag for every instance.
std::vector<std::string> predict_all(const OvAModel& model, std::span<const TaggedInstance> data);

// Report writers. Percentages carry two decimals.
std::string format_percent(double fraction);
void write_report_text(std::ostream& out, const EvalReport& report);
void write_metrics_tsv(std::ostream& out, const EvalReport& report);
void write_confusion_tsv(std::ostream& out, const EvalReport& report);
void write_pr_curve(std::ostream& out, std::span<const PRPoint> curve);
void write_k_sweep(std::ostream& out, std::span<const KSweepPoint> sweep);

} // namespace fmner
