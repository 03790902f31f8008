#pragma once

#include "fmner/fm_model.hpp"
#include "fmner/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fmner {

struct TaggedInstance {
  SparseVector x;
  std::string tag;
};

/// One binary FM per tag. Labels are unique and sorted; every member
/// model has the same feature dimension.
class OvAModel {
public:
  /// Throws ConfigError if labels are empty, unsorted or duplicated, the
  /// counts differ, or member dimensions disagree.
  OvAModel(std::vector<std::string> labels, std::vector<FMModel> models);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<FMModel>& models() const noexcept { return models_; }
  std::size_t num_features() const noexcept { return models_.front().num_features(); }
  std::size_t num_factors() const noexcept { return models_.front().num_factors(); }

  friend bool operator==(const OvAModel&, const OvAModel&) = default;

private:
  std::vector<std::string> labels_;
  std::vector<FMModel> models_;
};

/// Per-label seed, a stable function of (seed, label) independent of
/// label insertion order and of the standard library's hash.
std::uint64_t label_seed(std::uint64_t seed, std::string_view label);

/// Mean training loss per epoch for each label, in label order.
struct OvATrainingLog {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> epoch_losses;
};

/// Trains one binary model per distinct tag (y = +1 for that tag, -1
/// otherwise). Labels train concurrently; the result does not depend on
/// scheduling.
OvAModel train_ova(std::span<const TaggedInstance> data, std::size_t n, const TrainConfig& config,
                   OvATrainingLog* log = nullptr);

/// Raw score of every member model, in label order.
std::vector<std::pair<std::string, double>> predict_scores(const OvAModel& model,
                                                           const SparseVector& x);

/// Argmax of a score list; exact ties go to the lexicographically
/// smallest tag. Throws InputError on an empty list.
const std::string& argmax_label(std::span<const std::pair<std::string, double>> scores);

std::string predict_label(const OvAModel& model, const SparseVector& x);

// "FMOVA v1": header, label count, then per label the tag line followed
// by an embedded FMMODEL v1 block.
void write_ova(std::ostream& out, const OvAModel& model);
OvAModel read_ova(std::istream& in, const std::string& source);
void save_ova(const std::filesystem::path& path, const OvAModel& model);
OvAModel load_ova(const std::filesystem::path& path);

} // namespace fmner
