#pragma once

#include "fmner/fm_model.hpp"
#include "fmner/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fmner::testing {

/// Model with every parameter drawn from N(0, scale^2).
FMModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t k, double scale = 1.0);

/// Up to max_nnz distinct indices below n, values uniform in [-2, 2] \ {0}.
SparseVector random_vector(std::mt19937_64& rng, std::size_t n, std::size_t max_nnz);

/// The four indicator patterns over features 0 and 1 with XOR labels:
/// neither -> -1, only 0 -> +1, only 1 -> +1, both -> -1.
std::vector<LabeledInstance> xor_patterns();

struct Split {
  std::vector<LabeledInstance> train;
  std::vector<LabeledInstance> test;
};

/// `copies` shuffled copies of each XOR pattern with labels flipped at
/// rate `noise`, split train/test by `train_fraction`.
Split noisy_xor(std::uint64_t seed, std::size_t copies = 250, double noise = 0.1,
                double train_fraction = 0.8);

/// Fraction of instances where sign(raw score) matches the label (score 0
/// counts as negative).
double accuracy(const FMModel& model, const std::vector<LabeledInstance>& data);

/// Writes train.conll, dev.conll and test.conll (token POS chunk NE) into
/// dir. Entity sentences look like "the <ctx> <NAME> ." where ctx is said
/// or told and NAME is either capitalized or all caps; the tag is PER when
/// (all caps XOR ctx == said) and LOC otherwise, flipped at rate `noise`.
/// Every fifth sentence is "<Name> was quiet ." with an O-tagged name.
/// Names are unique random strings, so the unknown filter keeps them.
void write_xor_corpus(const std::filesystem::path& dir, std::uint64_t seed, double noise = 0.05);

/// Central finite differences of loss_value(predict_raw_naive(.)) with
/// respect to w0, then w_i and v_i for each entry of x in order. Same
/// layout as LossGradient.
LossGradient numeric_loss_gradient(const FMModel& model, const LabeledInstance& inst, LossKind loss,
                                   double step = 1e-5);

/// Relative error with a floor on the denominator so that near-zero
/// components are compared absolutely.
double relative_error(double analytic, double numeric, double floor = 1e-6);

/// Fresh empty directory under the system temp dir; removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& prefix);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);

} // namespace fmner::testing
