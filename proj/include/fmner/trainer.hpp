#pragma once

#include "fmner/fm_model.hpp"
#include "fmner/sparse_vector.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fmner {

enum class LossKind { hinge, logistic };

std::string_view to_string(LossKind loss);
std::optional<LossKind> parse_loss(std::string_view name);

struct TrainConfig {
  std::size_t k = 5;
  double learning_rate = 0.05;
  double reg_w0 = 0.0;
  double reg_w = 1e-4;
  double reg_v = 1e-4;
  int epochs = 100;
  double init_sd = 0.1;
  std::uint64_t seed = 1;
  bool shuffle = true;
  LossKind loss = LossKind::hinge;

  /// Throws ConfigError on a non-positive rate or epoch count, or a
  /// negative/non-finite regularizer or init_sd.
  void validate() const;
};

struct LabeledInstance {
  SparseVector x;
  int y = 1; // -1 or +1
};

/// Throws InputError unless y is -1 or +1.
void check_label(int y);

/// w0 = 0, w = 0, V ~ N(0, init_sd^2) drawn from a generator seeded with
/// config.seed.
FMModel init_model(std::size_t n, const TrainConfig& config);

/// hinge: max(0, 1 - y s); logistic: ln(1 + exp(-y s)) without overflow.
double loss_value(LossKind loss, double score, int y);

/// dL/ds. The hinge subgradient at the kink y s == 1 is 0.
double loss_derivative(LossKind loss, double score, int y);

/// Gradient of the unregularized loss with respect to the parameters
/// touched by x. `weights` and the rows of `factors` follow the entry
/// order of x.
struct LossGradient {
  double bias = 0.0;
  std::vector<double> weights;
  std::vector<double> factors; // nnz(x) x k, row-major
};

LossGradient loss_gradient(const FMModel& model, const LabeledInstance& inst, LossKind loss);

/// One SGD update in place:
///   theta <- theta - lr * (dL/dy * dy/dtheta + reg_theta * theta)
/// for w0 and every w_i, v_i with x_i != 0. Nothing else changes.
void sgd_step(FMModel& model, const LabeledInstance& inst, const TrainConfig& config);

/// Mean loss over the data set (no regularization term).
double mean_loss(const FMModel& model, std::span<const LabeledInstance> data, LossKind loss);

/// mean_loss plus (reg/2)||theta||^2 for each parameter group.
double regularized_objective(const FMModel& model, std::span<const LabeledInstance> data,
                             const TrainConfig& config);

/// Called after each epoch with the 1-based epoch number and the mean
/// loss of the instances as they were visited during that epoch.
using EpochCallback = std::function<void(int epoch, double mean_loss)>;

/// init_model followed by config.epochs passes of sgd_step. The visiting
/// order is reshuffled every epoch when config.shuffle is set.
/// Bit-for-bit deterministic in (data, n, config).
FMModel train_binary(std::span<const LabeledInstance> data, std::size_t n,
                     const TrainConfig& config, const EpochCallback& on_epoch = {});

} // namespace fmner
