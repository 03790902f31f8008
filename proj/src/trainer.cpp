#include "fmner/trainer.hpp"

#include "fmner/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fmner {

std::string_view to_string(LossKind loss) {
  switch (loss) {
  case LossKind::hinge:
    return "hinge";
  case LossKind::logistic:
    return "logistic";
  }
  return "unknown";
}

std::optional<LossKind> parse_loss(std::string_view name) {
  if (name == "hinge") {
    return LossKind::hinge;
  }
  if (name == "logistic") {
    return LossKind::logistic;
  }
  return std::nullopt;
}

void TrainConfig::validate() const {
  auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!(std::isfinite(learning_rate) && learning_rate > 0.0)) {
    throw ConfigError(fmt::format("learning rate must be positive, got {}", learning_rate));
  }
  if (epochs < 1) {
    throw ConfigError(fmt::format("epochs must be at least 1, got {}", epochs));
  }
  if (!non_negative(init_sd)) {
    throw ConfigError(fmt::format("init_sd must be non-negative, got {}", init_sd));
  }
  if (!non_negative(reg_w0) || !non_negative(reg_w) || !non_negative(reg_v)) {
    throw ConfigError("regularization coefficients must be non-negative");
  }
}

void check_label(int y) {
  if (y != 1 && y != -1) {
    throw InputError(fmt::format("binary label must be -1 or +1, got {}", y));
  }
}

namespace {

// splitmix64 finalizer; decorrelates the shuffle stream from the init stream.
std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// y-hat together with S_f = sum_i v_if x_i for every factor f.
double forward(const FMModel& model, const SparseVector& x, std::vector<double>& sums) {
  const std::size_t k = model.num_factors();
  sums.assign(k, 0.0);
  double linear = model.bias();
  double sum_sq = 0.0;
  const auto w = model.weights();
  for (const auto& e : x) {
    linear += w[e.index] * e.value;
    const auto row = model.factor_row(e.index);
    for (std::size_t f = 0; f < k; ++f) {
      const double t = row[f] * e.value;
      sums[f] += t;
      sum_sq += t * t;
    }
  }
  double sq_sum = 0.0;
  for (double s : sums) {
    sq_sum += s * s;
  }
  return linear + 0.5 * (sq_sum - sum_sq);
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

} // namespace

FMModel init_model(std::size_t n, const TrainConfig& config) {
  FMModel model(n, config.k);
  if (config.init_sd > 0.0) {
    std::mt19937_64 engine(config.seed);
    std::normal_distribution<double> normal(0.0, config.init_sd);
    for (double& v : model.factors()) {
      v = normal(engine);
    }
  }
  return model;
}

double loss_value(LossKind loss, double score, int y) {
  const double margin = y * score;
  switch (loss) {
  case LossKind::hinge:
    return std::max(0.0, 1.0 - margin);
  case LossKind::logistic:
    return softplus(-margin);
  }
  return 0.0;
}

double loss_derivative(LossKind loss, double score, int y) {
  const double margin = y * score;
  switch (loss) {
  case LossKind::hinge:
    return margin < 1.0 ? -static_cast<double>(y) : 0.0;
  case LossKind::logistic:
    return -y * sigmoid(-margin);
  }
  return 0.0;
}

LossGradient loss_gradient(const FMModel& model, const LabeledInstance& inst, LossKind loss) {
  check_dimension(model, inst.x);
  check_label(inst.y);
  std::vector<double> sums;
  const double score = forward(model, inst.x, sums);
  const double g = loss_derivative(loss, score, inst.y);
  const std::size_t k = model.num_factors();

  LossGradient grad;
  grad.bias = g;
  grad.weights.reserve(inst.x.size());
  grad.factors.reserve(inst.x.size() * k);
  for (const auto& e : inst.x) {
    grad.weights.push_back(g * e.value);
    const auto row = model.factor_row(e.index);
    for (std::size_t f = 0; f < k; ++f) {
      grad.factors.push_back(g * e.value * (sums[f] - row[f] * e.value));
    }
  }
  return grad;
}

namespace {

void sgd_step_unchecked(FMModel& model, const LabeledInstance& inst, const TrainConfig& config,
                        std::vector<double>& sums, double score) {
  const double g = loss_derivative(config.loss, score, inst.y);
  const double lr = config.learning_rate;
  if (g == 0.0 && config.reg_w0 == 0.0 && config.reg_w == 0.0 && config.reg_v == 0.0) {
    return;
  }
  const std::size_t k = model.num_factors();
  model.bias() -= lr * (g + config.reg_w0 * model.bias());
  auto w = model.weights();
  for (const auto& e : inst.x) {
    w[e.index] -= lr * (g * e.value + config.reg_w * w[e.index]);
    auto row = model.factor_row(e.index);
    for (std::size_t f = 0; f < k; ++f) {
      // sums[f] is from before this step; each v_if is read before it is written.
      const double grad = g * e.value * (sums[f] - row[f] * e.value);
      row[f] -= lr * (grad + config.reg_v * row[f]);
    }
  }
}

} // namespace

void sgd_step(FMModel& model, const LabeledInstance& inst, const TrainConfig& config) {
  check_dimension(model, inst.x);
  check_label(inst.y);
  std::vector<double> sums;
  const double score = forward(model, inst.x, sums);
  sgd_step_unchecked(model, inst, config, sums, score);
}

double mean_loss(const FMModel& model, std::span<const LabeledInstance> data, LossKind loss) {
  if (data.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (const auto& inst : data) {
    total += loss_value(loss, predict_raw(model, inst.x), inst.y);
  }
  return total / static_cast<double>(data.size());
}

double regularized_objective(const FMModel& model, std::span<const LabeledInstance> data,
                             const TrainConfig& config) {
  auto sq_norm = [](std::span<const double> v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
  };
  return mean_loss(model, data, config.loss) +
         0.5 * config.reg_w0 * model.bias() * model.bias() +
         0.5 * config.reg_w * sq_norm(model.weights()) + 0.5 * config.reg_v * sq_norm(model.factors());
}

FMModel train_binary(std::span<const LabeledInstance> data, std::size_t n,
                     const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (data.empty()) {
    throw ConfigError("cannot train on an empty data set");
  }
  for (const auto& inst : data) {
    check_label(inst.y);
    if (inst.x.min_dimension() > n) {
      throw DimensionError(
          fmt::format("training instance uses feature {} but n = {}", inst.x.min_dimension() - 1, n));
    }
  }

  FMModel model = init_model(n, config);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 shuffler(mix_seed(config.seed));
  std::vector<double> sums;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) {
      std::shuffle(order.begin(), order.end(), shuffler);
    }
    double epoch_loss = 0.0;
    for (std::size_t idx : order) {
      const auto& inst = data[idx];
      const double score = forward(model, inst.x, sums);
      epoch_loss += loss_value(config.loss, score, inst.y);
      sgd_step_unchecked(model, inst, config, sums, score);
    }
    if (on_epoch) {
      on_epoch(epoch, epoch_loss / static_cast<double>(data.size()));
    }
  }
  return model;
}

} // namespace fmner
