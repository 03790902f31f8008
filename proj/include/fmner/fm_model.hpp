#pragma once

#include "fmner/sparse_vector.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fmner {

class LineReader;

/// Degree-2 factorization machine:
///
///   y(x) = w0 + sum_i w_i x_i + sum_{i<j} <v_i, v_j> x_i x_j
///
/// with V an n x k factor matrix stored row-major. k == 0 is a plain
/// linear model.
class FMModel {
public:
  FMModel() = default;

  /// All-zero model of the given shape.
  FMModel(std::size_t n, std::size_t k);

  /// Throws ConfigError if w.size() != n, factors.size() != n*k, or any
  /// parameter is non-finite.
  FMModel(std::size_t n, std::size_t k, double w0, std::vector<double> w,
          std::vector<double> factors);

  std::size_t num_features() const noexcept { return n_; }
  std::size_t num_factors() const noexcept { return k_; }

  double bias() const noexcept { return w0_; }
  double& bias() noexcept { return w0_; }

  std::span<const double> weights() const noexcept { return w_; }
  std::span<double> weights() noexcept { return w_; }

  /// Row i of V (length k).
  std::span<const double> factor_row(std::size_t i) const noexcept {
    return {factors_.data() + i * k_, k_};
  }
  std::span<double> factor_row(std::size_t i) noexcept { return {factors_.data() + i * k_, k_}; }

  std::span<const double> factors() const noexcept { return factors_; }
  std::span<double> factors() noexcept { return factors_; }

  friend bool operator==(const FMModel&, const FMModel&) = default;

private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  double w0_ = 0.0;
  std::vector<double> w_;
  std::vector<double> factors_;
};

/// Throws DimensionError if any index of x is >= model.num_features().
void check_dimension(const FMModel& model, const SparseVector& x);

/// Model output in O(nnz(x) * k), using
///   sum_{i<j} <v_i,v_j> x_i x_j = 1/2 sum_f [ (sum_i v_if x_i)^2 - sum_i v_if^2 x_i^2 ].
double predict_raw(const FMModel& model, const SparseVector& x);

/// Literal pairwise double loop over the nonzeros of x. Test oracle for
/// predict_raw; quadratic in nnz(x).
double predict_raw_naive(const FMModel& model, const SparseVector& x);

/// <v_i, v_j>. Symmetric in (i, j); zero when k == 0.
double interaction_weight(const FMModel& model, std::size_t i, std::size_t j);

// "FMMODEL v1" text format. Reals are written with 17 significant digits
// so a save/load cycle is bit-exact.
void write_model(std::ostream& out, const FMModel& model);
FMModel read_model(LineReader& reader);
void save_model(const std::filesystem::path& path, const FMModel& model);
FMModel load_model(const std::filesystem::path& path);

} // namespace fmner
