#include "fmner/fm_model.hpp"

#include "fmner/error.hpp"
#include "fmner/text_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fmner {

namespace {

constexpr std::string_view kModelHeader = "FMMODEL v1";

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double linear_part(const FMModel& model, const SparseVector& x) {
  double sum = model.bias();
  const auto w = model.weights();
  for (const auto& e : x) {
    sum += w[e.index] * e.value;
  }
  return sum;
}

} // namespace

FMModel::FMModel(std::size_t n, std::size_t k) : n_(n), k_(k), w_(n, 0.0), factors_(n * k, 0.0) {}

FMModel::FMModel(std::size_t n, std::size_t k, double w0, std::vector<double> w,
                 std::vector<double> factors)
    : n_(n), k_(k), w0_(w0), w_(std::move(w)), factors_(std::move(factors)) {
  if (w_.size() != n_) {
    throw ConfigError(fmt::format("model: weight vector has {} entries, expected {}", w_.size(), n_));
  }
  if (factors_.size() != n_ * k_) {
    throw ConfigError(
        fmt::format("model: factor matrix has {} entries, expected {}x{}", factors_.size(), n_, k_));
  }
  if (!std::isfinite(w0_) || !all_finite(w_) || !all_finite(factors_)) {
    throw ConfigError("model: non-finite parameter");
  }
}

void check_dimension(const FMModel& model, const SparseVector& x) {
  if (x.min_dimension() > model.num_features()) {
    throw DimensionError(fmt::format("feature index {} out of range for model with {} features",
                                     x.entries().back().index, model.num_features()));
  }
}

double predict_raw(const FMModel& model, const SparseVector& x) {
  check_dimension(model, x);
  double result = linear_part(model, x);
  const std::size_t k = model.num_factors();
  if (k == 0 || x.size() < 2) {
    return result;
  }
  double interaction = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& e : x) {
      const double t = model.factor_row(e.index)[f] * e.value;
      sum += t;
      sum_sq += t * t;
    }
    interaction += sum * sum - sum_sq;
  }
  return result + 0.5 * interaction;
}

double predict_raw_naive(const FMModel& model, const SparseVector& x) {
  check_dimension(model, x);
  double result = linear_part(model, x);
  const auto entries = x.entries();
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      result += interaction_weight(model, entries[a].index, entries[b].index) * entries[a].value *
                entries[b].value;
    }
  }
  return result;
}

double interaction_weight(const FMModel& model, std::size_t i, std::size_t j) {
  if (i >= model.num_features() || j >= model.num_features()) {
    throw DimensionError(fmt::format("interaction ({}, {}) out of range for model with {} features",
                                     i, j, model.num_features()));
  }
  // Same summation order for (i, j) and (j, i), so symmetry is exact.
  const auto vi = model.factor_row(i);
  const auto vj = model.factor_row(j);
  double dot = 0.0;
  for (std::size_t f = 0; f < vi.size(); ++f) {
    dot += vi[f] * vj[f];
  }
  return dot;
}

void write_model(std::ostream& out, const FMModel& model) {
  out << kModelHeader << '\n';
  out << model.num_features() << ' ' << model.num_factors() << '\n';
  out << format_real(model.bias()) << '\n';
  const auto w = model.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << (i > 0 ? " " : "") << format_real(w[i]);
  }
  out << '\n';
  for (std::size_t i = 0; i < model.num_features(); ++i) {
    const auto row = model.factor_row(i);
    for (std::size_t f = 0; f < row.size(); ++f) {
      out << (f > 0 ? " " : "") << format_real(row[f]);
    }
    out << '\n';
  }
}

namespace {

std::vector<double> parse_reals(LineReader& reader, std::string_view line, std::size_t expected,
                                std::string_view what) {
  const auto tokens = split_whitespace(line);
  if (tokens.size() != expected) {
    reader.fail(fmt::format("{}: expected {} values, found {}", what, expected, tokens.size()));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (auto token : tokens) {
    auto value = parse_real(token);
    if (!value || !std::isfinite(*value)) {
      reader.fail(fmt::format("{}: invalid number '{}'", what, token));
    }
    values.push_back(*value);
  }
  return values;
}

std::size_t parse_count(LineReader& reader, std::string_view token, std::string_view what) {
  auto value = parse_integer(token);
  if (!value || *value < 0) {
    reader.fail(fmt::format("invalid {} '{}'", what, token));
  }
  return static_cast<std::size_t>(*value);
}

} // namespace

FMModel read_model(LineReader& reader) {
  if (reader.expect("model header") != kModelHeader) {
    reader.fail(fmt::format("expected '{}' header", kModelHeader));
  }
  const auto shape_line = reader.expect("model shape");
  const auto shape = split_whitespace(shape_line);
  if (shape.size() != 2) {
    reader.fail("expected 'n k'");
  }
  const std::size_t n = parse_count(reader, shape[0], "feature count");
  const std::size_t k = parse_count(reader, shape[1], "factor count");

  const double w0 = parse_reals(reader, reader.expect("bias"), 1, "bias").front();
  auto w = parse_reals(reader, reader.expect("weights"), n, "weights");
  std::vector<double> factors;
  factors.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = parse_reals(reader, reader.expect("factor row"), k, "factor row");
    factors.insert(factors.end(), row.begin(), row.end());
  }
  return FMModel(n, k, w0, std::move(w), std::move(factors));
}

void save_model(const std::filesystem::path& path, const FMModel& model) {
  write_file_atomic(path, [&](std::ostream& out) { write_model(out, model); });
}

FMModel load_model(const std::filesystem::path& path) {
  auto in = open_input(path);
  LineReader reader(in, path.string());
  return read_model(reader);
}

} // namespace fmner
