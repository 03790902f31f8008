#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace fmner::testing {

FMModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t k, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> w(n);
  std::vector<double> v(n * k);
  for (double& x : w) {
    x = normal(rng);
  }
  for (double& x : v) {
    x = normal(rng);
  }
  return FMModel(n, k, normal(rng), std::move(w), std::move(v));
}

SparseVector random_vector(std::mt19937_64& rng, std::size_t n, std::size_t max_nnz) {
  std::uniform_int_distribution<std::size_t> count(0, std::min(max_nnz, n));
  std::uniform_int_distribution<FeatureIndex> index(0, static_cast<FeatureIndex>(n - 1));
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::set<FeatureIndex> picked;
  const std::size_t target = count(rng);
  while (picked.size() < target) {
    picked.insert(index(rng));
  }
  std::vector<SparseEntry> entries;
  for (auto i : picked) {
    double v = 0.0;
    while (v == 0.0) {
      v = value(rng);
    }
    entries.push_back({i, v});
  }
  return SparseVector(std::move(entries));
}

std::vector<LabeledInstance> xor_patterns() {
  return {
      {SparseVector{}, -1},
      {SparseVector({{0, 1.0}}), 1},
      {SparseVector({{1, 1.0}}), 1},
      {SparseVector({{0, 1.0}, {1, 1.0}}), -1},
  };
}

Split noisy_xor(std::uint64_t seed, std::size_t copies, double noise, double train_fraction) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(noise);
  std::vector<LabeledInstance> all;
  for (const auto& pattern : xor_patterns()) {
    for (std::size_t c = 0; c < copies; ++c) {
      all.push_back({pattern.x, flip(rng) ? -pattern.y : pattern.y});
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  const auto cut = static_cast<std::size_t>(train_fraction * static_cast<double>(all.size()));
  Split split;
  split.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cut));
  split.test.assign(all.begin() + static_cast<std::ptrdiff_t>(cut), all.end());
  return split;
}

double accuracy(const FMModel& model, const std::vector<LabeledInstance>& data) {
  std::size_t hits = 0;
  for (const auto& inst : data) {
    const int predicted = predict_raw(model, inst.x) > 0.0 ? 1 : -1;
    hits += predicted == inst.y ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

LossGradient numeric_loss_gradient(const FMModel& model, const LabeledInstance& inst, LossKind loss,
                                   double step) {
  FMModel probe = model;
  auto central = [&](double& param) {
    const double saved = param;
    param = saved + step;
    const double up = loss_value(loss, predict_raw_naive(probe, inst.x), inst.y);
    param = saved - step;
    const double down = loss_value(loss, predict_raw_naive(probe, inst.x), inst.y);
    param = saved;
    return (up - down) / (2.0 * step);
  };
  LossGradient grad;
  grad.bias = central(probe.bias());
  for (const auto& e : inst.x) {
    grad.weights.push_back(central(probe.weights()[e.index]));
    for (double& v : probe.factor_row(e.index)) {
      grad.factors.push_back(central(v));
    }
  }
  return grad;
}

double relative_error(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

namespace {

std::string random_name(std::mt19937_64& rng, bool all_caps) {
  std::uniform_int_distribution<int> length(6, 9);
  std::uniform_int_distribution<int> letter(0, 25);
  std::string name;
  const int len = length(rng);
  for (int i = 0; i < len; ++i) {
    const bool upper = all_caps || i == 0;
    name += static_cast<char>((upper ? 'A' : 'a') + letter(rng));
  }
  return name;
}

void write_split(const std::filesystem::path& path, std::mt19937_64& rng, std::size_t sentences,
                 double noise) {
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution flip(noise);
  std::ofstream out(path);
  out << "-DOCSTART- -X- -X- O\n\n";
  for (std::size_t s = 0; s < sentences; ++s) {
    if (s % 5 == 4) {
      out << random_name(rng, false) << " NNP B-NP O\n"
          << "was VBD B-VP O\n"
          << "quiet JJ B-ADJP O\n"
          << ". . O O\n\n";
      continue;
    }
    const bool said = coin(rng);
    const bool caps = coin(rng);
    bool per = caps != said;
    if (flip(rng)) {
      per = !per;
    }
    out << "the DT B-NP O\n"
        << (said ? "said" : "told") << " VBD B-VP O\n"
        << random_name(rng, caps) << " NNP B-NP " << (per ? "B-PER" : "B-LOC") << "\n"
        << ". . O O\n\n";
  }
}

} // namespace

void write_xor_corpus(const std::filesystem::path& dir, std::uint64_t seed, double noise) {
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  write_split(dir / "train.conll", rng, 500, noise);
  write_split(dir / "dev.conll", rng, 150, noise);
  write_split(dir / "test.conll", rng, 150, noise);
}

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace fmner::testing
