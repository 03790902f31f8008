#include "fmner/eval.hpp"

#include "fmner/corpus.hpp"
#include "fmner/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

namespace fmner {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void fill_scores(TagScore& s) {
  s.precision = ratio(s.correct, s.predicted);
  s.recall = ratio(s.correct, s.gold);
  // 2PR/(P+R) reduces to 2c/(g+p); one division keeps F1 correctly rounded.
  s.f1 = s.correct == 0 ? 0.0 : ratio(2 * s.correct, s.gold + s.predicted);
}

} // namespace

EvalReport evaluate(std::span<const std::string> gold, std::span<const std::string> predicted) {
  if (gold.size() != predicted.size()) {
    throw InputError(fmt::format("evaluate: {} gold tags but {} predictions", gold.size(),
                                 predicted.size()));
  }
  if (gold.empty()) {
    throw InputError("evaluate: no instances");
  }

  std::set<std::string> tag_set(gold.begin(), gold.end());
  tag_set.insert(predicted.begin(), predicted.end());
  EvalReport report;
  report.labels.assign(tag_set.begin(), tag_set.end());
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    index.emplace(report.labels[i], i);
  }
  report.confusion.assign(report.labels.size(), std::vector<std::size_t>(report.labels.size(), 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++report.confusion[index.at(gold[i])][index.at(predicted[i])];
  }

  report.micro.tag = "micro";
  for (std::size_t t = 0; t < report.labels.size(); ++t) {
    if (report.labels[t] == kOutsideTag) {
      continue;
    }
    TagScore s;
    s.tag = report.labels[t];
    for (std::size_t o = 0; o < report.labels.size(); ++o) {
      s.gold += report.confusion[t][o];
      s.predicted += report.confusion[o][t];
    }
    s.correct = report.confusion[t][t];
    fill_scores(s);
    report.micro.gold += s.gold;
    report.micro.predicted += s.predicted;
    report.micro.correct += s.correct;
    report.per_tag.push_back(std::move(s));
  }
  fill_scores(report.micro);
  return report;
}

std::vector<PRPoint> pr_curve(std::span<const ScoredLabel> scores) {
  const auto positives = static_cast<std::size_t>(
      std::count_if(scores.begin(), scores.end(), [](const ScoredLabel& s) { return s.positive; }));
  if (positives == 0) {
    throw InputError("precision-recall curve needs at least one positive instance");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a].score > scores[b].score; });

  std::vector<PRPoint> curve;
  curve.reserve(scores.size());
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (scores[order[rank]].positive) {
      ++hits;
    }
    curve.push_back({ratio(hits, rank + 1), ratio(hits, positives)});
  }
  return curve;
}

std::vector<std::string> predict_all(const OvAModel& model, std::span<const TaggedInstance> data) {
  std::vector<std::string> out;
  out.reserve(data.size());
  for (const auto& inst : data) {
    out.push_back(predict_label(model, inst.x));
  }
  return out;
}

std::vector<KSweepPoint> sweep_k(std::span<const TaggedInstance> train,
                                 std::span<const TaggedInstance> dev, std::size_t n,
                                 std::span<const std::size_t> k_values, const TrainConfig& base) {
  if (k_values.empty()) {
    throw ConfigError("k sweep needs at least one k value");
  }
  std::vector<std::string> gold;
  gold.reserve(dev.size());
  for (const auto& inst : dev) {
    gold.push_back(inst.tag);
  }
  std::vector<KSweepPoint> out;
  out.reserve(k_values.size());
  for (std::size_t k : k_values) {
    TrainConfig config = base;
    config.k = k;
    const auto model = train_ova(train, n, config);
    const auto report = evaluate(gold, predict_all(model, dev));
    out.push_back({k, report.micro.f1});
  }
  return out;
}

std::string format_percent(double fraction) { return fmt::format("{:.2f}", 100.0 * fraction); }

void write_report_text(std::ostream& out, const EvalReport& report) {
  out << fmt::format("{:<8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n", "tag", "P", "R", "F1", "gold",
                     "pred", "correct");
  auto row = [&](const TagScore& s) {
    out << fmt::format("{:<8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n", s.tag,
                       format_percent(s.precision), format_percent(s.recall), format_percent(s.f1),
                       s.gold, s.predicted, s.correct);
  };
  for (const auto& s : report.per_tag) {
    row(s);
  }
  row(report.micro);
  out << "\nconfusion (rows gold, columns predicted)\n";
  out << fmt::format("{:<8}", "");
  for (const auto& label : report.labels) {
    out << fmt::format(" {:>7}", label);
  }
  out << '\n';
  for (std::size_t g = 0; g < report.labels.size(); ++g) {
    out << fmt::format("{:<8}", report.labels[g]);
    for (std::size_t p = 0; p < report.labels.size(); ++p) {
      out << fmt::format(" {:>7}", report.confusion[g][p]);
    }
    out << '\n';
  }
}

void write_metrics_tsv(std::ostream& out, const EvalReport& report) {
  auto row = [&](const TagScore& s) {
    out << s.tag << '\t' << format_percent(s.precision) << '\t' << format_percent(s.recall) << '\t'
        << format_percent(s.f1) << '\n';
  };
  out << "tag\tP\tR\tF1\n";
  for (const auto& s : report.per_tag) {
    row(s);
  }
  row(report.micro);
}

void write_confusion_tsv(std::ostream& out, const EvalReport& report) {
  out << "gold\\pred";
  for (const auto& label : report.labels) {
    out << '\t' << label;
  }
  out << '\n';
  for (std::size_t g = 0; g < report.labels.size(); ++g) {
    out << report.labels[g];
    for (std::size_t p = 0; p < report.labels.size(); ++p) {
      out << '\t' << report.confusion[g][p];
    }
    out << '\n';
  }
}

void write_pr_curve(std::ostream& out, std::span<const PRPoint> curve) {
  out << "# recall\tprecision\n";
  for (const auto& p : curve) {
    out << fmt::format("{:.6f}\t{:.6f}\n", p.recall, p.precision);
  }
}

void write_k_sweep(std::ostream& out, std::span<const KSweepPoint> sweep) {
  out << "# k\tmicro_f1\n";
  for (const auto& p : sweep) {
    out << p.k << '\t' << format_percent(p.micro_f1) << '\n';
  }
}

} // namespace fmner
