// fmner: candidate preparation, one-vs-all FM training and evaluation.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include "fmner/commands.hpp"
#include "fmner/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct TrainFlags {
  fmner::TrainConfig config;
  std::string loss = "hinge";
  bool no_shuffle = false;

  fmner::TrainConfig resolve() const {
    auto resolved = config;
    auto parsed = fmner::parse_loss(loss);
    if (!parsed) {
      throw fmner::ConfigError("unknown loss '" + loss + "'");
    }
    resolved.loss = *parsed;
    resolved.shuffle = !no_shuffle;
    resolved.validate();
    return resolved;
  }
};

void add_train_flags(CLI::App* cmd, TrainFlags& flags) {
  auto& c = flags.config;
  cmd->add_option("--k", c.k, "Factorization dimension (0 = linear model)")->capture_default_str();
  cmd->add_option("--lr", c.learning_rate, "SGD learning rate")->capture_default_str();
  cmd->add_option("--reg-w0", c.reg_w0, "L2 coefficient on the bias")->capture_default_str();
  cmd->add_option("--reg-w", c.reg_w, "L2 coefficient on linear weights")->capture_default_str();
  cmd->add_option("--reg-v", c.reg_v, "L2 coefficient on factors")->capture_default_str();
  cmd->add_option("--epochs", c.epochs, "Passes over the training data")->capture_default_str();
  cmd->add_option("--init-sd", c.init_sd, "Std-dev of factor initialization")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--loss", flags.loss, "Loss function")
      ->check(CLI::IsMember({"hinge", "logistic"}))
      ->capture_default_str();
  cmd->add_flag("--no-shuffle", flags.no_shuffle, "Visit instances in file order every epoch");
}

std::optional<std::filesystem::path> optional_path(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  return std::filesystem::path(s);
}

} // namespace

int main(int argc, char** argv) {
  namespace cli = fmner::cli;
  CLI::App app{"Factorization-machine classifier for unknown named-entity candidates"};
  app.require_subcommand(1);

  // prepare
  cli::PrepareOptions prepare;
  std::string prepare_dev, prepare_test;
  auto* prepare_cmd = app.add_subcommand("prepare", "Extract and filter candidates from column files");
  prepare_cmd->add_option("--train", prepare.train, "Training column file")
      ->required()
      ->check(CLI::ExistingFile);
  prepare_cmd->add_option("--dev", prepare_dev, "Development column file")->check(CLI::ExistingFile);
  prepare_cmd->add_option("--test", prepare_test, "Test column file")->check(CLI::ExistingFile);
  prepare_cmd->add_option("--token-col", prepare.token_column, "0-based token column")
      ->capture_default_str();
  prepare_cmd->add_option("--tag-col", prepare.tag_column, "0-based NE tag column")
      ->capture_default_str();
  prepare_cmd->add_option("--out", prepare.out_dir, "Output directory")->required();

  // stats
  std::string stats_train, stats_dev, stats_test;
  auto* stats_cmd = app.add_subcommand("stats", "Per-tag token/type counts of candidates files");
  stats_cmd->add_option("--train", stats_train, "Training candidates")->check(CLI::ExistingFile);
  stats_cmd->add_option("--dev", stats_dev, "Development candidates")->check(CLI::ExistingFile);
  stats_cmd->add_option("--test", stats_test, "Test candidates")->check(CLI::ExistingFile);

  // train
  TrainFlags train_flags;
  std::string train_candidates, train_sparse, train_tag_map, train_out;
  auto* train_cmd = app.add_subcommand("train", "Fit the feature space and train one-vs-all FMs");
  train_cmd->add_option("--train", train_candidates, "Training candidates file")
      ->check(CLI::ExistingFile);
  auto* sparse_opt = train_cmd->add_option("--sparse", train_sparse, "Multiclass sparse text input")
                         ->check(CLI::ExistingFile);
  train_cmd->add_option("--tag-map", train_tag_map, "Tag map for --sparse")
      ->check(CLI::ExistingFile)
      ->needs(sparse_opt);
  train_cmd->add_option("--out", train_out, "Output directory")->required();
  add_train_flags(train_cmd, train_flags);

  // predict / eval / pr-curve share model inputs
  cli::ModelInputs inputs;
  auto add_model_inputs = [&inputs](CLI::App* cmd) {
    cmd->add_option("--model", inputs.model, "FMOVA model file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--space", inputs.space, "Feature-space file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--test", inputs.candidates, "Candidates to classify")
        ->required()
        ->check(CLI::ExistingFile);
  };

  std::string predict_out;
  auto* predict_cmd = app.add_subcommand("predict", "Write per-candidate predictions and scores");
  add_model_inputs(predict_cmd);
  predict_cmd->add_option("--out", predict_out, "Output TSV")->required();

  std::string eval_out;
  bool eval_curves = false;
  auto* eval_cmd = app.add_subcommand("eval", "Precision/recall/F1 report and confusion matrix");
  add_model_inputs(eval_cmd);
  eval_cmd->add_option("--out", eval_out, "Output directory")->required();
  eval_cmd->add_flag("--pr-curves", eval_curves, "Also write per-tag precision-recall curves");

  std::string curve_out, curve_tag;
  auto* curve_cmd = app.add_subcommand("pr-curve", "Per-tag precision-recall curves");
  add_model_inputs(curve_cmd);
  curve_cmd->add_option("--tag", curve_tag, "Single tag (default: every non-O label)");
  curve_cmd->add_option("--out", curve_out, "Output directory")->required();

  // sweep-k
  TrainFlags sweep_flags;
  cli::SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-k", "Dev-set micro F1 as a function of k");
  sweep_cmd->add_option("--train", sweep.train, "Training candidates")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--dev", sweep.dev, "Development candidates")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--k-values", sweep.k_values, "Comma-separated k values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out_file, "Output two-column file")->required();
  add_train_flags(sweep_cmd, sweep_flags);

  // export-sparse
  std::string export_space, export_candidates, export_out, export_map;
  auto* export_cmd =
      app.add_subcommand("export-sparse", "Vectorize candidates into sparse text + tag map");
  export_cmd->add_option("--space", export_space, "Feature-space file")
      ->required()
      ->check(CLI::ExistingFile);
  export_cmd->add_option("--test", export_candidates, "Candidates file")
      ->required()
      ->check(CLI::ExistingFile);
  export_cmd->add_option("--out", export_out, "Sparse text output")->required();
  export_cmd->add_option("--tag-map", export_map, "Tag map output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*prepare_cmd) {
      prepare.dev = optional_path(prepare_dev);
      prepare.test = optional_path(prepare_test);
      cli::run_prepare(prepare, std::cout);
    } else if (*stats_cmd) {
      std::vector<std::pair<std::string, std::filesystem::path>> splits;
      for (const auto& [name, path] : {std::pair{"training", stats_train},
                                       std::pair{"development", stats_dev},
                                       std::pair{"test", stats_test}}) {
        if (!path.empty()) {
          splits.emplace_back(name, path);
        }
      }
      if (splits.empty()) {
        throw fmner::ConfigError("stats needs at least one of --train/--dev/--test");
      }
      cli::run_stats(splits, std::cout);
    } else if (*train_cmd) {
      cli::TrainOptions options;
      options.candidates = optional_path(train_candidates);
      options.sparse = optional_path(train_sparse);
      options.tag_map = optional_path(train_tag_map);
      options.config = train_flags.resolve();
      options.out_dir = train_out;
      cli::run_train(options, std::cerr);
    } else if (*predict_cmd) {
      cli::run_predict(inputs, predict_out);
    } else if (*eval_cmd) {
      cli::run_eval(inputs, eval_out, eval_curves, std::cout);
    } else if (*curve_cmd) {
      cli::run_pr_curve(inputs, curve_tag.empty() ? std::nullopt : std::optional(curve_tag),
                        curve_out);
    } else if (*sweep_cmd) {
      sweep.config = sweep_flags.resolve();
      cli::run_sweep_k(sweep, std::cout);
    } else if (*export_cmd) {
      cli::run_export_sparse(export_space, export_candidates, export_out, export_map);
    }
  } catch (const fmner::ConfigError& e) {
    std::cerr << "fmner: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fmner::Error& e) {
    std::cerr << "fmner: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
