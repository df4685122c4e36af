#include "commands.hpp"

#include "psel/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using psel::cli::RunConfig;

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> profiles, lexicon, encoding, train_rows, test_rows;
  std::vector<std::string> score_files;
  std::optional<std::vector<std::string>> criteria, directions;
  std::optional<std::vector<double>> weights;
  std::optional<std::string> validate_against;
  std::optional<double> split_fraction, replacement_fraction, threshold, learning_rate;
  std::optional<int> epochs, patience;
  std::optional<std::size_t> min_count;
  bool augment_before_split = false;
  bool no_balance = false;
  std::vector<std::string> params;
};

template <typename T>
void apply(const std::optional<T>& flag, T& field) {
  if (flag) field = *flag;
}

RunConfig build_config(const Flags& f) {
  RunConfig c = f.config_path.empty() ? RunConfig{} : psel::cli::load_run_config(f.config_path);
  apply(f.seed, c.seed);
  apply(f.out, c.output_dir);
  apply(f.profiles, c.profiles);
  apply(f.lexicon, c.lexicon);
  apply(f.encoding, c.encoding);
  apply(f.train_rows, c.train_rows);
  apply(f.test_rows, c.test_rows);
  apply(f.criteria, c.criteria);
  apply(f.directions, c.directions);
  apply(f.weights, c.weights);
  apply(f.validate_against, c.validate_against);
  apply(f.split_fraction, c.split_fraction);
  apply(f.replacement_fraction, c.replacement_fraction);
  apply(f.learning_rate, c.learning_rate);
  apply(f.epochs, c.epochs);
  apply(f.patience, c.patience);
  apply(f.min_count, c.min_count);
  if (f.threshold) c.threshold = f.threshold;
  if (!f.score_files.empty()) c.score_files = f.score_files;
  if (f.augment_before_split) c.augment_before_split = true;
  if (f.no_balance) c.balance = false;
  for (const auto& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) {
      throw psel::Error(psel::ErrorKind::kParse, "--params expects NAME=COUNT, got '" + p + "'");
    }
    try {
      c.parameter_counts[p.substr(0, eq)] = std::stoull(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw psel::Error(psel::ErrorKind::kParse, "--params count is not an integer: '" + p + "'");
    }
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch personnel selection: TOPSIS ranking and classifier evaluation"};
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config_path, "JSON run configuration");
  app.add_option("--seed", f.seed, "run seed (all random sub-streams derive from it)");
  app.add_option("--out", f.out, "output directory");

  auto add_profiles = [&](CLI::App* cmd) {
    cmd->add_option("--profiles", f.profiles, "profile CSV file");
  };
  auto add_encoding = [&](CLI::App* cmd) {
    cmd->add_option("--encoding", f.encoding, "encoding config JSON");
  };

  auto* ingest = app.add_subcommand("ingest", "validate a profile file and write the canonical dataset");
  add_profiles(ingest);

  auto* preprocess = app.add_subcommand("preprocess", "label, split, augment and balance");
  add_profiles(preprocess);
  preprocess->add_option("--lexicon", f.lexicon, "synonym lexicon (word<TAB>syn;syn)");
  preprocess->add_option("--split-fraction", f.split_fraction, "training fraction");
  preprocess->add_option("--replacement-fraction", f.replacement_fraction, "fraction of covered tokens replaced");
  preprocess->add_flag("--augment-before-split", f.augment_before_split,
                       "augment and balance the whole dataset, then split");
  preprocess->add_flag("--no-balance", f.no_balance, "skip minority resampling");

  auto* rank = app.add_subcommand("rank", "TOPSIS ranking with validation against expert scores");
  add_profiles(rank);
  add_encoding(rank);
  rank->add_option("--criteria", f.criteria, "feature columns used as criteria");
  rank->add_option("--weights", f.weights, "criterion weights");
  rank->add_option("--directions", f.directions, "benefit|cost per criterion");
  rank->add_option("--validate-against", f.validate_against, "score|rank");

  auto* train = app.add_subcommand("train-baseline", "train the linear scorer and score the test rows");
  train->add_option("--train", f.train_rows, "labeled training rows (default <out>/train.csv)");
  train->add_option("--test", f.test_rows, "labeled test rows (default <out>/test.csv)");
  train->add_option("--epochs", f.epochs);
  train->add_option("--learning-rate", f.learning_rate);
  train->add_option("--patience", f.patience, "early-stopping patience, 0 disables");
  train->add_option("--min-count", f.min_count, "minimum token count for the vocabulary");

  auto* evaluate = app.add_subcommand("evaluate", "confusion matrix, report, ROC and optimal threshold");
  evaluate->add_option("score_file", f.score_files, "score file (id,probability,true_label)");
  evaluate->add_option("--threshold", f.threshold, "fixed threshold instead of the Youden optimum");

  auto* compare = app.add_subcommand("compare", "model comparison table");
  compare->add_option("score_files", f.score_files, "score files, model name = file stem");
  compare->add_option("--threshold", f.threshold, "fixed threshold for every model");
  compare->add_option("--params", f.params, "NAME=COUNT parameter counts");

  auto* report = app.add_subcommand("report", "feature correlation and artifact summary");
  add_profiles(report);
  add_encoding(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : psel::cli::kExitValidation;
  }

  RunConfig config;
  try {
    config = build_config(f);
  } catch (const psel::Error& e) {
    std::cerr << "psel: " << e.what() << '\n';
    return e.kind() == psel::ErrorKind::kIo ? psel::cli::kExitIo : psel::cli::kExitValidation;
  }

  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  const std::map<CLI::App*, Command> commands = {
      {ingest, psel::cli::cmd_ingest},     {preprocess, psel::cli::cmd_preprocess},
      {rank, psel::cli::cmd_rank},         {train, psel::cli::cmd_train_baseline},
      {evaluate, psel::cli::cmd_evaluate}, {compare, psel::cli::cmd_compare},
      {report, psel::cli::cmd_report},
  };
  for (const auto& [cmd, fn] : commands) {
    if (cmd->parsed()) return fn(config, std::cout, std::cerr);
  }
  return psel::cli::kExitValidation;
}
