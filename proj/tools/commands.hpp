#pragma once

#include "psel/preprocessing.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace psel::cli {

// Every pipeline knob. Loaded from the --config JSON document, then
// overridden by command-line flags.
struct RunConfig {
  std::string profiles;
  std::string lexicon;
  std::string encoding;
  std::string train_rows;  // labeled-rows file, default <out>/train.csv
  std::string test_rows;   // labeled-rows file, default <out>/test.csv
  std::vector<std::string> score_files;
  std::string output_dir = "out";

  std::vector<std::string> criteria = {"experience_years", "education", "skills", "about"};
  std::vector<double> weights;          // empty: equal weights
  std::vector<std::string> directions;  // empty: all benefit
  std::string validate_against = "score";  // score | rank

  double split_fraction = 0.8;
  double replacement_fraction = 0.5;
  bool augment_before_split = false;
  bool balance = true;

  std::optional<double> threshold;
  std::uint64_t seed = 42;

  int epochs = 200;
  double learning_rate = 0.1;
  int patience = 3;
  std::size_t min_count = 1;

  std::map<std::string, std::uint64_t> parameter_counts;

  // Throws Error(kRange) on an invalid combination of values.
  void validate() const;
};

// Reads a JSON config document; unknown keys are rejected.
RunConfig load_run_config(const std::string& path);

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_preprocess(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_train_baseline(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace psel::cli
