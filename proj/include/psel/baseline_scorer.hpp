#pragma once

#include "psel/classifier_eval.hpp"
#include "psel/preprocessing.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace psel::baseline {

// Token -> column index, indices contiguous from 0 in first-appearance order.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws Error(kUniqueness) on a repeated token.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  // -1 when absent.
  long index_of(const std::string& token) const;

  bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t> index_;
};

// Tokens occurring at least `min_count` times across the corpus. Throws
// Error(kEmpty) for an empty corpus or an empty result.
Vocabulary fit_vocabulary(const std::vector<std::string>& texts, std::size_t min_count);

// (index, count) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

SparseVector vectorize(const std::string& text, const Vocabulary& vocab);

struct TrainingConfig {
  int epochs = 200;
  double learning_rate = 0.1;
  ClassWeights class_weights;
  std::uint64_t rng_seed = 0;
  // Stop after this many consecutive epochs improving the loss by less than
  // kMinImprovement; 0 disables early stopping.
  int early_stopping_patience = 3;
  std::size_t min_count = 1;

  void validate() const;
};

inline constexpr double kMinImprovement = 1e-9;

struct LinearModel {
  Vocabulary vocabulary;
  std::vector<double> weights;
  double bias = 0.0;
};

// Class-weighted logistic loss over a fixed design matrix:
//   L = (1/N) sum_i w_{y_i} log(1 + exp(-s_i (theta . x_i + b))),  s_i = 2 y_i - 1.
// Parameters are laid out as [theta..., b].
class WeightedLogisticObjective {
 public:
  WeightedLogisticObjective(std::vector<SparseVector> rows, std::vector<BinaryLabel> labels,
                            ClassWeights class_weights, std::size_t dimension);

  std::size_t parameter_count() const { return dimension_ + 1; }
  double loss(const std::vector<double>& params) const;
  std::vector<double> gradient(const std::vector<double>& params) const;

 private:
  double margin(std::size_t i, const std::vector<double>& params) const;

  std::vector<SparseVector> rows_;
  std::vector<BinaryLabel> labels_;
  ClassWeights class_weights_;
  std::size_t dimension_;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double learning_rate = 0.0;
};

struct TrainingResult {
  LinearModel model;
  std::vector<EpochRecord> history;  // one record per accepted step
  bool stopped_early = false;
};

// Full-batch gradient descent from zero parameters. A step that would raise
// the loss is rejected and retried with half the learning rate, so the loss is
// non-increasing across accepted steps.
TrainingResult train(const LabeledRows& rows, const TrainingConfig& config);

double predict_proba(const LinearModel& model, const std::string& text);
double predict_proba(const LinearModel& model, const SparseVector& x);

// One prediction per row, in row order.
eval::Predictions score_rows(const LinearModel& model, const LabeledRows& rows);

// JSON document with vocabulary, weights, bias and the training config.
void save_model(std::ostream& out, const LinearModel& model, const TrainingConfig& config);
LinearModel load_model(std::istream& in);

}  // namespace psel::baseline
