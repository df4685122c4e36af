#include "psel/baseline_scorer.hpp"

#include "psel/error.hpp"
#include "psel/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace psel::baseline {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error(ErrorKind::kUniqueness, "vocabulary token '" + tokens_[i] + "' repeated");
    }
  }
}

long Vocabulary::index_of(const std::string& token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

Vocabulary fit_vocabulary(const std::vector<std::string>& texts, std::size_t min_count) {
  if (texts.empty()) throw Error(ErrorKind::kEmpty, "empty corpus");
  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (auto& token : text::tokenize(t)) {
      if (counts[token]++ == 0) order.push_back(std::move(token));
    }
  }
  std::vector<std::string> kept;
  for (auto& token : order) {
    if (counts[token] >= min_count) kept.push_back(std::move(token));
  }
  if (kept.empty()) {
    throw Error(ErrorKind::kEmpty, "no token occurs at least " + std::to_string(min_count) + " times");
  }
  return Vocabulary(std::move(kept));
}

SparseVector vectorize(const std::string& input, const Vocabulary& vocab) {
  std::map<std::size_t, double> counts;
  for (const auto& token : text::tokenize(input)) {
    const long idx = vocab.index_of(token);
    if (idx >= 0) counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  return {counts.begin(), counts.end()};
}

void TrainingConfig::validate() const {
  if (epochs < 1) throw Error(ErrorKind::kRange, "epochs must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorKind::kRange, "learning rate must be positive");
  }
  if (early_stopping_patience < 0) throw Error(ErrorKind::kRange, "patience must be non-negative");
  if (!(class_weights.negative > 0.0 && class_weights.positive > 0.0) ||
      !std::isfinite(class_weights.negative) || !std::isfinite(class_weights.positive)) {
    throw Error(ErrorKind::kRange, "class weights must be positive and finite");
  }
}

// ---------------------------------------------------------------------------
// Objective

namespace {

// log(1 + exp(-z)) without overflow.
double softplus_neg(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double sign_of(BinaryLabel y) { return y == BinaryLabel::kPositive ? 1.0 : -1.0; }

}  // namespace

WeightedLogisticObjective::WeightedLogisticObjective(std::vector<SparseVector> rows,
                                                     std::vector<BinaryLabel> labels,
                                                     ClassWeights class_weights,
                                                     std::size_t dimension)
    : rows_(std::move(rows)),
      labels_(std::move(labels)),
      class_weights_(class_weights),
      dimension_(dimension) {
  if (rows_.size() != labels_.size()) throw Error(ErrorKind::kShape, "rows and labels differ in length");
  if (rows_.empty()) throw Error(ErrorKind::kEmpty, "no training rows");
}

double WeightedLogisticObjective::margin(std::size_t i, const std::vector<double>& params) const {
  double f = params[dimension_];
  for (const auto& [idx, count] : rows_[i]) f += params[idx] * count;
  return sign_of(labels_[i]) * f;
}

double WeightedLogisticObjective::loss(const std::vector<double>& params) const {
  double total = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    total += class_weights_[labels_[i]] * softplus_neg(margin(i, params));
  }
  return total / static_cast<double>(rows_.size());
}

std::vector<double> WeightedLogisticObjective::gradient(const std::vector<double>& params) const {
  std::vector<double> grad(parameter_count(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    // d/df of w * log(1 + exp(-s f)) = -w * s * sigmoid(-s f)
    const double s = sign_of(labels_[i]);
    const double coef = -class_weights_[labels_[i]] * s * sigmoid(-margin(i, params));
    for (const auto& [idx, count] : rows_[i]) grad[idx] += coef * count;
    grad[dimension_] += coef;
  }
  for (auto& g : grad) g *= inv_n;
  return grad;
}

// ---------------------------------------------------------------------------
// Training

TrainingResult train(const LabeledRows& rows, const TrainingConfig& config) {
  config.validate();
  const auto [neg, pos] = class_counts(rows);
  if (neg == 0 || pos == 0) {
    throw Error(ErrorKind::kBalance, "training needs both classes present");
  }

  std::vector<std::string> texts;
  std::vector<BinaryLabel> labels;
  for (const auto& r : rows) {
    texts.push_back(row_text(r.profile));
    labels.push_back(r.label);
  }
  Vocabulary vocab = fit_vocabulary(texts, config.min_count);
  std::vector<SparseVector> xs;
  for (const auto& t : texts) xs.push_back(vectorize(t, vocab));

  const WeightedLogisticObjective objective(std::move(xs), std::move(labels), config.class_weights,
                                            vocab.size());
  std::vector<double> params(objective.parameter_count(), 0.0);
  double loss = objective.loss(params);
  double lr = config.learning_rate;

  TrainingResult result;
  int stalled = 0;
  std::vector<double> candidate(params.size());
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto grad = objective.gradient(params);
    double next_loss = loss;
    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (std::size_t k = 0; k < params.size(); ++k) candidate[k] = params[k] - lr * grad[k];
      next_loss = objective.loss(candidate);
      if (next_loss <= loss) {
        accepted = true;
        break;
      }
      lr *= 0.5;
    }
    if (!accepted) break;  // no descent direction left at machine precision

    const double improvement = loss - next_loss;
    params.swap(candidate);
    loss = next_loss;
    result.history.push_back({epoch, loss, lr});

    stalled = improvement < kMinImprovement ? stalled + 1 : 0;
    if (config.early_stopping_patience > 0 && stalled >= config.early_stopping_patience) {
      result.stopped_early = true;
      break;
    }
  }

  result.model.bias = params.back();
  params.pop_back();
  result.model.weights = std::move(params);
  result.model.vocabulary = std::move(vocab);
  return result;
}

double predict_proba(const LinearModel& model, const SparseVector& x) {
  double f = model.bias;
  for (const auto& [idx, count] : x) f += model.weights[idx] * count;
  // Clamp keeps the result strictly inside (0, 1) for extreme scores.
  constexpr double kEps = 1e-15;
  return std::clamp(sigmoid(f), kEps, 1.0 - kEps);
}

double predict_proba(const LinearModel& model, const std::string& input) {
  return predict_proba(model, vectorize(input, model.vocabulary));
}

eval::Predictions score_rows(const LinearModel& model, const LabeledRows& rows) {
  eval::Predictions preds;
  preds.reserve(rows.size());
  for (const auto& r : rows) {
    preds.push_back({r.profile.id, predict_proba(model, row_text(r.profile)), r.label});
  }
  return preds;
}

// ---------------------------------------------------------------------------
// Persistence

void save_model(std::ostream& out, const LinearModel& model, const TrainingConfig& config) {
  nlohmann::ordered_json doc;
  doc["model"] = "class-weighted logistic regression on token counts";
  doc["tokenization"] = "lowercase, split on non-alphanumeric runs";
  doc["config"] = {
      {"epochs", config.epochs},
      {"learning_rate", config.learning_rate},
      {"class_weights", {{"0", config.class_weights.negative}, {"1", config.class_weights.positive}}},
      {"rng_seed", config.rng_seed},
      {"early_stopping_patience", config.early_stopping_patience},
      {"min_count", config.min_count},
  };
  doc["bias"] = model.bias;
  doc["vocabulary"] = model.vocabulary.tokens();
  doc["weights"] = model.weights;
  out << doc.dump(2) << '\n';
}

LinearModel load_model(std::istream& in) {
  LinearModel model;
  try {
    const auto doc = nlohmann::json::parse(in);
    model.vocabulary = Vocabulary(doc.at("vocabulary").get<std::vector<std::string>>());
    model.weights = doc.at("weights").get<std::vector<double>>();
    model.bias = doc.at("bias").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("model file: ") + e.what());
  }
  if (model.weights.size() != model.vocabulary.size()) {
    throw Error(ErrorKind::kShape, "model file: weight count does not match vocabulary size");
  }
  for (double w : model.weights) {
    if (!std::isfinite(w)) throw Error(ErrorKind::kRange, "model file: non-finite weight");
  }
  if (!std::isfinite(model.bias)) throw Error(ErrorKind::kRange, "model file: non-finite bias");
  return model;
}

}  // namespace psel::baseline
