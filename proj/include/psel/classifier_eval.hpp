#pragma once

#include "psel/preprocessing.hpp"

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace psel::eval {

struct ScoredPrediction {
  std::string id;
  double probability = 0.0;  // in [0, 1]
  BinaryLabel true_label = BinaryLabel::kNegative;
};

using Predictions = std::vector<ScoredPrediction>;

// Score file: header `id,probability,true_label`. Every violation is reported
// with its line number; the first one is thrown as Error(kContract).
Predictions load_score_file(std::istream& in);
// All contract violations of a score file, empty when it is valid.
std::vector<std::string> check_score_file(std::istream& in);
void write_score_file(std::ostream& out, const Predictions& preds);

struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// probability >= threshold counts as a positive call.
ConfusionMatrix confusion_matrix(const Predictions& preds, double threshold);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

// Ratios with a zero denominator are 0. Weighted averages use class support.
struct ClassificationReport {
  double accuracy = 0.0;
  ClassMetrics negative;
  ClassMetrics positive;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
};

ClassificationReport classification_report(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // +inf for the (0,0) sentinel
  std::size_t tp = 0;
  std::size_t fp = 0;
};

// Points in descending-threshold order, which is ascending (fpr, tpr).
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

inline constexpr double kAboveMaxThreshold = std::numeric_limits<double>::infinity();

// One point per distinct probability plus the (0,0) sentinel above the
// maximum; the lowest distinct probability yields (1,1). AUC is the
// trapezoid area, computed from integer counts. Throws Error(kDegenerate)
// when only one class is present.
RocCurve roc_curve(const Predictions& preds);

struct ThresholdSearchResult {
  double threshold = 0.0;
  double youden_j = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
};

// Maximizes Youden's J over the finite-threshold points; ties go to the
// larger threshold.
ThresholdSearchResult optimal_threshold(const RocCurve& curve);

void write_roc_points(std::ostream& out, const RocCurve& curve);

enum class ThresholdSource { kOverride, kYoudenOptimal, kDefault };
const char* to_string(ThresholdSource source);

inline constexpr double kDefaultThreshold = 0.5;

// Confusion matrix and report at the override threshold, else at the
// Youden-optimal one. With a single class present the ROC is skipped and the
// override (or kDefaultThreshold) is used.
struct Evaluation {
  double threshold = 0.0;
  ThresholdSource threshold_source = ThresholdSource::kDefault;
  ConfusionMatrix confusion;
  ClassificationReport report;
  std::optional<RocCurve> roc;
  std::optional<ThresholdSearchResult> youden;
  std::string roc_skipped_reason;
};

Evaluation evaluate(const Predictions& preds, std::optional<double> threshold_override);

struct ModelEntry {
  std::string name;
  ClassificationReport report;
  ThresholdSearchResult threshold;
  std::optional<std::uint64_t> parameter_count;
};

struct ComparisonRow {
  std::string name;
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double threshold = 0.0;
  std::optional<std::uint64_t> parameter_count;
};

// Rows by descending accuracy, then descending weighted F1; input order on ties.
std::vector<ComparisonRow> compare_models(const std::vector<ModelEntry>& models);

}  // namespace psel::eval
