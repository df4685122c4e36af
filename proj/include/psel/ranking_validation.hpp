#pragma once

#include <optional>
#include <string>
#include <vector>

namespace psel::validation {

// Predicted and reference (expert) values in the same candidate order.
class ScorePair {
 public:
  // Throws Error(kEmpty) when empty, kShape on length mismatch, kRange on
  // non-finite values.
  ScorePair(std::vector<double> predicted, std::vector<double> reference);

  const std::vector<double>& predicted() const { return predicted_; }
  const std::vector<double>& reference() const { return reference_; }
  std::size_t size() const { return predicted_.size(); }

 private:
  std::vector<double> predicted_;
  std::vector<double> reference_;
};

double rmse(const ScorePair& pair);
double mae(const ScorePair& pair);
// Percent, anchored on the reference. Throws Error(kDivision) naming the
// first zero reference index.
double mape(const ScorePair& pair);
double manhattan_distance(const ScorePair& pair);
// Throws Error(kDivision) if either vector has zero norm.
double cosine_similarity(const ScorePair& pair);
// rmse / (max(reference) - min(reference)). Throws Error(kDegenerate) on a
// constant reference.
double normalized_rmse(const ScorePair& pair);

struct MetricValue {
  std::string name;
  std::optional<double> value;
  std::string unavailable_reason;  // set when value is empty
};

// The six metrics in a fixed order: rmse, mae, mape, manhattan, cosine, nrmse.
// A metric whose precondition fails is recorded as unavailable.
struct ValidationReport {
  std::vector<MetricValue> metrics;

  const MetricValue& at(const std::string& name) const;
};

ValidationReport validation_report(const ScorePair& pair);

// Declared definitions written alongside the metric values.
inline constexpr const char* kNrmseDivisor = "max(reference) - min(reference)";
inline constexpr const char* kMapeAnchor = "reference, percent";

}  // namespace psel::validation
