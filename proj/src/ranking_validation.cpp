#include "psel/ranking_validation.hpp"

#include "psel/error.hpp"

#include <algorithm>
#include <cmath>

namespace psel::validation {

ScorePair::ScorePair(std::vector<double> predicted, std::vector<double> reference)
    : predicted_(std::move(predicted)), reference_(std::move(reference)) {
  if (predicted_.empty() && reference_.empty()) throw Error(ErrorKind::kEmpty, "empty score pair");
  if (predicted_.size() != reference_.size()) {
    throw Error(ErrorKind::kShape, "predicted and reference vectors differ in length");
  }
  for (std::size_t i = 0; i < predicted_.size(); ++i) {
    if (!std::isfinite(predicted_[i]) || !std::isfinite(reference_[i])) {
      throw Error(ErrorKind::kRange, "non-finite value at index " + std::to_string(i));
    }
  }
}

namespace {

double sum_abs_diff(const ScorePair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) s += std::abs(pair.predicted()[i] - pair.reference()[i]);
  return s;
}

}  // namespace

double rmse(const ScorePair& pair) {
  double ss = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double d = pair.predicted()[i] - pair.reference()[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(pair.size()));
}

double mae(const ScorePair& pair) { return sum_abs_diff(pair) / static_cast<double>(pair.size()); }

double mape(const ScorePair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double r = pair.reference()[i];
    if (r == 0.0) {
      throw Error(ErrorKind::kDivision, "reference value at index " + std::to_string(i) + " is zero");
    }
    s += std::abs(pair.predicted()[i] - r) / std::abs(r);
  }
  return 100.0 * s / static_cast<double>(pair.size());
}

double manhattan_distance(const ScorePair& pair) { return sum_abs_diff(pair); }

double cosine_similarity(const ScorePair& pair) {
  double dot = 0.0, pp = 0.0, rr = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.predicted()[i], r = pair.reference()[i];
    dot += p * r;
    pp += p * p;
    rr += r * r;
  }
  if (pp == 0.0) throw Error(ErrorKind::kDivision, "predicted vector has zero norm");
  if (rr == 0.0) throw Error(ErrorKind::kDivision, "reference vector has zero norm");
  return std::clamp(dot / (std::sqrt(pp) * std::sqrt(rr)), -1.0, 1.0);
}

double normalized_rmse(const ScorePair& pair) {
  const auto [lo, hi] = std::minmax_element(pair.reference().begin(), pair.reference().end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw Error(ErrorKind::kDegenerate, "reference vector is constant");
  return rmse(pair) / range;
}

const MetricValue& ValidationReport::at(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw Error(ErrorKind::kSchema, "no metric named '" + name + "'");
}

ValidationReport validation_report(const ScorePair& pair) {
  using Fn = double (*)(const ScorePair&);
  static const std::pair<const char*, Fn> kMetrics[] = {
      {"rmse", rmse},
      {"mae", mae},
      {"mape", mape},
      {"manhattan", manhattan_distance},
      {"cosine", cosine_similarity},
      {"nrmse", normalized_rmse},
  };
  ValidationReport report;
  for (const auto& [name, fn] : kMetrics) {
    MetricValue mv{name, std::nullopt, {}};
    try {
      mv.value = fn(pair);
    } catch (const Error& e) {
      mv.unavailable_reason = e.what();
    }
    report.metrics.push_back(std::move(mv));
  }
  return report;
}

}  // namespace psel::validation
