#include "psel/classifier_eval.hpp"

#include "psel/csv.hpp"
#include "psel/error.hpp"
#include "psel/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace psel::eval {

// ---------------------------------------------------------------------------
// Score file

namespace {

struct ParsedScores {
  Predictions preds;
  std::vector<std::string> violations;
};

ParsedScores parse_scores(std::istream& in) {
  ParsedScores out;
  csv::Table table;
  try {
    table = csv::read(in);
  } catch (const Error& e) {
    out.violations.push_back(e.what());
    return out;
  }
  if (table.header != csv::Record{"id", "probability", "true_label"}) {
    out.violations.push_back("line 1: header must be exactly 'id,probability,true_label'");
    return out;
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "line " + std::to_string(table.lines[r]) + ": ";
    ScoredPrediction p;
    p.id = text::trim(row[0]);
    bool ok = true;
    if (p.id.empty()) {
      out.violations.push_back(where + "empty id");
      ok = false;
    }
    const std::string prob = text::trim(row[1]);
    const auto res = std::from_chars(prob.data(), prob.data() + prob.size(), p.probability);
    if (prob.empty() || res.ec != std::errc() || res.ptr != prob.data() + prob.size()) {
      out.violations.push_back(where + "probability '" + row[1] + "' is not a number");
      ok = false;
    } else if (!(p.probability >= 0.0 && p.probability <= 1.0)) {
      out.violations.push_back(where + "probability " + prob + " outside [0, 1]");
      ok = false;
    }
    const std::string label = text::trim(row[2]);
    if (label == "0" || label == "1") {
      p.true_label = label == "1" ? BinaryLabel::kPositive : BinaryLabel::kNegative;
    } else {
      out.violations.push_back(where + "true_label must be 0 or 1, got '" + row[2] + "'");
      ok = false;
    }
    if (ok) out.preds.push_back(std::move(p));
  }
  if (out.violations.empty() && out.preds.empty()) out.violations.push_back("score file has no rows");
  return out;
}

}  // namespace

Predictions load_score_file(std::istream& in) {
  auto parsed = parse_scores(in);
  if (!parsed.violations.empty()) throw Error(ErrorKind::kContract, parsed.violations.front());
  return std::move(parsed.preds);
}

std::vector<std::string> check_score_file(std::istream& in) { return parse_scores(in).violations; }

void write_score_file(std::ostream& out, const Predictions& preds) {
  csv::write_record(out, {"id", "probability", "true_label"});
  for (const auto& p : preds) {
    csv::write_record(out, {p.id, text::format_double(p.probability), std::to_string(to_int(p.true_label))});
  }
}

// ---------------------------------------------------------------------------
// Fixed-threshold metrics

ConfusionMatrix confusion_matrix(const Predictions& preds, double threshold) {
  if (preds.empty()) throw Error(ErrorKind::kEmpty, "no predictions");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::kRange, "threshold must lie in [0, 1]");
  }
  ConfusionMatrix cm;
  for (const auto& p : preds) {
    const bool called = p.probability >= threshold;
    const bool actual = p.true_label == BinaryLabel::kPositive;
    if (called && actual) ++cm.tp;
    else if (called) ++cm.fp;
    else if (actual) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::size_t correct, std::size_t called, std::size_t support) {
  ClassMetrics m;
  m.precision = ratio(correct, called);
  m.recall = ratio(correct, support);
  m.f1 = ratio(2 * correct, called + support);  // 2PR/(P+R) in count form
  m.support = support;
  return m;
}

}  // namespace

ClassificationReport classification_report(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorKind::kEmpty, "empty confusion matrix");
  ClassificationReport r;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  r.positive = class_metrics(cm.tp, cm.tp + cm.fp, cm.tp + cm.fn);
  r.negative = class_metrics(cm.tn, cm.tn + cm.fn, cm.tn + cm.fp);
  const double n = static_cast<double>(cm.total());
  const double wp = static_cast<double>(r.positive.support) / n;
  const double wn = static_cast<double>(r.negative.support) / n;
  r.weighted_precision = wp * r.positive.precision + wn * r.negative.precision;
  r.weighted_f1 = wp * r.positive.f1 + wn * r.negative.f1;
  // Support-weighted recall reduces to (tp + tn) / N.
  r.weighted_recall = r.accuracy;
  return r;
}

// ---------------------------------------------------------------------------
// ROC

RocCurve roc_curve(const Predictions& preds) {
  RocCurve curve;
  for (const auto& p : preds) {
    if (p.true_label == BinaryLabel::kPositive) ++curve.positives;
    else ++curve.negatives;
  }
  if (curve.positives == 0 || curve.negatives == 0) {
    throw Error(ErrorKind::kDegenerate, "ROC needs both classes present (positives=" +
                                            std::to_string(curve.positives) + ", negatives=" +
                                            std::to_string(curve.negatives) + ")");
  }

  std::vector<std::pair<double, bool>> sorted;
  sorted.reserve(preds.size());
  for (const auto& p : preds) sorted.emplace_back(p.probability, p.true_label == BinaryLabel::kPositive);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  const double pos = static_cast<double>(curve.positives);
  const double neg = static_cast<double>(curve.negatives);
  curve.points.push_back({0.0, 0.0, kAboveMaxThreshold, 0, 0});
  std::size_t tp = 0, fp = 0;
  // Twice the area in units of 1/(P*N); exact in integers.
  unsigned long long doubled_area = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double value = sorted[i].first;
    const std::size_t prev_tp = tp, prev_fp = fp;
    for (; i < sorted.size() && sorted[i].first == value; ++i) {
      if (sorted[i].second) ++tp;
      else ++fp;
    }
    doubled_area += static_cast<unsigned long long>(fp - prev_fp) * (tp + prev_tp);
    curve.points.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos, value, tp, fp});
  }
  curve.auc = static_cast<double>(doubled_area) / (2.0 * pos * neg);
  return curve;
}

ThresholdSearchResult optimal_threshold(const RocCurve& curve) {
  const auto p = static_cast<long long>(curve.positives);
  const auto n = static_cast<long long>(curve.negatives);
  if (p == 0 || n == 0) throw Error(ErrorKind::kDegenerate, "ROC curve without both classes");

  const RocPoint* best = nullptr;
  long long best_score = 0;
  // Points run from high to low threshold, so a strict improvement test keeps
  // the larger threshold on ties. J * P * N = tp * N - fp * P.
  for (const auto& pt : curve.points) {
    if (!std::isfinite(pt.threshold)) continue;
    const long long score = static_cast<long long>(pt.tp) * n - static_cast<long long>(pt.fp) * p;
    if (!best || score > best_score) {
      best = &pt;
      best_score = score;
    }
  }
  if (!best) throw Error(ErrorKind::kDegenerate, "ROC curve has no finite thresholds");

  ThresholdSearchResult r;
  r.threshold = best->threshold;
  r.sensitivity = best->tpr;
  r.specificity = 1.0 - best->fpr;
  r.youden_j = r.sensitivity + r.specificity - 1.0;
  return r;
}

void write_roc_points(std::ostream& out, const RocCurve& curve) {
  csv::write_record(out, {"fpr", "tpr", "threshold"});
  for (const auto& pt : curve.points) {
    csv::write_record(out, {text::format_double(pt.fpr), text::format_double(pt.tpr),
                            std::isfinite(pt.threshold) ? text::format_double(pt.threshold) : "inf"});
  }
}

const char* to_string(ThresholdSource source) {
  switch (source) {
    case ThresholdSource::kOverride: return "override";
    case ThresholdSource::kYoudenOptimal: return "youden-optimal";
    case ThresholdSource::kDefault: return "default";
  }
  return "default";
}

Evaluation evaluate(const Predictions& preds, std::optional<double> threshold_override) {
  if (preds.empty()) throw Error(ErrorKind::kEmpty, "no predictions");
  Evaluation ev;
  try {
    ev.roc = roc_curve(preds);
    ev.youden = optimal_threshold(*ev.roc);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate) throw;
    ev.roc_skipped_reason = e.what();
  }
  if (threshold_override) {
    ev.threshold = *threshold_override;
    ev.threshold_source = ThresholdSource::kOverride;
  } else if (ev.youden) {
    ev.threshold = ev.youden->threshold;
    ev.threshold_source = ThresholdSource::kYoudenOptimal;
  } else {
    ev.threshold = kDefaultThreshold;
    ev.threshold_source = ThresholdSource::kDefault;
  }
  ev.confusion = confusion_matrix(preds, ev.threshold);
  ev.report = classification_report(ev.confusion);
  return ev;
}

std::vector<ComparisonRow> compare_models(const std::vector<ModelEntry>& models) {
  if (models.empty()) throw Error(ErrorKind::kEmpty, "no models to compare");
  std::vector<ComparisonRow> rows;
  for (const auto& m : models) {
    rows.push_back({m.name, m.report.accuracy, m.report.weighted_f1, m.report.weighted_precision,
                    m.report.weighted_recall, m.threshold.threshold, m.parameter_count});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    return a.weighted_f1 > b.weighted_f1;
  });
  return rows;
}

}  // namespace psel::eval
