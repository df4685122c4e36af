#include "psel/topsis.hpp"

#include "psel/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace psel::topsis {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::kUniqueness, std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

}  // namespace

DecisionMatrix::DecisionMatrix(Matrix entries, std::vector<std::string> criterion_names,
                               std::vector<std::string> candidate_ids)
    : entries_(std::move(entries)),
      criterion_names_(std::move(criterion_names)),
      candidate_ids_(std::move(candidate_ids)) {
  if (entries_.rows() < 2) throw Error(ErrorKind::kShape, "decision matrix needs at least 2 candidates");
  if (entries_.cols() < 1) throw Error(ErrorKind::kShape, "decision matrix needs at least 1 criterion");
  if (criterion_names_.size() != entries_.cols() || candidate_ids_.size() != entries_.rows()) {
    throw Error(ErrorKind::kShape, "decision matrix labels do not match its shape");
  }
  require_unique(criterion_names_, "criterion");
  require_unique(candidate_ids_, "candidate");
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    for (std::size_t j = 0; j < entries_.cols(); ++j) {
      if (!std::isfinite(entries_(i, j))) {
        throw Error(ErrorKind::kRange, "decision matrix entry (" + candidate_ids_[i] + ", " +
                                           criterion_names_[j] + ") is not finite");
      }
    }
  }
}

DecisionMatrix DecisionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  for (const auto& r : rows) {
    if (!rows.empty() && r.size() != rows.front().size()) {
      throw Error(ErrorKind::kShape, "ragged decision matrix rows");
    }
  }
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  std::vector<std::string> names, ids;
  for (std::size_t j = 0; j < n; ++j) names.push_back("c" + std::to_string(j));
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("a" + std::to_string(i));
  return DecisionMatrix(Matrix::from_rows(rows), std::move(names), std::move(ids));
}

WeightVector::WeightVector(std::vector<double> weights) : raw_(std::move(weights)) {
  double sum = 0.0;
  for (double w : raw_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::kRange, "criterion weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw Error(ErrorKind::kRange, "criterion weights must have a positive sum");
  normalized_.reserve(raw_.size());
  for (double w : raw_) normalized_.push_back(w / sum);
}

const char* to_string(Direction d) { return d == Direction::kBenefit ? "benefit" : "cost"; }

Direction direction_from_string(const std::string& s) {
  if (s == "benefit") return Direction::kBenefit;
  if (s == "cost") return Direction::kCost;
  throw Error(ErrorKind::kParse, "criterion direction must be 'benefit' or 'cost', got '" + s + "'");
}

Matrix normalize_matrix(const DecisionMatrix& d) {
  const Matrix& x = d.entries();
  Matrix r(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) ss += x(i, j) * x(i, j);
    if (ss == 0.0) {
      throw Error(ErrorKind::kDegenerate,
                  "criterion '" + d.criterion_names()[j] + "' is zero for every candidate");
    }
    const double norm = std::sqrt(ss);
    for (std::size_t i = 0; i < x.rows(); ++i) r(i, j) = x(i, j) / norm;
  }
  return r;
}

Matrix apply_weights(const Matrix& normalized, const WeightVector& weights) {
  if (weights.size() != normalized.cols()) {
    throw Error(ErrorKind::kShape, "weight vector has " + std::to_string(weights.size()) +
                                       " entries for " + std::to_string(normalized.cols()) +
                                       " criteria");
  }
  const auto& w = weights.normalized();
  Matrix v(normalized.rows(), normalized.cols());
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) = w[j] * normalized(i, j);
  }
  return v;
}

IdealPoints ideal_points(const Matrix& v, const std::vector<Direction>& directions) {
  if (directions.size() != v.cols()) {
    throw Error(ErrorKind::kShape, "direction list has " + std::to_string(directions.size()) +
                                       " entries for " + std::to_string(v.cols()) + " criteria");
  }
  if (v.rows() == 0) throw Error(ErrorKind::kShape, "no candidates");
  IdealPoints ideals;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    double hi = v(0, j), lo = v(0, j);
    for (std::size_t i = 1; i < v.rows(); ++i) {
      hi = std::max(hi, v(i, j));
      lo = std::min(lo, v(i, j));
    }
    const bool benefit = directions[j] == Direction::kBenefit;
    ideals.best.push_back(benefit ? hi : lo);
    ideals.worst.push_back(benefit ? lo : hi);
  }
  return ideals;
}

Separation separation_distances(const Matrix& v, const IdealPoints& ideals) {
  if (ideals.best.size() != v.cols() || ideals.worst.size() != v.cols()) {
    throw Error(ErrorKind::kShape, "ideal points do not match the criteria count");
  }
  Separation s;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    double plus = 0.0, minus = 0.0;
    for (std::size_t j = 0; j < v.cols(); ++j) {
      const double dp = v(i, j) - ideals.best[j];
      const double dm = v(i, j) - ideals.worst[j];
      plus += dp * dp;
      minus += dm * dm;
    }
    s.s_plus.push_back(std::sqrt(plus));
    s.s_minus.push_back(std::sqrt(minus));
  }
  return s;
}

ClosenessResult closeness_and_rank(const std::vector<double>& s_plus,
                                   const std::vector<double>& s_minus,
                                   const std::vector<std::string>& candidate_ids) {
  if (s_plus.size() != s_minus.size() || s_plus.size() != candidate_ids.size()) {
    throw Error(ErrorKind::kShape, "separation vectors and ids differ in length");
  }
  ClosenessResult result;
  result.candidate_ids = candidate_ids;
  result.s_plus = s_plus;
  result.s_minus = s_minus;
  for (std::size_t i = 0; i < s_plus.size(); ++i) {
    const double total = s_plus[i] + s_minus[i];
    if (total == 0.0) {
      throw Error(ErrorKind::kDegenerate,
                  "candidate '" + candidate_ids[i] +
                      "' coincides with both ideal points; all candidates are identical");
    }
    result.closeness.push_back(s_minus[i] / total);
  }
  result.ranking.resize(s_plus.size());
  std::iota(result.ranking.begin(), result.ranking.end(), 0);
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](std::size_t a, std::size_t b) {
    return result.closeness[a] > result.closeness[b];
  });
  return result;
}

ClosenessResult topsis(const DecisionMatrix& d, const WeightVector& weights,
                       const std::vector<Direction>& directions) {
  const Matrix v = apply_weights(normalize_matrix(d), weights);
  const IdealPoints ideals = ideal_points(v, directions);
  const Separation s = separation_distances(v, ideals);
  return closeness_and_rank(s.s_plus, s.s_minus, d.candidate_ids());
}

}  // namespace psel::topsis
