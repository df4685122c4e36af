#pragma once

#include "psel/matrix.hpp"

#include <string>
#include <vector>

namespace psel::topsis {

// m candidates x n criteria, m >= 2, n >= 1, all entries finite.
class DecisionMatrix {
 public:
  DecisionMatrix(Matrix entries, std::vector<std::string> criterion_names,
                 std::vector<std::string> candidate_ids);

  // Names "c0..", ids "a0.." for quick construction.
  static DecisionMatrix from_rows(const std::vector<std::vector<double>>& rows);

  const Matrix& entries() const { return entries_; }
  const std::vector<std::string>& criterion_names() const { return criterion_names_; }
  const std::vector<std::string>& candidate_ids() const { return candidate_ids_; }
  std::size_t candidates() const { return entries_.rows(); }
  std::size_t criteria() const { return entries_.cols(); }

 private:
  Matrix entries_;
  std::vector<std::string> criterion_names_;
  std::vector<std::string> candidate_ids_;
};

// Non-negative weights with a positive sum; normalized() sums to 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);
  static WeightVector equal(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

  std::size_t size() const { return raw_.size(); }
  const std::vector<double>& raw() const { return raw_; }
  const std::vector<double>& normalized() const { return normalized_; }

 private:
  std::vector<double> raw_;
  std::vector<double> normalized_;
};

enum class Direction { kBenefit, kCost };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);  // "benefit" | "cost"

struct IdealPoints {
  std::vector<double> best;   // A+
  std::vector<double> worst;  // A-
};

struct ClosenessResult {
  std::vector<std::string> candidate_ids;
  std::vector<double> s_plus;
  std::vector<double> s_minus;
  std::vector<double> closeness;
  std::vector<std::size_t> ranking;  // candidate indices, best first
};

// r_ij = x_ij / ||x_.j||. Throws Error(kDegenerate) naming an all-zero criterion.
Matrix normalize_matrix(const DecisionMatrix& d);

// v_ij = w_j * r_ij with w normalized to sum 1.
Matrix apply_weights(const Matrix& normalized, const WeightVector& weights);

IdealPoints ideal_points(const Matrix& weighted, const std::vector<Direction>& directions);

struct Separation {
  std::vector<double> s_plus;
  std::vector<double> s_minus;
};

Separation separation_distances(const Matrix& weighted, const IdealPoints& ideals);

// C_i = S-_i / (S+_i + S-_i), ranked by descending C with ties going to the
// lower index. Throws Error(kDegenerate) if any S+ + S- is zero.
ClosenessResult closeness_and_rank(const std::vector<double>& s_plus,
                                   const std::vector<double>& s_minus,
                                   const std::vector<std::string>& candidate_ids);

ClosenessResult topsis(const DecisionMatrix& d, const WeightVector& weights,
                       const std::vector<Direction>& directions);

}  // namespace psel::topsis
