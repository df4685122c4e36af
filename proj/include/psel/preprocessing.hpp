#pragma once

#include "psel/profile_model.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace psel {

enum class BinaryLabel : int { kNegative = 0, kPositive = 1 };

inline int to_int(BinaryLabel label) { return static_cast<int>(label); }
// Throws Error(kRange) for anything other than 0 or 1.
BinaryLabel label_from_int(int value);

// Expert scores 0-2 are unsuitable, 3-5 suitable.
BinaryLabel map_score_to_label(int overall_score);

// Lowercase word -> synonyms, each synonym a single token.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  // Keys are lowercased. Throws Error(kParse) on an empty synonym list, a
  // multi-token synonym, or a word whose only synonym is itself.
  explicit SynonymLexicon(std::map<std::string, std::vector<std::string>> entries);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  // nullptr when `lowercase_word` is not covered.
  const std::vector<std::string>* find(const std::string& lowercase_word) const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

// `word<TAB>syn1;syn2;...` per line, '#' starts a comment line.
SynonymLexicon load_lexicon(std::istream& in);

struct AugmentationConfig {
  double replacement_fraction = 0.5;  // in (0, 1]
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Replaces ceil(fraction * k) of the k lexicon-covered tokens of `text` with a
// synonym. Everything outside the replaced tokens is copied byte for byte.
std::string augment_with_synonyms(const std::string& text, const SynonymLexicon& lexicon,
                                  const AugmentationConfig& config);

struct LabeledRow {
  CandidateProfile profile;
  BinaryLabel label = BinaryLabel::kNegative;

  bool operator==(const LabeledRow&) const = default;
};

using LabeledRows = std::vector<LabeledRow>;

// Applies map_score_to_label to every profile.
LabeledRows label_dataset(const Dataset& dataset);

// Text seen by scorers: education, skills, about and job title joined by spaces.
std::string row_text(const CandidateProfile& profile);

// Original rows followed by one synonym variant per row (id suffixed "+syn").
// Each variant draws from a generator seeded by (config.rng_seed, row index).
LabeledRows augment_dataset(const LabeledRows& rows, const SynonymLexicon& lexicon,
                            const AugmentationConfig& config);

// Appends minority-class duplicates drawn with replacement until both classes
// match the majority count. Duplicates carry the id suffix "+dup<k>".
LabeledRows balance_classes(const LabeledRows& rows, std::uint64_t rng_seed);

struct Split {
  LabeledRows train;
  LabeledRows test;
};

// |train| = round(train_fraction * N) after a seeded shuffle.
Split train_test_split(const LabeledRows& rows, double train_fraction, std::uint64_t rng_seed);

struct ClassWeights {
  double negative = 1.0;
  double positive = 1.0;

  double operator[](BinaryLabel label) const {
    return label == BinaryLabel::kPositive ? positive : negative;
  }
};

// weight(c) = N / (2 * n_c)
ClassWeights compute_class_weights(const std::vector<BinaryLabel>& labels);

std::pair<std::size_t, std::size_t> class_counts(const LabeledRows& rows);  // {negatives, positives}

// Profile columns plus `label`.
void write_labeled_rows(std::ostream& out, const LabeledRows& rows);
LabeledRows load_labeled_rows(std::istream& in);

}  // namespace psel
