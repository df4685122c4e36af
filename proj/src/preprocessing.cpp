#include "psel/preprocessing.hpp"

#include "psel/csv.hpp"
#include "psel/error.hpp"
#include "psel/random.hpp"
#include "psel/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace psel {

BinaryLabel label_from_int(int value) {
  if (value == 0) return BinaryLabel::kNegative;
  if (value == 1) return BinaryLabel::kPositive;
  throw Error(ErrorKind::kRange, "label must be 0 or 1, got " + std::to_string(value));
}

BinaryLabel map_score_to_label(int overall_score) {
  if (overall_score < 0 || overall_score > 5) {
    throw Error(ErrorKind::kRange,
                "overall score " + std::to_string(overall_score) + " outside 0-5");
  }
  return overall_score <= 2 ? BinaryLabel::kNegative : BinaryLabel::kPositive;
}

// ---------------------------------------------------------------------------
// Lexicon

SynonymLexicon::SynonymLexicon(std::map<std::string, std::vector<std::string>> entries) {
  for (auto& [word, synonyms] : entries) {
    const std::string key = text::to_lower(text::trim(word));
    if (key.empty() || text::tokenize(key).size() != 1) {
      throw Error(ErrorKind::kParse, "lexicon word '" + word + "' is not a single token");
    }
    if (synonyms.empty()) {
      throw Error(ErrorKind::kParse, "lexicon word '" + key + "' has no synonyms");
    }
    for (const auto& s : synonyms) {
      if (s.empty() || text::token_spans(s).size() != 1 || text::token_spans(s)[0].length != s.size()) {
        throw Error(ErrorKind::kParse,
                    "lexicon word '" + key + "': synonym '" + s + "' is not a single token");
      }
    }
    if (synonyms.size() == 1 && text::to_lower(synonyms[0]) == key) {
      throw Error(ErrorKind::kParse, "lexicon word '" + key + "' lists only itself");
    }
    auto& slot = entries_[key];
    slot.insert(slot.end(), synonyms.begin(), synonyms.end());
  }
}

const std::vector<std::string>* SynonymLexicon::find(const std::string& lowercase_word) const {
  const auto it = entries_.find(lowercase_word);
  return it == entries_.end() ? nullptr : &it->second;
}

SynonymLexicon load_lexicon(std::istream& in) {
  std::map<std::string, std::vector<std::string>> entries;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::kParse,
                  "lexicon line " + std::to_string(line_number) + ": expected word<TAB>synonyms");
    }
    std::vector<std::string> synonyms;
    for (const auto& s : text::split(line.substr(tab + 1), ';')) {
      auto t = text::trim(s);
      if (!t.empty()) synonyms.push_back(std::move(t));
    }
    const std::string word = text::to_lower(text::trim(line.substr(0, tab)));
    if (synonyms.empty()) {
      throw Error(ErrorKind::kParse, "lexicon line " + std::to_string(line_number) + ": word '" +
                                         word + "' has no synonyms");
    }
    auto& slot = entries[word];
    slot.insert(slot.end(), synonyms.begin(), synonyms.end());
  }
  return SynonymLexicon(std::move(entries));
}

// ---------------------------------------------------------------------------
// Augmentation

void AugmentationConfig::validate() const {
  if (!(replacement_fraction > 0.0 && replacement_fraction <= 1.0)) {
    throw Error(ErrorKind::kRange, "replacement_fraction must lie in (0, 1]");
  }
}

std::string augment_with_synonyms(const std::string& input, const SynonymLexicon& lexicon,
                                  const AugmentationConfig& config) {
  config.validate();
  if (input.empty() || lexicon.empty()) return input;

  struct Covered {
    text::TokenSpan span;
    const std::vector<std::string>* synonyms;
  };
  std::vector<Covered> covered;
  for (const auto& span : text::token_spans(input)) {
    const auto word = text::to_lower(std::string_view(input).substr(span.begin, span.length));
    if (const auto* syn = lexicon.find(word)) covered.push_back({span, syn});
  }
  if (covered.empty()) return input;

  // The epsilon keeps products like 0.3 * 10 from rounding up to 4.
  const auto k = covered.size();
  const auto count = std::min<std::size_t>(
      k, static_cast<std::size_t>(std::ceil(config.replacement_fraction * static_cast<double>(k) - 1e-9)));

  Rng rng(config.rng_seed);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first `count` entries are a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(order[i], order[i + uniform_index(rng, k - i)]);
  }
  std::vector<const std::string*> replacement(k, nullptr);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& synonyms = *covered[order[i]].synonyms;
    replacement[order[i]] = &synonyms[uniform_index(rng, synonyms.size())];
  }

  std::string out;
  out.reserve(input.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!replacement[i]) continue;
    const auto& span = covered[i].span;
    out.append(input, cursor, span.begin - cursor);
    out += *replacement[i];
    cursor = span.begin + span.length;
  }
  out.append(input, cursor, std::string::npos);
  return out;
}

LabeledRows label_dataset(const Dataset& dataset) {
  LabeledRows rows;
  rows.reserve(dataset.size());
  for (const auto& p : dataset.profiles()) rows.push_back({p, map_score_to_label(p.overall_score)});
  return rows;
}

std::string row_text(const CandidateProfile& p) {
  std::string out = p.education;
  for (const auto& s : p.skills) out += " " + s;
  out += " " + p.about;
  out += " " + p.job_title;
  return out;
}

LabeledRows augment_dataset(const LabeledRows& rows, const SynonymLexicon& lexicon,
                            const AugmentationConfig& config) {
  config.validate();
  LabeledRows out = rows;
  out.reserve(rows.size() * 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string prefix = "row:" + std::to_string(i) + ":";
    auto field = [&](const std::string& value, const std::string& name) {
      AugmentationConfig c = config;
      c.rng_seed = derive_seed(config.rng_seed, prefix + name);
      return augment_with_synonyms(value, lexicon, c);
    };
    LabeledRow variant = rows[i];
    variant.profile.id += "+syn";
    variant.profile.education = field(variant.profile.education, "education");
    variant.profile.about = field(variant.profile.about, "about");
    variant.profile.job_title = field(variant.profile.job_title, "job_title");
    for (std::size_t s = 0; s < variant.profile.skills.size(); ++s) {
      variant.profile.skills[s] = field(variant.profile.skills[s], "skill:" + std::to_string(s));
    }
    out.push_back(std::move(variant));
  }
  return out;
}

std::pair<std::size_t, std::size_t> class_counts(const LabeledRows& rows) {
  std::size_t pos = 0;
  for (const auto& r : rows) pos += r.label == BinaryLabel::kPositive;
  return {rows.size() - pos, pos};
}

LabeledRows balance_classes(const LabeledRows& rows, std::uint64_t rng_seed) {
  const auto [neg, pos] = class_counts(rows);
  if (neg == 0 || pos == 0) {
    throw Error(ErrorKind::kBalance, "class balancing needs both classes present (negatives=" +
                                         std::to_string(neg) + ", positives=" +
                                         std::to_string(pos) + ")");
  }
  LabeledRows out = rows;
  if (neg == pos) return out;

  const BinaryLabel minority = neg < pos ? BinaryLabel::kNegative : BinaryLabel::kPositive;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].label == minority) pool.push_back(i);
  }
  const std::size_t deficit = (neg < pos ? pos : neg) - pool.size();
  Rng rng(rng_seed);
  for (std::size_t k = 0; k < deficit; ++k) {
    LabeledRow dup = rows[pool[uniform_index(rng, pool.size())]];
    dup.profile.id += "+dup" + std::to_string(k + 1);
    out.push_back(std::move(dup));
  }
  return out;
}

Split train_test_split(const LabeledRows& rows, double train_fraction, std::uint64_t rng_seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::kRange, "train fraction must lie in (0, 1)");
  }
  if (rows.size() < 2) throw Error(ErrorKind::kSplit, "split needs at least 2 rows");

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(rng_seed);
  shuffle(order, rng);

  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
  Split split;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? split.train : split.test).push_back(rows[order[i]]);
  }
  return split;
}

ClassWeights compute_class_weights(const std::vector<BinaryLabel>& labels) {
  std::size_t pos = 0;
  for (auto l : labels) pos += l == BinaryLabel::kPositive;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) {
    throw Error(ErrorKind::kBalance, "class weights need both classes present");
  }
  const double n = static_cast<double>(labels.size());
  return {n / (2.0 * static_cast<double>(neg)), n / (2.0 * static_cast<double>(pos))};
}

// ---------------------------------------------------------------------------
// Labeled-rows file

void write_labeled_rows(std::ostream& out, const LabeledRows& rows) {
  auto header = profile_header();
  header.push_back("label");
  csv::write_record(out, header);
  for (const auto& r : rows) {
    auto cells = profile_cells(r.profile);
    cells.push_back(std::to_string(to_int(r.label)));
    csv::write_record(out, cells);
  }
}

LabeledRows load_labeled_rows(std::istream& in) {
  const csv::Table table = csv::read(in);
  if (table.header.empty()) throw Error(ErrorKind::kSchema, "labeled-rows file has no header row");
  const auto columns = resolve_columns(table.header, ProfileSchema{});
  const auto label_col = table.column("label");
  if (label_col == std::string::npos) throw Error(ErrorKind::kSchema, "missing column 'label'");

  LabeledRows rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    LabeledRow row;
    row.profile = parse_profile(table.rows[r], columns, r + 1);
    const auto cell = text::trim(table.rows[r][label_col]);
    if (cell != "0" && cell != "1") {
      throw Error(ErrorKind::kParse,
                  "row " + std::to_string(r + 1) + ": label must be 0 or 1, got '" + cell + "'");
    }
    row.label = cell == "1" ? BinaryLabel::kPositive : BinaryLabel::kNegative;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace psel
