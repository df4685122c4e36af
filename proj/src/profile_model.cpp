#include "psel/profile_model.hpp"

#include "psel/csv.hpp"
#include "psel/error.hpp"
#include "psel/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_set>

namespace psel {

namespace {

std::string row_context(std::size_t row_number) { return "row " + std::to_string(row_number); }

double parse_real(const std::string& cell, const char* field, std::size_t row_number) {
  const std::string s = text::trim(cell);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::kParse, row_context(row_number) + ": " + field + " is not a number: '" +
                                       cell + "'");
  }
  return value;
}

int parse_int(const std::string& cell, const char* field, std::size_t row_number) {
  const std::string s = text::trim(cell);
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kParse, row_context(row_number) + ": " + field +
                                       " is not an integer: '" + cell + "'");
  }
  return value;
}

std::vector<std::string> parse_skills(const std::string& cell) {
  std::vector<std::string> skills;
  for (const auto& part : text::split(cell, ';')) {
    auto s = text::trim(part);
    if (!s.empty()) skills.push_back(std::move(s));
  }
  return skills;
}

std::string key_of(std::string_view category) { return text::to_lower(text::trim(category)); }

}  // namespace

void validate(const CandidateProfile& p) {
  if (p.id.empty()) throw Error(ErrorKind::kRange, "profile id must be non-empty");
  if (!std::isfinite(p.experience_years) || p.experience_years < 0.0) {
    throw Error(ErrorKind::kRange, "profile '" + p.id + "': experience_years must be finite and >= 0");
  }
  if (p.overall_score < 0 || p.overall_score > 5) {
    throw Error(ErrorKind::kRange, "profile '" + p.id + "': overall_score " +
                                       std::to_string(p.overall_score) + " outside 0-5");
  }
}

Dataset::Dataset(std::vector<CandidateProfile> profiles) : profiles_(std::move(profiles)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : profiles_) {
    validate(p);
    if (!seen.insert(p.id).second) {
      throw Error(ErrorKind::kUniqueness, "duplicate profile id '" + p.id + "'");
    }
  }
}

std::vector<std::string> profile_header() {
  return {"id", "experience_years", "education", "skills", "about", "job_title", "overall_score"};
}

std::vector<std::string> profile_cells(const CandidateProfile& p) {
  return {p.id,    text::format_double(p.experience_years), p.education, text::join(p.skills, ";"),
          p.about, p.job_title,                             std::to_string(p.overall_score)};
}

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& header,
                                         const ProfileSchema& schema) {
  const std::vector<std::string> names = {schema.id,     schema.experience_years, schema.education,
                                          schema.skills, schema.about,            schema.job_title,
                                          schema.overall_score};
  std::vector<std::size_t> columns;
  for (const auto& name : names) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::kSchema, "missing column '" + name + "'");
    columns.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return columns;
}

CandidateProfile parse_profile(const std::vector<std::string>& cells,
                               const std::vector<std::size_t>& columns, std::size_t row_number) {
  CandidateProfile p;
  p.id = text::trim(cells[columns[0]]);
  if (p.id.empty()) throw Error(ErrorKind::kParse, row_context(row_number) + ": empty id");
  p.experience_years = parse_real(cells[columns[1]], "experience_years", row_number);
  p.education = cells[columns[2]];
  p.skills = parse_skills(cells[columns[3]]);
  p.about = cells[columns[4]];
  p.job_title = cells[columns[5]];
  p.overall_score = parse_int(cells[columns[6]], "overall_score", row_number);
  try {
    validate(p);
  } catch (const Error& e) {
    throw Error(e.kind(), row_context(row_number) + ": " + e.what());
  }
  return p;
}

Dataset load_profiles(std::istream& in, const ProfileSchema& schema) {
  const csv::Table table = csv::read(in);
  if (table.header.empty()) throw Error(ErrorKind::kSchema, "profile file has no header row");
  const auto columns = resolve_columns(table.header, schema);

  std::vector<CandidateProfile> profiles;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    auto p = parse_profile(table.rows[r], columns, r + 1);
    if (!seen.insert(p.id).second) {
      throw Error(ErrorKind::kUniqueness,
                  row_context(r + 1) + ": duplicate profile id '" + p.id + "'");
    }
    profiles.push_back(std::move(p));
  }
  return Dataset(std::move(profiles));
}

void write_profiles(std::ostream& out, const Dataset& dataset) {
  csv::write_record(out, profile_header());
  for (const auto& p : dataset.profiles()) csv::write_record(out, profile_cells(p));
}

// ---------------------------------------------------------------------------
// Encoding

void EncodingConfig::validate() const {
  for (const auto& [field, categories] : fields) {
    std::set<int> codes;
    std::set<std::string> keys;
    for (const auto& [category, code] : categories) {
      if (!keys.insert(key_of(category)).second) {
        throw Error(ErrorKind::kEncoding,
                    "field '" + field + "': category '" + category + "' listed twice");
      }
      if (!codes.insert(code).second) {
        throw Error(ErrorKind::kEncoding,
                    "field '" + field + "': code " + std::to_string(code) + " assigned twice");
      }
      if (unknown_policy == UnknownPolicy::kReserved && code == reserved_code) {
        throw Error(ErrorKind::kEncoding, "field '" + field + "': reserved code " +
                                              std::to_string(code) + " collides with '" +
                                              category + "'");
      }
    }
  }
}

EncodingConfig load_encoding_config(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("encoding config: ") + e.what());
  }
  EncodingConfig config;
  try {
    const auto policy = doc.value("unknown_policy", std::string("reject"));
    if (policy == "reject") {
      config.unknown_policy = UnknownPolicy::kReject;
    } else if (policy == "reserved") {
      config.unknown_policy = UnknownPolicy::kReserved;
    } else {
      throw Error(ErrorKind::kSchema, "encoding config: unknown_policy must be reject|reserved");
    }
    config.reserved_code = doc.value("reserved_code", -1);
    for (const auto& [field, categories] : doc.at("fields").items()) {
      static const std::set<std::string> kKnown = {"education", "skills", "about", "job_title"};
      if (!kKnown.count(field)) {
        throw Error(ErrorKind::kSchema, "encoding config: unexpected field '" + field + "'");
      }
      auto& map = config.fields[field];
      for (const auto& [category, code] : categories.items()) map[category] = code.get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, std::string("encoding config: ") + e.what());
  }
  config.validate();
  return config;
}

std::string dump_encoding_config(const EncodingConfig& config) {
  nlohmann::json doc;
  doc["unknown_policy"] = config.unknown_policy == UnknownPolicy::kReject ? "reject" : "reserved";
  doc["reserved_code"] = config.reserved_code;
  doc["fields"] = nlohmann::json::object();
  for (const auto& [field, categories] : config.fields) {
    for (const auto& [category, code] : categories) doc["fields"][field][category] = code;
  }
  return doc.dump(2) + "\n";
}

std::size_t FeatureMatrix::column(const std::string& name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) throw Error(ErrorKind::kSchema, "no feature column '" + name + "'");
  return static_cast<std::size_t>(it - column_names.begin());
}

namespace {

class FieldEncoder {
 public:
  FieldEncoder(const EncodingConfig& config, const std::string& field)
      : field_(field), policy_(config.unknown_policy), reserved_(config.reserved_code) {
    if (const auto it = config.fields.find(field); it != config.fields.end()) {
      for (const auto& [category, code] : it->second) codes_[key_of(category)] = code;
    }
  }

  int code(const std::string& value) const {
    if (const auto it = codes_.find(key_of(value)); it != codes_.end()) return it->second;
    if (policy_ == UnknownPolicy::kReserved) return reserved_;
    throw Error(ErrorKind::kEncoding,
                "field '" + field_ + "': unknown category '" + value + "'");
  }

 private:
  std::string field_;
  UnknownPolicy policy_;
  int reserved_;
  std::map<std::string, int> codes_;
};

}  // namespace

FeatureMatrix encode_features(const Dataset& dataset, const EncodingConfig& config) {
  config.validate();
  const FieldEncoder education(config, "education");
  const FieldEncoder skills(config, "skills");
  const FieldEncoder about(config, "about");
  const FieldEncoder job_title(config, "job_title");

  FeatureMatrix fm;
  fm.column_names = {"experience_years", "education", "skills", "about", "job_title", "overall_score"};
  fm.values = Matrix(dataset.size(), fm.column_names.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& p = dataset[i];
    fm.row_ids.push_back(p.id);
    double skill_sum = 0.0;
    for (const auto& s : p.skills) skill_sum += skills.code(s);
    fm.values(i, 0) = p.experience_years;
    fm.values(i, 1) = education.code(p.education);
    fm.values(i, 2) = skill_sum;
    fm.values(i, 3) = about.code(p.about);
    fm.values(i, 4) = job_title.code(p.job_title);
    fm.values(i, 5) = p.overall_score;
  }
  return fm;
}

Matrix pearson_correlation_matrix(const FeatureMatrix& features) {
  const Matrix& x = features.values;
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  if (m < 2) throw Error(ErrorKind::kDegenerate, "correlation needs at least 2 rows");

  // Centered columns and their norms.
  Matrix centered(m, n);
  std::vector<double> norm(n);
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += x(i, j);
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      centered(i, j) = x(i, j) - mean;
      ss += centered(i, j) * centered(i, j);
    }
    if (ss == 0.0) {
      const std::string name = j < features.column_names.size() ? features.column_names[j]
                                                                : std::to_string(j);
      throw Error(ErrorKind::kDegenerate, "feature column '" + name + "' has zero variance");
    }
    norm[j] = std::sqrt(ss);
  }

  Matrix corr(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    corr(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += centered(i, a) * centered(i, b);
      const double r = std::clamp(dot / (norm[a] * norm[b]), -1.0, 1.0);
      corr(a, b) = r;
      corr(b, a) = r;
    }
  }
  return corr;
}

}  // namespace psel
