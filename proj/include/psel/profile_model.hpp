#pragma once

#include "psel/matrix.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace psel {

struct CandidateProfile {
  std::string id;
  double experience_years = 0.0;
  std::string education;
  std::vector<std::string> skills;
  std::string about;
  std::string job_title;
  int overall_score = 0;  // senior-expert rating, 0..5

  bool operator==(const CandidateProfile&) const = default;
};

// Throws Error(kRange) when a field invariant is violated.
void validate(const CandidateProfile& profile);

// Ordered profiles with unique ids.
class Dataset {
 public:
  Dataset() = default;
  // Validates every profile and id uniqueness.
  explicit Dataset(std::vector<CandidateProfile> profiles);

  const std::vector<CandidateProfile>& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }
  const CandidateProfile& operator[](std::size_t i) const { return profiles_[i]; }

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<CandidateProfile> profiles_;
};

// Column names of the profile file.
struct ProfileSchema {
  std::string id = "id";
  std::string experience_years = "experience_years";
  std::string education = "education";
  std::string skills = "skills";
  std::string about = "about";
  std::string job_title = "job_title";
  std::string overall_score = "overall_score";
};

Dataset load_profiles(std::istream& in, const ProfileSchema& schema = {});
void write_profiles(std::ostream& out, const Dataset& dataset);

// Column headers and cell text of a profile, shared with the labeled-rows file.
std::vector<std::string> profile_header();
std::vector<std::string> profile_cells(const CandidateProfile& profile);
// Parses one profile from a CSV row; `row_number` is used in messages only.
CandidateProfile parse_profile(const std::vector<std::string>& cells,
                               const std::vector<std::size_t>& columns, std::size_t row_number);
// Resolves the required columns of `schema` against a header row.
std::vector<std::size_t> resolve_columns(const std::vector<std::string>& header,
                                         const ProfileSchema& schema);

enum class UnknownPolicy { kReject, kReserved };

// Ordinal maps for the categorical profile fields. Lookup is case-insensitive
// on trimmed text. The `skills` map codes single skills; a profile's skills
// feature is the sum of the codes of its skills.
struct EncodingConfig {
  std::map<std::string, std::map<std::string, int>> fields;
  UnknownPolicy unknown_policy = UnknownPolicy::kReject;
  int reserved_code = -1;

  // Throws Error(kEncoding) on duplicate codes or a colliding reserved code.
  void validate() const;
};

// JSON document: {"unknown_policy": "reject"|"reserved", "reserved_code": int,
//                 "fields": {"education": {"BSc": 1, ...}, ...}}
EncodingConfig load_encoding_config(std::istream& in);
std::string dump_encoding_config(const EncodingConfig& config);

struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::vector<std::string> row_ids;
  Matrix values;

  std::size_t column(const std::string& name) const;  // throws kSchema if absent
};

// Columns: experience_years, education, skills, about, job_title, overall_score.
FeatureMatrix encode_features(const Dataset& dataset, const EncodingConfig& config);

// n x n Pearson correlation of the feature columns.
Matrix pearson_correlation_matrix(const FeatureMatrix& features);

}  // namespace psel
