#include "psel/synthetic.hpp"

#include "psel/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

namespace psel::synthetic {

namespace {

constexpr std::array<const char*, 4> kEducation = {"Diploma", "BSc Computer Science",
                                                   "MSc Computer Science", "PhD Computer Science"};

constexpr std::array<const char*, 5> kJobTitles = {"Intern", "Junior Developer", "Software Engineer",
                                                   "Senior Software Engineer", "Tech Lead"};

struct Skill {
  const char* name;
  int code;
};

constexpr std::array<Skill, 14> kSkills = {{
    {"HTML", 1},
    {"CSS", 1},
    {"Excel", 1},
    {"WordPress", 1},
    {"Python", 2},
    {"Java", 2},
    {"SQL", 2},
    {"Git", 2},
    {"JavaScript", 2},
    {"Kubernetes", 3},
    {"Distributed Systems", 3},
    {"Machine Learning", 3},
    {"System Design", 3},
    {"C++", 3},
}};

// Graded self-introductions, weakest first.
constexpr std::array<const char*, 5> kAbout = {
    "Looking for any job. I am learning to code.",
    "Junior coder who enjoys small web pages and simple scripts.",
    "Software developer who writes clean code and works well in a team.",
    "Experienced engineer who builds reliable scalable services and reviews code carefully.",
    "Passionate senior engineer who designs robust distributed platforms, mentors teams and leads "
    "architecture decisions.",
};

std::size_t pick_graded(Rng& rng, double quality, std::size_t levels, double noise) {
  const double z = quality + noise * (2.0 * uniform_unit(rng) - 1.0);
  const auto idx = static_cast<long>(std::floor(std::clamp(z, 0.0, 0.999999) * static_cast<double>(levels)));
  return static_cast<std::size_t>(idx);
}

}  // namespace

Dataset generate_profiles(std::size_t count, std::uint64_t seed) {
  Rng rng = make_rng(seed, "synthetic");
  std::vector<CandidateProfile> profiles;
  profiles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Latent quality skewed towards strong candidates.
    const double quality = std::sqrt(uniform_unit(rng));

    CandidateProfile p;
    char id[32];
    std::snprintf(id, sizeof(id), "c%03zu", i + 1);
    p.id = id;
    p.experience_years = std::round(10.0 * std::max(0.0, 0.5 + 12.0 * quality + 2.0 * (uniform_unit(rng) - 0.5))) / 10.0;
    p.education = kEducation[pick_graded(rng, quality, kEducation.size(), 0.25)];
    p.job_title = kJobTitles[pick_graded(rng, quality, kJobTitles.size(), 0.3)];
    p.about = kAbout[pick_graded(rng, quality, kAbout.size(), 0.2)];

    const std::size_t n_skills = 2 + uniform_index(rng, 4);
    std::vector<std::size_t> chosen;
    while (chosen.size() < n_skills) {
      const int tier = 1 + static_cast<int>(pick_graded(rng, quality, 3, 0.35));
      std::vector<std::size_t> pool;
      for (std::size_t s = 0; s < kSkills.size(); ++s) {
        if (kSkills[s].code == tier && std::find(chosen.begin(), chosen.end(), s) == chosen.end()) {
          pool.push_back(s);
        }
      }
      if (pool.empty()) continue;
      chosen.push_back(pool[uniform_index(rng, pool.size())]);
    }
    for (auto s : chosen) p.skills.emplace_back(kSkills[s].name);

    const double raw = 5.0 * quality + 0.8 * (uniform_unit(rng) - 0.5);
    p.overall_score = static_cast<int>(std::clamp(std::lround(raw), 0L, 5L));
    profiles.push_back(std::move(p));
  }
  return Dataset(std::move(profiles));
}

EncodingConfig encoding_config() {
  EncodingConfig config;
  for (std::size_t i = 0; i < kEducation.size(); ++i) config.fields["education"][kEducation[i]] = static_cast<int>(i + 1);
  for (std::size_t i = 0; i < kJobTitles.size(); ++i) config.fields["job_title"][kJobTitles[i]] = static_cast<int>(i + 1);
  for (std::size_t i = 0; i < kAbout.size(); ++i) config.fields["about"][kAbout[i]] = static_cast<int>(i + 1);
  // Skill codes must be distinct within the field: tier * 100 + position.
  for (std::size_t i = 0; i < kSkills.size(); ++i) {
    config.fields["skills"][kSkills[i].name] = kSkills[i].code * 100 + static_cast<int>(i);
  }
  return config;
}

void write_lexicon(std::ostream& out) {
  out << "# word<TAB>synonyms separated by ';'\n"
         "passionate\tenthusiastic;eager;keen\n"
         "experienced\tseasoned;skilled\n"
         "engineer\tdeveloper;technologist\n"
         "builds\tcreates;develops;constructs\n"
         "reliable\tdependable;robust\n"
         "robust\tsturdy;resilient\n"
         "scalable\textensible;expandable\n"
         "services\tsystems;applications\n"
         "teams\tgroups;squads\n"
         "team\tgroup;squad\n"
         "clean\ttidy;neat\n"
         "carefully\tthoroughly;meticulously\n"
         "mentors\tcoaches;guides\n"
         "leads\tdirects;heads\n"
         "job\tposition;role\n"
         "learning\tstudying\n"
         "small\tlittle;minor\n"
         "simple\tbasic;plain\n"
         "enjoys\tlikes;loves\n";
}

SynonymLexicon lexicon() {
  std::stringstream ss;
  write_lexicon(ss);
  return load_lexicon(ss);
}

}  // namespace psel::synthetic
