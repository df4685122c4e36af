#pragma once

#include "psel/preprocessing.hpp"
#include "psel/profile_model.hpp"

#include <cstdint>

namespace psel::synthetic {

// Seeded software-engineer profiles whose text fields, experience and expert
// score all follow one latent quality per candidate. Scores skew high, so
// the suitable class is the majority.
Dataset generate_profiles(std::size_t count, std::uint64_t seed);

// Ordinal maps covering every category generate_profiles() emits.
EncodingConfig encoding_config();

// Synonyms for words that occur in the generated text.
SynonymLexicon lexicon();
void write_lexicon(std::ostream& out);

}  // namespace psel::synthetic
