#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace psel::text {

// Word characters are ASCII alphanumerics and every byte >= 0x80, so UTF-8
// sequences stay inside tokens.
bool is_word_byte(unsigned char c);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Lowercased maximal runs of word characters.
std::vector<std::string> tokenize(std::string_view s);

struct TokenSpan {
  std::size_t begin;
  std::size_t length;
};

// Byte spans of the tokens of `s` (same segmentation as tokenize()).
std::vector<TokenSpan> token_spans(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view delim);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// Fixed-point formatting for human-readable tables.
std::string fixed(double value, int digits);

}  // namespace psel::text
