#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace psel::csv {

using Record = std::vector<std::string>;

struct Table {
  Record header;
  std::vector<Record> rows;
  // 1-based physical line on which each row starts.
  std::vector<std::size_t> lines;

  // Index of `column` in the header, or npos.
  std::size_t column(std::string_view name) const;
};

// RFC 4180 style: comma delimiter, double-quote quoting, "" escapes, CRLF or
// LF line endings. Blank lines are skipped. Throws Error(kParse) on an
// unterminated quote or a row whose width differs from the header.
Table read(std::istream& in);

void write_record(std::ostream& out, const Record& record);

// Quotes a field only when it contains a delimiter, quote or newline.
std::string escape(std::string_view field);

}  // namespace psel::csv
