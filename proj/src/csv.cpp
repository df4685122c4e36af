#include "psel/csv.hpp"

#include "psel/error.hpp"

#include <iterator>

namespace psel {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kUniqueness: return "uniqueness error";
    case ErrorKind::kEncoding: return "encoding error";
    case ErrorKind::kDegenerate: return "degenerate input";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kBalance: return "balance error";
    case ErrorKind::kSplit: return "split error";
    case ErrorKind::kEmpty: return "empty input";
    case ErrorKind::kDivision: return "division error";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

namespace csv {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::string::npos;
}

namespace {

bool is_blank(const Record& r) { return r.size() == 1 && r[0].empty(); }

}  // namespace

Table read(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  // Skip a UTF-8 byte order mark.
  if (data.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

  std::vector<Record> records;
  std::vector<std::size_t> lines;
  std::size_t line = 1;

  while (pos < data.size()) {
    Record record;
    std::string field;
    const std::size_t start_line = line;
    bool quoted = false;
    bool field_was_quoted = false;
    bool done = false;
    while (!done) {
      if (pos >= data.size()) {
        if (quoted) {
          throw Error(ErrorKind::kParse,
                      "unterminated quoted field starting on line " + std::to_string(start_line));
        }
        record.push_back(std::move(field));
        break;
      }
      const char c = data[pos++];
      if (quoted) {
        if (c == '"') {
          if (pos < data.size() && data[pos] == '"') {
            field.push_back('"');
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
        }
        continue;
      }
      switch (c) {
        case '"':
          if (field.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
          } else {
            field.push_back(c);
          }
          break;
        case ',':
          record.push_back(std::move(field));
          field.clear();
          field_was_quoted = false;
          break;
        case '\r':
          if (pos < data.size() && data[pos] == '\n') ++pos;
          [[fallthrough]];
        case '\n':
          ++line;
          record.push_back(std::move(field));
          done = true;
          break;
        default:
          field.push_back(c);
      }
    }
    if (!is_blank(record)) {
      records.push_back(std::move(record));
      lines.push_back(start_line);
    }
  }

  Table table;
  if (records.empty()) return table;
  table.header = std::move(records.front());
  for (auto& h : table.header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != table.header.size()) {
      throw Error(ErrorKind::kParse, "row " + std::to_string(i) + " (line " +
                                         std::to_string(lines[i]) + ") has " +
                                         std::to_string(records[i].size()) + " fields, expected " +
                                         std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[i]));
    table.lines.push_back(lines[i]);
  }
  return table;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_record(std::ostream& out, const Record& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i) out << ',';
    out << escape(record[i]);
  }
  out << '\n';
}

}  // namespace csv
}  // namespace psel
