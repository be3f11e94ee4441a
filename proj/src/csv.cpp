#include "commscore/csv.hpp"

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

CsvReader::CsvReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {}

std::optional<CsvReader::Record> CsvReader::next() {
  while (true) {
    Record rec;
    rec.line = line_;
    std::string field;
    bool quoted = false;
    bool any = false;
    bool was_quoted = false;
    int ch;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
      const char c = static_cast<char>(ch);
      any = true;
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && field.empty() && !was_quoted) {
        quoted = true;
        was_quoted = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '\r' && in_.peek() == '\n') {
        continue;
      } else if (c == '\n') {
        ++line_;
        break;
      } else {
        field.push_back(c);
      }
    }
    if (quoted)
      throw FormatError(fmt::format("{}:{}: unterminated quoted field", source_, rec.line));
    if (!any) return std::nullopt;
    rec.fields.push_back(std::move(field));
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty() && !was_quoted;
    if (blank) continue;
    return rec;
  }
}

std::string csv_escape(std::string_view field) {
  const bool needs = field.find_first_of(",;\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  return out;
}

}  // namespace commscore
