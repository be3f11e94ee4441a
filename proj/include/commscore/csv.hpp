#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace commscore {

/// RFC 4180 record reader. Quoted fields may contain separators, doubled
/// quotes and line breaks; records end at LF or CRLF.
class CsvReader {
 public:
  struct Record {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
  };

  CsvReader(std::istream& in, std::string source);

  /// Next non-blank record, or nullopt at end of input. Throws FormatError on
  /// an unterminated quoted field.
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 1;
};

/// Quotes the field when it contains a comma, semicolon, quote, line break or
/// leading/trailing space.
std::string csv_escape(std::string_view field);

std::string csv_join(const std::vector<std::string>& fields);

}  // namespace commscore
