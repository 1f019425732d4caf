#pragma once

// Typed record tables and their CSV / JSON encodings.
//
// CSV is RFC 4180 style: header row first, LF line endings, text fields
// quoted when they contain a comma, quote or newline. Reals are printed
// with 17 significant digits so a row parses back to identical values;
// non-finite reals print as nan / inf / -inf. JSON output is an array of
// objects keyed by column name, with non-finite reals as null.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cohcat {

enum class ColumnType { integer, real, text };

struct Column {
  std::string name;
  ColumnType type;
};

using Field = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Field>> rows;

  /// Appends a row; throws InvalidParameter if it does not match the schema.
  void add(std::vector<Field> row);
};

std::string format_field(const Field& f);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

/// Parses CSV produced by write_csv against a known schema. Throws
/// InvalidParameter on a header or field mismatch.
Table read_csv(std::string_view text, const std::vector<Column>& schema);

/// Field equality with nan == nan.
bool same_field(const Field& a, const Field& b);

}  // namespace cohcat
