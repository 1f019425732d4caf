#include "cohcat/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cohcat/error.hpp"
#include "json.hpp"

namespace cohcat {

namespace {

bool matches(const Field& f, ColumnType type) {
  switch (type) {
    case ColumnType::integer: return std::holds_alternative<std::int64_t>(f);
    case ColumnType::real: return std::holds_alternative<double>(f);
    case ColumnType::text: return std::holds_alternative<std::string>(f);
  }
  return false;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> split_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

Field parse_field(const std::string& s, ColumnType type) {
  switch (type) {
    case ColumnType::integer: {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidParameter("CSV: bad integer '" + s + "'");
      return v;
    }
    case ColumnType::real: {
      if (s == "nan") return std::nan("");
      if (s == "inf") return HUGE_VAL;
      if (s == "-inf") return -HUGE_VAL;
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) throw InvalidParameter("CSV: bad real '" + s + "'");
      return v;
    }
    case ColumnType::text: return s;
  }
  return s;
}

}  // namespace

void Table::add(std::vector<Field> row) {
  if (row.size() != columns.size()) throw InvalidParameter("table row has the wrong number of fields");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matches(row[i], columns[i].type)) throw InvalidParameter("table field type mismatch in column " + columns[i].name);
  }
  rows.push_back(std::move(row));
}

std::string format_field(const Field& f) {
  if (const auto* i = std::get_if<std::int64_t>(&f)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&f)) return format_real(*d);
  return std::get<std::string>(f);
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << quote_if_needed(t.columns[i].name);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote_if_needed(format_field(row[i]));
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = t.columns[i].name;
      if (const auto* v = std::get_if<std::int64_t>(&row[i])) {
        obj[name] = *v;
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        obj[name] = std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
      } else {
        obj[name] = std::get<std::string>(row[i]);
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

Table read_csv(std::string_view text, const std::vector<Column>& schema) {
  auto records = split_records(text);
  if (records.empty()) throw InvalidParameter("CSV: missing header");
  const auto& header = records.front();
  if (header.size() != schema.size()) throw InvalidParameter("CSV: header width does not match schema");
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (header[i] != schema[i].name) throw InvalidParameter("CSV: unexpected column '" + header[i] + "'");
  }
  Table t{schema, {}};
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != schema.size()) throw InvalidParameter("CSV: row width does not match schema");
    std::vector<Field> row;
    row.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) row.push_back(parse_field(records[r][i], schema[i].type));
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool same_field(const Field& a, const Field& b) {
  const auto* da = std::get_if<double>(&a);
  const auto* db = std::get_if<double>(&b);
  if (da && db && std::isnan(*da) && std::isnan(*db)) return true;
  return a == b;
}

}  // namespace cohcat
