#pragma once

// Tabular report serialization shared by all CLI commands: JSON, CSV
// (RFC 4180 quoting, header row) and an aligned plain-text table.
// Floats are written with 12 significant digits, independent of locale.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace xxring::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;
inline constexpr const char* kVersion = "1.0.0";

inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kSignificantDigits);
  return {buf, res.ptr};
}

/// x rounded to 12 significant digits; its shortest round-trip form has at most 12 digits.
inline double round_significant(double x) {
  const auto s = format_number(x);
  double y = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

inline Json number(double x) { return Json(round_significant(x)); }

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<Json> rows;
  double runtime_ms = 0.0;
};

inline std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_null()) return "";
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::vector<std::string> columns(const Report& r) {
  std::vector<std::string> cols;
  if (!r.rows.empty())
    for (const auto& [k, v] : r.rows.front().items()) cols.push_back(k);
  return cols;
}

inline std::string to_json(const Report& r) {
  Json doc;
  doc["command"] = r.command;
  doc["config"] = r.config;
  doc["rows"] = Json::array();
  for (const auto& row : r.rows) doc["rows"].push_back(row);
  doc["meta"] = {{"version", kVersion}, {"runtime_ms", round_significant(r.runtime_ms)}};
  return doc.dump(2) + "\n";
}

inline std::string to_csv(const Report& r) {
  const auto cols = columns(r);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_escape(cols[i]);
  out += "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_escape(cell_text(row.at(cols[i])));
    out += "\r\n";
  }
  return out;
}

inline std::string to_table(const Report& r) {
  const auto cols = columns(r);
  std::vector<std::size_t> width(cols.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  for (const auto& row : r.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      line.push_back(cell_text(row.at(cols[i])));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return os.str();
}

/// Parses RFC 4180 CSV (quoted fields, doubled quotes, CRLF or LF).
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      field_started = true;
    } else if (ch == ',') {
      rec.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !rec.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      field_started = false;
    } else {
      field += ch;
      field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  if (field_started || !field.empty() || !rec.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace xxring::cli
