// Copyright 2026 The zetalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Tabular output shared by the CLI and the growth reports. CSV uses ',' and
// '.', JSON is an array of objects keyed by the CSV headers. Numbers are
// written as the same decimal tokens in both formats.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/real.hpp"

namespace zetalab {

enum class Format { kCsv, kJson };

struct Cell {
  enum class Kind { kNumber, kBool, kString };
  std::string text;
  Kind kind = Kind::kNumber;
};

inline Cell number_cell(const Real& x, int digits) { return {x.str(digits), Cell::Kind::kNumber}; }
inline Cell integer_cell(std::uint64_t v) { return {std::to_string(v), Cell::Kind::kNumber}; }
inline Cell bool_cell(bool b) { return {b ? "true" : "false", Cell::Kind::kBool}; }
inline Cell string_cell(std::string s) { return {std::move(s), Cell::Kind::kString}; }

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          constexpr char kHex[] = "0123456789abcdef";
          out += "\\u00";
          out += kHex[(c >> 4) & 0xF];
          out += kHex[c & 0xF];
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string json_token(const Cell& c) {
  if (c.kind == Cell::Kind::kString) return json_escape(c.text);
  if (c.kind == Cell::Kind::kNumber && (c.text == "nan" || c.text == "inf" || c.text == "-inf")) return "null";
  return c.text;
}

inline std::string csv_token(const Cell& c) {
  if (c.kind != Cell::Kind::kString) return c.text;
  if (c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
  std::string out = "\"";
  for (const char ch : c.text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

class Table {
 public:
  explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != headers_.size()) throw DomainError("row width does not match the table header");
    rows_.push_back(std::move(row));
  }

  [[nodiscard]] const std::vector<std::string>& headers() const { return headers_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < headers_.size(); ++i) os << (i ? "," : "") << headers_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_token(row[i]);
      os << '\n';
    }
  }

  void write_json(std::ostream& os) const {
    os << "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      os << (r ? ",\n " : "\n ") << "{";
      for (std::size_t i = 0; i < headers_.size(); ++i) {
        os << (i ? ", " : "") << detail::json_escape(headers_[i]) << ": " << detail::json_token(rows_[r][i]);
      }
      os << "}";
    }
    os << (rows_.empty() ? "]\n" : "\n]\n");
  }

  void write(std::ostream& os, Format format) const {
    if (format == Format::kCsv) write_csv(os); else write_json(os);
  }

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes a flat JSON object of key/cell pairs; `nested` adds one sub-object.
inline void write_json_object(std::ostream& os, const std::vector<std::pair<std::string, Cell>>& fields,
                              const std::string& nested_key = {},
                              const std::vector<std::pair<std::string, Cell>>& nested = {}) {
  os << "{";
  bool first = true;
  for (const auto& [k, v] : fields) {
    os << (first ? "" : ", ") << detail::json_escape(k) << ": " << detail::json_token(v);
    first = false;
  }
  if (!nested_key.empty()) {
    os << (first ? "" : ", ") << detail::json_escape(nested_key) << ": {";
    for (std::size_t i = 0; i < nested.size(); ++i) {
      os << (i ? ", " : "") << detail::json_escape(nested[i].first) << ": " << detail::json_token(nested[i].second);
    }
    os << "}";
  }
  os << "}\n";
}

/// Splits CSV text written by Table::write_csv back into fields (header first).
inline std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(std::move(field));
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace zetalab
