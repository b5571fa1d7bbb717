// SPDX-License-Identifier: Apache-2.0
//
// Minimal CSV emission: UTF-8, header row, '.' decimal separator, doubles
// rendered with %.17g so re-runs are byte-identical and values round-trip.
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "sddesim/errors.hpp"

namespace sddesim {

using CsvCell = std::variant<std::string, double, long long, std::uint64_t>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<CsvCell> cells) {
    if (cells.size() != columns_.size()) throw InputError("CSV row width does not match header");
    rows_.push_back(std::move(cells));
  }

  std::size_t row_count() const { return rows_.size(); }

  std::string to_string() const {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      out += (c ? "," : "") + columns_[c];
    }
    out += "\n";
    char buffer[64];
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        if (const auto* text = std::get_if<std::string>(&row[c])) {
          out += *text;
        } else if (const auto* real = std::get_if<double>(&row[c])) {
          std::snprintf(buffer, sizeof(buffer), "%.17g", *real);
          out += buffer;
        } else if (const auto* integer = std::get_if<long long>(&row[c])) {
          std::snprintf(buffer, sizeof(buffer), "%lld", *integer);
          out += buffer;
        } else {
          std::snprintf(buffer, sizeof(buffer), "%llu",
                        static_cast<unsigned long long>(std::get<std::uint64_t>(row[c])));
          out += buffer;
        }
      }
      out += "\n";
    }
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open " + path.string() + " for writing");
    file << to_string();
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace sddesim
