#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hdsphere::cli {

/// 17 significant digits, scientific, '.' decimal regardless of locale.
std::string format17(double v);

/// FNV-1a 64-bit, hex.
std::string run_id(std::string_view payload);

/// UTC, ISO 8601, seconds resolution.
std::string utc_timestamp();

/// CSV text with a '#'-prefixed metadata preamble, one header row, data rows
/// and optional '#'-prefixed footer lines. Line endings are always '\n'.
class CsvDocument {
 public:
  CsvDocument(std::string command, std::string id, const std::string& config_text);

  void meta(std::string_view key, std::string_view value);
  void header(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  void footer(std::string_view line);

  std::string str() const;
  std::size_t columns() const { return columns_.size(); }

 private:
  std::string preamble_;
  std::vector<std::string> columns_;
  std::string body_;
  std::string footer_;
};

/// Quotes a cell when it contains ',', '"' or a newline.
std::string csv_cell(std::string_view s);

/// Writes `text` to `dir/name`, creating `dir`. Throws ConfigError on I/O failure.
std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text);

/// The JSON sidecar: the deterministic record plus a timestamp.
nlohmann::ordered_json sidecar(std::string_view command, std::string_view id, const std::string& config_text);

}  // namespace hdsphere::cli
