#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "hdsphere/error.hpp"

namespace hdsphere::cli {

std::string format17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string run_id(std::string_view payload) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof buf, h, 16);
  std::string s(buf, res.ptr);
  return std::string(16 - s.size(), '0') + s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  out += '"';
  return out;
}

CsvDocument::CsvDocument(std::string command, std::string id, const std::string& config_text) {
  preamble_ = "# hdsphere " + command + "\n# run_id=" + id + "\n";
  std::size_t pos = 0;
  while (pos < config_text.size()) {
    const auto nl = config_text.find('\n', pos);
    const auto end = nl == std::string::npos ? config_text.size() : nl;
    preamble_ += "# config " + config_text.substr(pos, end - pos) + "\n";
    pos = end + 1;
  }
}

void CsvDocument::meta(std::string_view key, std::string_view value) {
  preamble_.append("# ").append(key).append("=").append(value).append("\n");
}

void CsvDocument::header(std::vector<std::string> columns) { columns_ = std::move(columns); }

void CsvDocument::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += csv_cell(cells[i]);
  }
  body_ += '\n';
}

void CsvDocument::footer(std::string_view line) { footer_.append("# ").append(line).append("\n"); }

std::string CsvDocument::str() const {
  std::string head;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) head += ',';
    head += columns_[i];
  }
  return preamble_ + head + "\n" + body_ + footer_;
}

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("out: cannot create directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw ConfigError("out: cannot write '" + path.string() + "'");
  return path;
}

nlohmann::ordered_json sidecar(std::string_view command, std::string_view id, const std::string& config_text) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["run_id"] = id;
  j["timestamp"] = utc_timestamp();
  j["config"] = config_text;
  return j;
}

}  // namespace hdsphere::cli
