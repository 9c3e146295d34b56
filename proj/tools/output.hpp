#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace petlab::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// RFC 4180 CSV with a header row; numbers at 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(const std::string& value);
  void end_row();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Finite doubles as numbers, anything else as null.
Json number(double value);

void write_json(const std::filesystem::path& path, const Json& doc);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

/// Minimal SVG 1.1 line plot; `log_y` plots log10 of positive values.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
               bool log_y = false);

/// Creates `dir` if needed.
std::filesystem::path prepare_output(const std::string& dir);

}  // namespace petlab::cli
