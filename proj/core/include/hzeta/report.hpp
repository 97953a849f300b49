#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

enum class Format { Csv, Json };

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

struct KeyValue {
  std::string key;
  std::string value;
};

struct SummaryEntry {
  std::string key;
  Cell value;
};

// One experiment's tabular output: config echo, rows, summary statistics.
// Wall time is kept out of the emitted bytes unless explicitly requested so
// identical (config, seed) runs produce byte-identical files.
struct Report {
  std::string subcommand;
  std::uint64_t seed{};
  std::vector<KeyValue> config;  // full flag echo, in declaration order
  std::string status{"ok"};      // "ok" or "partial"
  std::string error;             // set when status == "partial"
  std::optional<double> wall_ms;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<SummaryEntry> summary;
};

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed{0};
  unsigned threads{0};  // 0 = auto
  std::string out_path{"-"};
  Format format{Format::Csv};
  double abs_err{1e-10};
  bool timing{false};
};

// Shortest representation that parses back to the same double (<= 17
// significant digits), '.' decimal point regardless of locale.
std::string format_double(double v);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);

// Writes the rendered report to config.out_path ("-" = standard output).
void emit(const Report& report, const RunConfig& config);

}  // namespace hzeta
