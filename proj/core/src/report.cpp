#include "hzeta/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hzeta/version.hpp"

namespace hzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_integer(std::int64_t v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_unsigned(std::uint64_t v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return format_integer(v);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return format_unsigned(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else {
          return v;
        }
      },
      cell);
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json { return ordered_json(v); }, cell);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string render_csv(const Report& report) {
  std::string out;
  out += "# tool=hzeta\n";
  out += std::string("# version=") + kVersion + "\n";
  out += "# subcommand=" + report.subcommand + "\n";
  out += "# seed=" + format_unsigned(report.seed) + "\n";
  for (const KeyValue& kv : report.config) {
    out += "# config " + kv.key + "=" + kv.value + "\n";
  }
  out += "# status=" + report.status + "\n";
  if (!report.error.empty()) out += "# error=" + report.error + "\n";
  if (report.wall_ms) out += "# wall_ms=" + format_double(*report.wall_ms) + "\n";
  for (const SummaryEntry& entry : report.summary) {
    out += "# summary " + entry.key + "=" + cell_to_csv(entry.value) + "\n";
  }

  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_to_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  ordered_json meta;
  meta["tool"] = "hzeta";
  meta["version"] = kVersion;
  meta["subcommand"] = report.subcommand;
  meta["seed"] = report.seed;
  ordered_json config = ordered_json::object();
  for (const KeyValue& kv : report.config) config[kv.key] = kv.value;
  meta["config"] = config;
  meta["status"] = report.status;
  if (!report.error.empty()) meta["error"] = report.error;
  if (report.wall_ms) meta["wall_ms"] = *report.wall_ms;

  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = cell_to_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }

  ordered_json summary = ordered_json::object();
  for (const SummaryEntry& entry : report.summary) {
    summary[entry.key] = cell_to_json(entry.value);
  }

  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

void emit(const Report& report, const RunConfig& config) {
  const std::string rendered =
      config.format == Format::Csv ? render_csv(report) : render_json(report);
  if (config.out_path == "-") {
    std::cout << rendered;
    std::cout.flush();
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + config.out_path);
  out << rendered;
  out.flush();
  if (!out.good()) throw IoError("write failed: " + config.out_path);
}

}  // namespace hzeta
