#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cli.hpp"
#include "hzeta/harness.hpp"
#include "hzeta/report.hpp"
#include "hzeta/special.hpp"

using namespace hzeta;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("hzeta");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hzeta_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

Report sample_report() {
  Report r;
  r.subcommand = "eval";
  r.seed = 7;
  r.config = {{"sigma", "0.5"}, {"t", "100"}};
  r.columns = {"a", "b", "c"};
  r.rows.push_back({0.1, std::uint64_t{42}, std::string("tag")});
  r.rows.push_back({1.0 / 3.0, std::uint64_t{0}, std::string("x")});
  r.summary.push_back({"max", Cell{0.25}});
  return r;
}

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
  for (const double v : {0.1, 1.0 / 3.0, 1e-300, 1.6449340668482264,
                         12345678901234567.0, -2.5e17, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("CSV rendering: header first, fields round-trip") {
  const Report r = sample_report();
  const std::string csv = render_csv(r);

  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> data_lines;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      CHECK(!saw_header);  // meta comments precede the table
      continue;
    }
    if (!saw_header) {
      CHECK(line == "a,b,c");
      saw_header = true;
      continue;
    }
    data_lines.push_back(line);
  }
  REQUIRE(data_lines.size() == 2);
  CHECK(data_lines[0] == "0.1,42,tag");
  const std::string third = data_lines[1].substr(0, data_lines[1].find(','));
  CHECK(std::strtod(third.c_str(), nullptr) == 1.0 / 3.0);
  CHECK(csv.find("# config sigma=0.5\n") != std::string::npos);
  CHECK(csv.find("# summary max=0.25\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("empty rows give a header-only CSV table") {
  Report r = sample_report();
  r.rows.clear();
  const std::string csv = render_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::size_t table_lines = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0) ++table_lines;
  }
  CHECK(table_lines == 1);
}

TEST_CASE("JSON has the three top-level keys and round-trips bit-identically") {
  const Report r = sample_report();
  const std::string json = render_json(r);
  const auto doc = nlohmann::ordered_json::parse(json);
  REQUIRE(doc.size() == 3);
  CHECK(doc.contains("meta"));
  CHECK(doc.contains("rows"));
  CHECK(doc.contains("summary"));
  CHECK(doc["meta"]["seed"] == 7);
  CHECK(doc["rows"].size() == 2);
  const std::string again = doc.dump(2) + "\n";
  CHECK(again == json);
}

TEST_CASE("emit writes files and reports IO failures") {
  TempDir tmp;
  const Report r = sample_report();
  RunConfig cfg;
  cfg.out_path = (tmp.path / "out.csv").string();
  emit(r, cfg);
  CHECK(slurp(tmp.path / "out.csv") == render_csv(r));

  cfg.out_path = "/nonexistent_dir_hzeta/out.csv";
  CHECK_THROWS_AS(emit(r, cfg), IoError);
}

TEST_CASE("cli: eval emits one row matching a direct evaluation") {
  TempDir tmp;
  const std::string out = (tmp.path / "eval.csv").string();
  const int code = run_cli({"eval", "--sigma", "0.5", "--t", "100", "--omega",
                            "0.3", "--out", out});
  CHECK(code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("sigma,t,omega,re,im,abs,err_bound,terms,method") !=
        std::string::npos);

  // Parse the data row back and compare bitwise with the library result.
  std::istringstream in(csv);
  std::string line, data;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0 || line.rfind("sigma", 0) == 0) continue;
    data = line;
  }
  REQUIRE(!data.empty());
  std::vector<std::string> fields;
  std::istringstream fs_in(data);
  std::string field;
  while (std::getline(fs_in, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 9);
  const EvalResult r =
      hurwitz_zeta(SPoint{0.5, 100.0}, OmegaParam(0.3),
                   scaled_eval_target(1e-10, 0.5, 100.0, 0.3));
  CHECK(std::strtod(fields[3].c_str(), nullptr) == r.value.real());
  CHECK(std::strtod(fields[4].c_str(), nullptr) == r.value.imag());
  CHECK(fields[8] == "euler_maclaurin");
}

TEST_CASE("cli: unknown flag exits 2 and creates no file") {
  TempDir tmp;
  const std::string out = (tmp.path / "never.csv").string();
  const int code = run_cli({"eval", "--bogus-flag", "1", "--out", out});
  CHECK(code == 2);
  CHECK(!fs::exists(out));
}

TEST_CASE("cli: abs-err outside [1e-13, 1e-2] exits 2") {
  CHECK(run_cli({"eval", "--abs-err", "1e-14", "--out", "/dev/null"}) == 2);
  CHECK(run_cli({"eval", "--abs-err", "0.5", "--out", "/dev/null"}) == 2);
}

TEST_CASE("cli: numeric failure exits 1 with a partial report") {
  TempDir tmp;
  const std::string out = (tmp.path / "partial.csv").string();
  const int code = run_cli(
      {"eval", "--sigma", "1", "--t", "0", "--omega", "0.5", "--out", out});
  CHECK(code == 1);
  const std::string csv = slurp(out);
  CHECK(csv.find("# status=partial") != std::string::npos);
  CHECK(csv.find("# error=") != std::string::npos);
}

TEST_CASE("cli: rm-check reports zero violations") {
  TempDir tmp;
  const std::string out = (tmp.path / "rm.csv").string();
  const int code =
      run_cli({"rm-check", "--n", "6", "--trials", "2000", "--seed", "7",
               "--out", out});
  CHECK(code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("# summary violations=0") != std::string::npos);
  CHECK(csv.find("# summary telescope_failures=0") != std::string::npos);
}

TEST_CASE("cli: json output parses with meta/rows/summary") {
  TempDir tmp;
  const std::string out = (tmp.path / "eval.json").string();
  const int code = run_cli({"eval", "--sigma", "2", "--t", "5", "--omega",
                            "0.3", "--format", "json", "--out", out});
  CHECK(code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc.contains("meta"));
  CHECK(doc.contains("rows"));
  CHECK(doc.contains("summary"));
  CHECK(doc["meta"]["subcommand"] == "eval");
}

TEST_CASE("cli: identical config and seed give byte-identical files") {
  TempDir tmp;
  const std::string out1 = (tmp.path / "a.csv").string();
  const std::string out2 = (tmp.path / "b.csv").string();
  const std::vector<std::string> base{"tailmeasure", "--t",      "100",
                                      "--samples",   "1000",     "--seed",
                                      "3",           "--c-list", "1,2"};
  auto with_out = [&](const std::string& o, const std::string& threads) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--out", o, "--threads", threads});
    return args;
  };
  CHECK(run_cli(with_out(out1, "1")) == 0);
  CHECK(run_cli(with_out(out2, "4")) == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("cli: seed validation and 'random'") {
  CHECK(run_cli({"eval", "--seed", "notanumber", "--out", "/dev/null"}) == 2);
  CHECK(run_cli({"eval", "--sigma", "2", "--t", "1", "--omega", "0.5", "--seed",
                 "random", "--out", "/dev/null"}) == 0);
}

TEST_CASE("cli: LINDELOEF_THREADS applies when the flag is absent") {
  ::setenv("LINDELOEF_THREADS", "2", 1);
  const int code = run_cli(
      {"eval", "--sigma", "2", "--t", "1", "--omega", "0.5", "--out", "/dev/null"});
  ::unsetenv("LINDELOEF_THREADS");
  CHECK(code == 0);
}

TEST_CASE("cli: help exits 0") {
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"scan", "--help"}) == 0);
}

TEST_CASE("cli: mu emits a single summary row") {
  TempDir tmp;
  const std::string out = (tmp.path / "mu.csv").string();
  const int code = run_cli({"mu", "--sigma", "3", "--omega", "0.7", "--t-min",
                            "10", "--t-max", "10000", "--points", "120",
                            "--out", out});
  CHECK(code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("sigma,omega,mu_hat,blocks") != std::string::npos);
  // Exactly one data row.
  std::istringstream in(csv);
  std::string line;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0 || line.rfind("sigma", 0) == 0 || line.empty())
      continue;
    ++data_rows;
  }
  CHECK(data_rows == 1);
}

TEST_CASE("cli: --timing includes wall time, default omits it") {
  TempDir tmp;
  const std::string out1 = (tmp.path / "t1.csv").string();
  const std::string out2 = (tmp.path / "t2.csv").string();
  CHECK(run_cli({"eval", "--sigma", "2", "--t", "3", "--omega", "0.5", "--out",
                 out1}) == 0);
  CHECK(run_cli({"eval", "--sigma", "2", "--t", "3", "--omega", "0.5", "--out",
                 out2, "--timing"}) == 0);
  CHECK(slurp(out1).find("wall_ms") == std::string::npos);
  CHECK(slurp(out2).find("# wall_ms=") != std::string::npos);
}

TEST_CASE("cli: scan json mirrors rows and summary") {
  TempDir tmp;
  const std::string out = (tmp.path / "scan.json").string();
  const int code =
      run_cli({"scan", "--omega", "0.5", "--t-min", "10", "--t-max", "300",
               "--points", "16", "--format", "json", "--out", out});
  CHECK(code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["rows"].size() == 16);
  CHECK(doc["rows"][0].contains("t"));
  CHECK(doc["rows"][0].contains("ratio"));
  CHECK(doc["summary"].contains("global_max_ratio"));
  CHECK(doc["summary"].contains("tail_max_ratio"));
  CHECK(doc["meta"]["config"].contains("epsilon"));
}
