#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* bin = std::getenv("SQUEEZEFLOW_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SQUEEZEFLOW_BIN must point at the CLI");
  return bin;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// strtod instead of std::stod: report probabilities can be subnormal, which
// stod reports as out_of_range
double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  REQUIRE(end != s.c_str());
  return v;
}

std::map<std::string, double> parse_report(const std::string& csv) {
  std::map<std::string, double> fields;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "field,value") continue;
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    fields[line.substr(0, comma)] = to_double(line.substr(comma + 1));
  }
  return fields;
}

std::vector<std::vector<double>> parse_table(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(to_double(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sqz_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("simulate reproduces the critical squeezing") {
  const auto res = run_cli("simulate --alpha 1 --g 0 --t-start -40 --t-end 40 --tol 1e-10");
  REQUIRE(res.exit_code == 0);
  const auto fields = parse_report(res.out);
  CHECK(std::abs(fields.at("tanh_r") - 0.7071) < 5e-3);
  CHECK(std::abs(fields.at("closed_form_tanh_r") - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(fields.at("abs_err_tanh_r") < 5e-3);
  CHECK(fields.at("p_1") == 0.0);
  // echoes the exact config
  CHECK(fields.at("alpha") == 1.0);
  CHECK(fields.at("t_end") == 40.0);
  CHECK(fields.at("tol") == 1e-10);
}

TEST_CASE("simulate in the adiabatic regime") {
  const auto res = run_cli("simulate --alpha 1 --g 3 --t-start -40 --t-end 40");
  REQUIRE(res.exit_code == 0);
  const auto fields = parse_report(res.out);
  CHECK(fields.at("closed_form_tanh_r") < 1e-6);
  CHECK(fields.at("fidelity") > 1.0 - 1e-6);
  CHECK(fields.at("tanh_r") < 1e-3);
}

TEST_CASE("simulate matches the gapped closed form") {
  const auto res = run_cli("simulate --alpha 1 --g 1 --t-start -60 --t-end 60");
  REQUIRE(res.exit_code == 0);
  const auto fields = parse_report(res.out);
  CHECK(std::abs(fields.at("tanh_r") - 1.0 / std::sqrt(1.0 + std::exp(M_PI))) < 5e-3);
  CHECK(fields.at("abs_err_tanh_r") < 5e-3);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("simulate --tol 0").exit_code == 3);
  CHECK(run_cli("simulate --tol 1e-2").exit_code == 3);
  CHECK(run_cli("simulate --t-start 5 --t-end 1").exit_code == 3);
  CHECK(run_cli("simulate --alpha -1").exit_code == 3);
  CHECK(run_cli("no-such-command").exit_code == 3);
  CHECK(run_cli("simulate --tol 1e-300").exit_code == 2);
  CHECK(run_cli("simulate --out /nonexistent_dir/report.csv").exit_code == 4);
  CHECK(run_cli("simulate --format yaml").exit_code == 3);
}

TEST_CASE("byte-identical reruns") {
  TempDir tmp;
  const auto a = tmp.path / "a.csv";
  const auto b = tmp.path / "b.csv";
  const std::string args = "simulate --t-start -20 --t-end 20 --tol 1e-9 --n-max 32 --out ";
  REQUIRE(run_cli(args + a.string()).exit_code == 0);
  REQUIRE(run_cli(args + b.string()).exit_code == 0);
  const std::string bytes_a = slurp(a);
  CHECK(!bytes_a.empty());
  CHECK(bytes_a == slurp(b));

  const std::string jargs =
      "simulate --t-start -20 --t-end 20 --format json --out ";
  REQUIRE(run_cli(jargs + a.string()).exit_code == 0);
  REQUIRE(run_cli(jargs + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("config file feeds defaults and flags override") {
  TempDir tmp;
  const auto cfg = tmp.path / "cfg.json";
  std::ofstream(cfg) << R"({"alpha": 2.0, "tol": 1e-9, "n_max": 6})";
  const auto res = run_cli("simulate --config " + cfg.string() +
                           " --alpha 1.0 --t-start -10 --t-end 10");
  REQUIRE(res.exit_code == 0);
  const auto fields = parse_report(res.out);
  CHECK(fields.at("alpha") == 1.0);  // flag wins
  CHECK(fields.at("tol") == 1e-9);   // config wins over default
  CHECK(fields.count("p_6") == 1);
  CHECK(fields.count("p_7") == 0);

  std::ofstream(cfg) << "not json";
  CHECK(run_cli("simulate --config " + cfg.string()).exit_code == 3);
  CHECK(run_cli("simulate --config /no/such/file.json").exit_code == 3);
}

TEST_CASE("trajectory rows trace the disk") {
  const auto res = run_cli("trajectory --t-start -30 --t-end 30 --grid 241");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_table(res.out);
  REQUIRE(rows.size() == 241);
  CHECK(rows.front()[1] == 0.0);  // re z
  CHECK(rows.front()[2] == 0.0);  // im z

  double best_t = -1.0, best = -1.0;
  for (const auto& row : rows) {
    const double mag = std::hypot(row[1], row[2]);
    CHECK(std::abs(row[5] - mag) < 1e-12);
    if (mag > best) {
      best = mag;
      best_t = row[0];
    }
  }
  CHECK(std::abs(best_t) < 0.26);  // boundary approach at the collapse
  CHECK(best > 0.999);
  CHECK(best < 1.0);

  const auto& last = rows.back();
  CHECK(std::abs(last[3] - 0.0) < 5e-2);
  CHECK(std::abs(last[4] + 1.0 / std::sqrt(2.0)) < 5e-2);

  // deterministic row order
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0] > rows[i - 1][0]);
}

TEST_CASE("spectrum fan emits the level collapse") {
  const auto res =
      run_cli("spectrum-fan --alpha 1 --g 0 --t-start -2 --t-end 2 --grid 5 --n-max 3");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_table(res.out);
  REQUIRE(rows.size() == 15);
  for (const auto& row : rows) {
    if (row[0] == 0.0) CHECK(row[2] == 0.0);
    if (row[0] == 2.0 && row[1] == 0.0) CHECK(row[2] == doctest::Approx(1.0));
  }
  const auto gapped =
      run_cli("spectrum-fan --alpha 1 --g 3 --t-start 0 --t-end 1 --grid 2 --n-max 2");
  const auto grows = parse_table(gapped.out);
  CHECK(grows[1][2] == doctest::Approx(4.5));  // n = 1 at t = 0: 3 * 3/2
}

TEST_CASE("lz-compare sweeps the gap") {
  const auto res = run_cli("lz-compare --delta-sq 3,0,2 --jobs 3");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_table(res.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == 0.0);  // sorted by delta_sq
  CHECK(rows[1][0] == 2.0);
  CHECK(rows[2][0] == 3.0);
  CHECK(std::abs(rows[0][1] - (1.0 - 1.0 / std::sqrt(2.0))) < 1e-2);
  for (size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i][1] / rows[i][2];
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
  }
  CHECK(rows[2][3] == doctest::Approx(std::exp(-1.5 * M_PI)).epsilon(1e-12));

  // worker count must not affect the bytes
  const auto serial = run_cli("lz-compare --delta-sq 3,0,2 --jobs 1");
  CHECK(serial.out == res.out);

  CHECK(run_cli("lz-compare --delta-sq -1").exit_code == 3);
}

TEST_CASE("SQUEEZEFLOW_JOBS feeds the worker default") {
  const std::string args = "lz-compare --delta-sq 0.5,1";
  const auto plain = run_cli(args);
  REQUIRE(plain.exit_code == 0);
  const std::string with_env = "SQUEEZEFLOW_JOBS=2 " + binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(with_env.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(out == plain.out);  // worker count must not change the bytes

  // junk env is only an error when nothing overrides it
  CHECK(run_cli("lz-compare --delta-sq 1 --jobs 0").exit_code == 3);
}

TEST_CASE("geometry-check reports tiny residuals") {
  const auto res = run_cli("geometry-check --grid 12");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_table(res.out);
  REQUIRE(rows.size() == 12);
  for (const auto& row : rows) {
    CHECK(row[2] < 1e-6);   // fd residual
    CHECK(row[3] < 1e-10);  // two-route error
    CHECK(row[4] < 1e-4);   // curvature error
  }
}

TEST_CASE("json format carries the same payload") {
  const auto res = run_cli("simulate --t-start -10 --t-end 10 --format json --n-max 4");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("\"tanh_r\"") != std::string::npos);
  CHECK(res.out.find("\"probabilities\"") != std::string::npos);
  CHECK(res.out.find("\"config\"") != std::string::npos);
}

TEST_SUITE_END();
