#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qeac/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qeac::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qeac_cli_test_" + name);
}

}  // namespace

TEST_CASE("table rows") {
  const Result r = run({"table", "--l-max", "4"});
  REQUIRE(r.code == 0);
  const auto j = qeac::Json::parse(r.out);
  CHECK(j["rows"][3]["dark_count"] == 6);
  CHECK(j["rows"][3]["efficiency"].get<double>() == doctest::Approx(0.646241).epsilon(1e-6));
  CHECK(j["rows"][1]["dark_count"] == 2);
  CHECK(j["rows"][1]["efficiency"].get<double>() == 0.5);

  const Result csv = run({"table", "--l-max", "100", "--format", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream in(csv.out);
  std::string line, last;
  int rows = -1;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 100);
  CHECK(std::stod(last.substr(last.rfind(',') + 1)) < 1e-3);

  CHECK(run({"table", "--l-max", "0"}).code == 2);
  CHECK(run({"table", "--l-max", "201"}).code == 2);
  CHECK(run({"table", "--format", "xml"}).code == 2);
}

TEST_CASE("verify") {
  const Result r3 = run({"verify", "--l", "3"});
  CHECK(r3.code == 0);
  CHECK(r3.out.find("3 dark states") != std::string::npos);
  CHECK(r3.out.find("FAIL") == std::string::npos);
  const Result r5 = run({"verify", "--l", "5"});
  CHECK(r5.code == 0);
  CHECK(r5.out.find("10 dark states") != std::string::npos);
  CHECK(run({"verify", "--l", "1"}).code == 2);
  CHECK(run({"verify"}).code == 2);

  const auto path = scratch("verify.json");
  REQUIRE(run({"verify", "--l", "4", "--summary", path.string()}).code == 0);
  const auto j = qeac::Json::parse(slurp(path));
  CHECK(j["command"] == "verify");
  CHECK(j["checks"].size() == 4);
  for (const auto& c : j["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c["residual"].get<double>() <= 1e-10);
  }
  std::filesystem::remove(path);
}

TEST_CASE("codewords") {
  const Result r = run({"codewords", "--l", "3", "--source", "paper"});
  REQUIRE(r.code == 0);
  const auto j = qeac::Json::parse(r.out);
  CHECK(j["codewords"].size() == 3);
  CHECK(j["codewords"][0]["label"]["two_j"] == 1);
  CHECK(run({"codewords", "--l", "5", "--source", "paper"}).code == 1);
  CHECK(run({"codewords", "--l", "5"}).code == 0);
}

TEST_CASE("evolve preserves an encoded qubit under collective damping") {
  std::string header;
  const Result r = run({"evolve", "--model", "collective", "--c0", "0.6", "--c1", "0.8", "--gamma0", "1", "--t-max", "5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == "t,fidelity,trace,purity,excitation");
  CHECK(rows.size() == 51);
  for (const auto& row : rows) CHECK(row[1] >= 1.0 - 1e-8);
}

TEST_CASE("evolve reproduces the independent singlet decay") {
  const Result r = run({"evolve", "--model", "independent", "--singlet", "--gamma0", "1", "--t-max", "2", "--samples", "21"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[10][0] == 1.0);
  CHECK(std::abs(rows[10][1] - std::exp(-1.0)) <= 1e-6);
}

TEST_CASE("correlated evolution at coincident positions matches collective") {
  const auto geo = scratch("geo.json");
  std::ofstream(geo) << R"({"positions_m": [[0, 0, 0], [0, 0, 0]], "omega0_rad_s": 1e14, "v0_m_s": 3e8})";
  const Result a = run({"evolve", "--model", "correlated", "--geometry", geo.string(), "--initial", "11", "--t-max", "2"});
  const Result b = run({"evolve", "--model", "collective", "--initial", "11", "--t-max", "2"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto ra = parse_csv(a.out), rb = parse_csv(b.out);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t c = 0; c < ra[i].size(); ++c) CHECK(std::abs(ra[i][c] - rb[i][c]) <= 1e-9);

  CHECK(run({"evolve", "--model", "correlated", "--initial", "11"}).code == 2);
  CHECK(run({"evolve", "--model", "correlated", "--geometry", geo.string(), "--initial", "111"}).code == 1);
  std::filesystem::remove(geo);
}

TEST_CASE("evolve state selection and errors") {
  CHECK(run({"evolve"}).code == 2);
  CHECK(run({"evolve", "--singlet", "--initial", "11"}).code == 2);
  const Result bad = run({"evolve", "--c0", "1", "--c1", "1"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("NotNormalized", 0) == 0);
  const Result step = run({"evolve", "--initial", "1", "--dt", "0.3", "--t-max", "1", "--samples", "11"});
  CHECK(step.code == 1);
  CHECK(step.err.rfind("InvalidStep", 0) == 0);
  CHECK(run({"evolve", "--dark", "0.6,0.8", "--l", "3", "--t-max", "1", "--samples", "3"}).code == 0);

  const auto state = scratch("state.json");
  std::ofstream(state) << R"({"L": 1, "amplitudes": [[0, 0], [1, 0]]})";
  const Result f = run({"evolve", "--state", state.string(), "--t-max", "1", "--samples", "3"});
  REQUIRE(f.code == 0);
  CHECK(std::abs(parse_csv(f.out)[2][1] - std::exp(-1.0)) <= 1e-6);
  std::filesystem::remove(state);
}

TEST_CASE("separation sweep") {
  const Result r = run({"evolve", "--sweep-separation", "--t-max", "1", "--samples", "11"});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == "k0d,fidelity,max_trace_error,min_eigenvalue");
  REQUIRE(rows.size() == 21);
  CHECK(rows.back()[0] == doctest::Approx(2.0));
  CHECK(std::abs(rows[0][1] - 1.0) <= 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] <= rows[i - 1][1]);
}

TEST_CASE("trajectories") {
  const auto out1 = scratch("t1.csv"), out2 = scratch("t2.csv"), summary = scratch("s.json");
  const std::vector<std::string> base{"trajectories", "--l", "2", "--initial", "11", "--n", "5000",
                                      "--seed", "42", "--t-max", "2", "--samples", "21"};
  auto a1 = base;
  a1.insert(a1.end(), {"--out", out1.string(), "--summary", summary.string()});
  auto a2 = base;
  a2.insert(a2.end(), {"--out", out2.string(), "--workers", "3"});
  REQUIRE(run(a1).code == 0);
  const Result second = run(a2);
  REQUIRE(second.code == 0);
  CHECK(slurp(out1) == slurp(out2));
  const auto s = qeac::Json::parse(slurp(summary));
  CHECK(s["final_trace_distance"].get<double>() <= 0.02);
  CHECK(qeac::Json::parse(second.out) == s);
  std::string header;
  parse_csv(slurp(out1), &header);
  CHECK(header == "t,fidelity,trace,purity,excitation,trace_distance");

  const Result dark = run({"trajectories", "--singlet", "--n", "64", "--t-max", "1", "--samples", "11", "--out", out1.string()});
  REQUIRE(dark.code == 0);
  CHECK(qeac::Json::parse(dark.out)["total_jumps"] == 0);

  const Result big = run({"trajectories", "--initial", "11", "--dt", "0.05", "--t-max", "1", "--samples", "11"});
  CHECK(big.code == 1);
  CHECK(big.err.rfind("StepTooLarge", 0) == 0);
  for (const auto& p : {out1, out2, summary}) std::filesystem::remove(p);
}

TEST_CASE("help and unknown commands") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}
