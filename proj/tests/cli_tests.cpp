// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary: output schema, determinism,
// format switches, and exit codes.  Takes the binary path as argv[1].

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int code = -1;
  std::string out;
};

std::string g_binary;
int g_failures = 0;

RunResult run(const std::string& arguments) {
  // Scrub REVERT_SEED so an ambient value cannot leak into the checks.
  const std::string command = "env -u REVERT_SEED " + g_binary + " " + arguments + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return {};
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void expect(bool condition, const std::string& label) {
  if (condition) {
    std::cout << "ok      " << label << "\n";
  } else {
    std::cout << "FAIL    " << label << "\n";
    ++g_failures;
  }
}

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

void test_clock_pmf_schema() {
  const RunResult result = run("clock --n 4 --mode pmf");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    good = good && !doc.at("meta").at("version").get<std::string>().empty();
    good = good && doc.at("meta").at("command") == "clock";
    good = good && doc.at("params").at("n") == 4;
    const Json& pmf = doc.at("result").at("pmf");
    good = good && near(pmf.at("1").get<double>(), 1.0 / 3.0);
    good = good && near(pmf.at("2").get<double>(), 0.5);
    good = good && near(pmf.at("3").get<double>(), 1.0 / 6.0);
  } catch (const std::exception&) {
    good = false;
  }
  expect(good, "clock pmf json schema and values");
}

void test_determinism() {
  const std::string command = "clock --n 6 --mode simulate --samples 2000 --seed 42 --threads 2";
  const RunResult first = run(command);
  const RunResult second = run(command);
  expect(first.code == 0 && first.out == second.out, "identical runs are byte-identical");

  const RunResult other = run("clock --n 6 --mode simulate --samples 2000 --seed 43 --threads 2");
  expect(other.code == 0 && other.out != first.out, "changing the seed changes the draw");

  const RunResult env = run("clock --n 6 --mode simulate --samples 2000 --threads 2");
  const std::string with_env =
      "REVERT_SEED=42 " + g_binary +
      " clock --n 6 --mode simulate --samples 2000 --threads 2 2>/dev/null";
  FILE* pipe = popen(with_env.c_str(), "r");
  std::string env_out;
  if (pipe != nullptr) {
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) env_out.append(buffer, got);
    pclose(pipe);
  }
  expect(env_out == first.out && env.out != first.out,
         "REVERT_SEED overrides the default seed only");
}

void test_csv_format() {
  const RunResult result = run("clock --n 4 --mode pmf --format csv");
  bool good = result.code == 0;
  good = good && result.out.rfind("# version=", 0) == 0;
  good = good && result.out.find("value,probability\n") != std::string::npos;
  good = good && result.out.find("\n2,0.5\n") != std::string::npos;
  expect(good, "csv output carries meta comments and the table");
}

void test_out_file() {
  const std::string path = "cli_test_out_tmp.json";
  const RunResult result = run("walk --n 4 --mode moments --out " + path);
  bool good = result.code == 0 && result.out.empty();
  std::ifstream file(path);
  std::stringstream content;
  content << file.rdbuf();
  try {
    const Json doc = Json::parse(content.str());
    good = good && near(doc.at("result").at("mean").get<double>(), 0.0);
    good = good && near(doc.at("result").at("variance").get<double>(), 11.0 / 6.0);
  } catch (const std::exception&) {
    good = false;
  }
  std::remove(path.c_str());
  expect(good, "--out writes the document to a file");
}

void test_occasional_moments() {
  const RunResult result = run("occasional --n 3 --q 0.5 --mode moments");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    good = good && near(doc.at("result").at("mean").get<double>(), 1.75);
    good = good && near(doc.at("result").at("second_moment").get<double>(), 3.25);
  } catch (const std::exception&) {
    good = false;
  }
  expect(good, "occasional moments");
}

void test_branching_extinction() {
  const std::string path = "cli_test_offspring_tmp.txt";
  {
    std::ofstream file(path);
    file << "# critical offspring law\n0 0.5\n2 0.5\n";
  }
  const RunResult result = run("branching --n 3 --offspring " + path + " --mode extinction");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    good = good && near(doc.at("result").at("value").get<double>(), 9.0 / 16.0);
    good = good && doc.at("result").at("exact") == "9/16";
  } catch (const std::exception&) {
    good = false;
  }
  std::remove(path.c_str());
  expect(good, "branching extinction with an offspring file");
}

void test_weights_file() {
  const std::string path = "cli_test_weights_tmp.txt";
  {
    std::ofstream file(path);
    file << "1\n2\n3\n";
  }
  const RunResult result = run("clock --n 4 --law weights:" + path + " --mode pmf");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    const Json& pmf = doc.at("result").at("pmf");
    good = good && near(pmf.at("1").get<double>(), 1.0 / 6.0);
    good = good && near(pmf.at("2").get<double>(), 0.5);
    good = good && near(pmf.at("3").get<double>(), 1.0 / 3.0);
  } catch (const std::exception&) {
    good = false;
  }
  std::remove(path.c_str());
  expect(good, "clock pmf under a weights file");
}

void test_threaded_counts() {
  const RunResult result = run("walk --n 12 --mode simulate --samples 9999 --threads 4 --seed 5");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    std::int64_t total = 0;
    for (const auto& [value, count] : doc.at("result").at("counts").items()) {
      total += count.get<std::int64_t>();
    }
    good = good && total == 9999;
  } catch (const std::exception&) {
    good = false;
  }
  expect(good, "threaded simulation conserves the sample count");
}

void test_verify_suite() {
  const RunResult result = run("verify --suite branching");
  bool good = result.code == 0;
  try {
    const Json doc = Json::parse(result.out);
    good = good && doc.at("result").at("failures") == 0;
    good = good && doc.at("result").at("total").get<std::int64_t>() > 0;
    good = good && doc.at("result").at("checks").is_array();
  } catch (const std::exception&) {
    good = false;
  }
  expect(good, "verify subcommand reports a green suite");
}

void test_exit_codes() {
  expect(run("clock --n 4 --mode bogus").code == 2, "unknown mode exits 2");
  expect(run("clock --mode pmf").code == 2, "missing required option exits 2");
  expect(run("unknowncmd").code == 2, "unknown subcommand exits 2");
  expect(run("clock --n 4 --law weights:no_such_file --mode pmf").code == 2,
         "unreadable weights file exits 2");
  expect(run("clock --n 20 --mode pmf").code == 2, "exact mode overflow exits 2");
  expect(run("--help").code == 0, "--help exits 0");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-binary>\n";
    return 2;
  }
  g_binary = argv[1];

  test_clock_pmf_schema();
  test_determinism();
  test_csv_format();
  test_out_file();
  test_occasional_moments();
  test_branching_extinction();
  test_weights_file();
  test_threaded_counts();
  test_verify_suite();
  test_exit_codes();

  if (g_failures > 0) {
    std::cout << g_failures << " cli check(s) failed\n";
    return 1;
  }
  std::cout << "all cli checks passed\n";
  return 0;
}
