// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: named experiments over the reverting processes with
// machine-readable JSON/CSV output, plus the full verification suite.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "revert/branching.hpp"
#include "revert/clock.hpp"
#include "revert/integral.hpp"
#include "revert/laws.hpp"
#include "revert/nonuniform.hpp"
#include "revert/numeric.hpp"
#include "revert/occasional.hpp"
#include "revert/pmf.hpp"
#include "revert/random.hpp"
#include "revert/suites.hpp"
#include "revert/version.hpp"
#include "revert/walk.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 1;
  std::int64_t samples = 10'000;
  int threads = 1;
  double tail = 0.0;
};

std::uint64_t default_seed_from_environment() {
  const char* raw = std::getenv("REVERT_SEED");
  if (raw == nullptr || *raw == '\0') return 1;
  try {
    return static_cast<std::uint64_t>(std::stoull(raw));
  } catch (const std::exception&) {
    throw std::invalid_argument("REVERT_SEED is not an unsigned integer");
  }
}

// Registers the flags shared by every experiment subcommand.
void add_common_flags(CLI::App* cmd, CommonOptions* options, bool with_samples) {
  cmd->add_option("--format", options->format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", options->out_path, "Write output to this path instead of stdout");
  cmd->add_option("--seed", options->seed, "Random seed (default: REVERT_SEED or 1)")
      ->capture_default_str();
  cmd->add_option("--threads", options->threads, "Monte Carlo worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_samples) {
    cmd->add_option("--samples", options->samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

// ---------------------------------------------------------------------------
// Law and file parsing

std::vector<std::string> read_data_lines(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw std::invalid_argument("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(input, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string token;
    if (probe >> token) lines.push_back(line);
  }
  return lines;
}

revert::ReversionLaw parse_reversion_law(const std::string& text) {
  if (text == "uniform") return revert::ReversionLaw::uniform();
  if (text.rfind("power:", 0) == 0) {
    return revert::ReversionLaw::power_law(std::stod(text.substr(6)));
  }
  if (text.rfind("weights:", 0) == 0) {
    std::vector<double> weights;
    for (const auto& line : read_data_lines(text.substr(8))) {
      std::istringstream fields(line);
      double alpha = 0.0;
      if (!(fields >> alpha)) throw std::invalid_argument("bad weights line: " + line);
      std::string extra;
      if (fields >> extra) throw std::invalid_argument("expected one weight per line: " + line);
      weights.push_back(alpha);
    }
    return revert::ReversionLaw::explicit_weights(std::move(weights));
  }
  throw std::invalid_argument("unknown law '" + text + "' (want uniform, power:BETA, weights:FILE)");
}

revert::OffspringLaw parse_offspring_file(const std::string& path) {
  std::vector<std::pair<std::int64_t, double>> atoms;
  for (const auto& line : read_data_lines(path)) {
    std::istringstream fields(line);
    std::int64_t count = 0;
    double probability = 0.0;
    if (!(fields >> count >> probability)) {
      throw std::invalid_argument("bad offspring line (want 'count probability'): " + line);
    }
    std::string extra;
    if (fields >> extra) throw std::invalid_argument("trailing tokens in offspring line: " + line);
    atoms.emplace_back(count, probability);
  }
  return revert::OffspringLaw::from_atoms(std::move(atoms));
}

// Splits "mode:arg1,arg2" into the mode name and its numeric arguments.
std::pair<std::string, std::vector<double>> split_mode(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, {}};
  std::vector<double> arguments;
  std::string rest = text.substr(colon + 1);
  std::istringstream fields(rest);
  std::string piece;
  while (std::getline(fields, piece, ',')) arguments.push_back(std::stod(piece));
  if (arguments.empty()) throw std::invalid_argument("mode '" + text + "' is missing its argument");
  return {text.substr(0, colon), arguments};
}

// ---------------------------------------------------------------------------
// Output rendering

Json pmf_to_json(const revert::Pmf& pmf) {
  Json out = Json::object();
  for (const auto& [value, probability] : pmf.entries()) {
    out[std::to_string(value)] = probability;
  }
  return out;
}

Json counts_to_json(const std::map<std::int64_t, std::int64_t>& counts) {
  Json out = Json::object();
  for (const auto& [value, count] : counts) out[std::to_string(value)] = count;
  return out;
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

std::string scalar_to_csv(const Json& value) {
  if (value.is_string()) return csv_escape(value.get<std::string>());
  return value.dump();
}

void write_csv(std::ostream& os, const Json& document) {
  for (const auto& section : {"meta", "params"}) {
    for (const auto& [key, value] : document[section].items()) {
      os << "# " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump())
         << "\n";
    }
  }
  const Json& result = document["result"];
  // Scalars become comments when a table follows, rows otherwise.
  const char* table_key = nullptr;
  for (const auto* candidate : {"pmf", "counts", "trace", "checks", "final_m"}) {
    if (result.contains(candidate)) {
      table_key = candidate;
      break;
    }
  }
  if (table_key == nullptr) {
    os << "key,value\n";
    for (const auto& [key, value] : result.items()) {
      os << key << "," << scalar_to_csv(value) << "\n";
    }
    return;
  }
  for (const auto& [key, value] : result.items()) {
    if (key == table_key) continue;
    os << "# " << key << "=" << scalar_to_csv(value) << "\n";
  }
  const Json& table = result[table_key];
  const std::string key_name(table_key);
  if (key_name == "pmf" || key_name == "counts") {
    os << "value," << (key_name == "pmf" ? "probability" : "count") << "\n";
    for (const auto& [value, cell] : table.items()) os << value << "," << cell.dump() << "\n";
  } else if (key_name == "final_m") {
    os << "final_m\n";
    for (const auto& cell : table) os << cell.dump() << "\n";
  } else {
    if (table.empty()) return;
    bool first_column = true;
    for (const auto& [column, cell] : table.front().items()) {
      os << (first_column ? "" : ",") << column;
      first_column = false;
    }
    os << "\n";
    for (const auto& row : table) {
      first_column = true;
      for (const auto& [column, cell] : row.items()) {
        os << (first_column ? "" : ",") << scalar_to_csv(cell);
        first_column = false;
      }
      os << "\n";
    }
  }
}

void emit(const Json& document, const CommonOptions& options) {
  std::ostringstream buffer;
  if (options.format == "csv") {
    write_csv(buffer, document);
  } else {
    buffer << document.dump(2) << "\n";
  }
  if (options.out_path.empty()) {
    std::cout << buffer.str();
    return;
  }
  std::ofstream file(options.out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write file: " + options.out_path);
  file << buffer.str();
}

Json make_document(const std::string& command, const std::string& mode, Json params, Json result) {
  Json meta = Json::object();
  meta["version"] = revert::kVersionString;
  meta["command"] = command;
  meta["mode"] = mode;
  Json document = Json::object();
  document["meta"] = std::move(meta);
  document["params"] = std::move(params);
  document["result"] = std::move(result);
  return document;
}

// ---------------------------------------------------------------------------
// Monte Carlo helpers (deterministic per-worker streams, merged in order)

std::map<std::int64_t, std::int64_t> parallel_counts(
    std::int64_t samples, int threads, std::uint64_t seed,
    const std::function<std::int64_t(revert::RandomStream&)>& draw) {
  std::vector<std::map<std::int64_t, std::int64_t>> partial(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int worker = 0; worker < threads; ++worker) {
    pool.emplace_back([&, worker]() {
      revert::RandomStream rng(seed, static_cast<std::uint64_t>(worker));
      const std::int64_t begin = samples * worker / threads;
      const std::int64_t end = samples * (worker + 1) / threads;
      auto& local = partial[static_cast<std::size_t>(worker)];
      for (std::int64_t i = begin; i < end; ++i) ++local[draw(rng)];
    });
  }
  for (auto& thread : pool) thread.join();
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& local : partial) {
    for (const auto& [value, count] : local) merged[value] += count;
  }
  return merged;
}

std::vector<double> parallel_values(std::int64_t samples, int threads, std::uint64_t seed,
                                    const std::function<double(revert::RandomStream&)>& draw) {
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int worker = 0; worker < threads; ++worker) {
    pool.emplace_back([&, worker]() {
      revert::RandomStream rng(seed, static_cast<std::uint64_t>(worker));
      const std::int64_t begin = samples * worker / threads;
      const std::int64_t end = samples * (worker + 1) / threads;
      auto& local = partial[static_cast<std::size_t>(worker)];
      local.reserve(static_cast<std::size_t>(end - begin));
      for (std::int64_t i = begin; i < end; ++i) local.push_back(draw(rng));
    });
  }
  for (auto& thread : pool) thread.join();
  std::vector<double> merged;
  merged.reserve(static_cast<std::size_t>(samples));
  for (const auto& local : partial) merged.insert(merged.end(), local.begin(), local.end());
  return merged;
}

// ---------------------------------------------------------------------------
// Subcommands

int run_clock(std::int64_t n, const std::string& law_text, const std::string& mode,
              const CommonOptions& options) {
  const auto law = parse_reversion_law(law_text);
  const bool uniform = law.kind() == revert::ReversionLaw::Kind::kUniform;
  Json params = Json::object();
  params["n"] = n;
  params["law"] = law.describe();
  params["seed"] = options.seed;

  if (mode == "pmf") {
    const revert::Pmf pmf = uniform ? revert::clock_pmf(n, options.tail)
                                    : revert::weighted_clock_pmf(law, n, options.tail);
    Json result = Json::object();
    result["tail_tolerance"] = options.tail;
    result["truncated_mass"] = pmf.truncated_mass();
    result["pmf"] = pmf_to_json(pmf);
    emit(make_document("clock", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "moments") {
    const revert::ClockMoments moments =
        uniform ? revert::clock_moments(n) : revert::weighted_clock_moments(law, n);
    Json result = Json::object();
    result["n"] = moments.n;
    result["mean"] = moments.mean;
    result["variance"] = moments.variance;
    emit(make_document("clock", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "clt") {
    if (!uniform) {
      throw std::invalid_argument("clt mode supports the uniform law only");
    }
    const auto diagnostic = revert::clock_clt_diagnostic(n);
    Json result = Json::object();
    result["n"] = diagnostic.n;
    result["ks"] = diagnostic.ks;
    result["mean"] = diagnostic.mean;
    result["sigma"] = diagnostic.sigma;
    result["truncated_mass"] = diagnostic.truncated_mass;
    result["convention"] = diagnostic.convention;
    emit(make_document("clock", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "simulate") {
    const auto counts = parallel_counts(
        options.samples, options.threads, options.seed,
        [&law, n](revert::RandomStream& rng) {
          return revert::simulate_clock_trajectory(n, law, rng).T(n);
        });
    Json result = Json::object();
    result["samples"] = options.samples;
    result["counts"] = counts_to_json(counts);
    emit(make_document("clock", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  throw std::invalid_argument("unknown clock mode '" + mode +
                              "' (want pmf, moments, clt, simulate)");
}

int run_walk(std::int64_t n, double p, const std::string& mode, double theta,
             const CommonOptions& options) {
  Json params = Json::object();
  params["n"] = n;
  params["p"] = p;
  params["seed"] = options.seed;

  if (mode == "pmf") {
    revert::Pmf pmf;
    if (options.tail == 0.0 && n <= revert::kExactPmfLimit) {
      pmf = revert::walk_pmf_simple(n, p);
    } else {
      pmf = revert::walk_pmf_mixture(n, p, options.tail);
    }
    Json result = Json::object();
    result["tail_tolerance"] = options.tail;
    result["truncated_mass"] = pmf.truncated_mass();
    result["pmf"] = pmf_to_json(pmf);
    emit(make_document("walk", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "moments") {
    const auto [mean, variance] = revert::walk_moments(n, revert::StepLaw::rademacher(p));
    Json result = Json::object();
    result["n"] = n;
    result["mean"] = mean;
    result["variance"] = variance;
    emit(make_document("walk", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "cf") {
    const auto value = revert::walk_char_function(n, theta, revert::rademacher_cf(p));
    Json result = Json::object();
    result["theta"] = theta;
    result["real"] = value.real();
    result["imag"] = value.imag();
    result["abs"] = std::abs(value);
    emit(make_document("walk", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "simulate") {
    const auto steps = revert::StepLaw::rademacher(p);
    const auto law = revert::ReversionLaw::uniform();
    const auto counts = parallel_counts(
        options.samples, options.threads, options.seed,
        [&steps, &law, n](revert::RandomStream& rng) {
          return std::llround(revert::simulate_walk_recursive(n, steps, law, rng).R(n));
        });
    Json result = Json::object();
    result["samples"] = options.samples;
    result["counts"] = counts_to_json(counts);
    emit(make_document("walk", mode, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  throw std::invalid_argument("unknown walk mode '" + mode + "' (want pmf, moments, cf, simulate)");
}

int run_integral(std::int64_t n, const std::string& mode_text, const CommonOptions& options) {
  const auto [mode, arguments] = split_mode(mode_text);
  Json params = Json::object();
  params["n"] = n;
  params["seed"] = options.seed;

  if (mode == "variance") {
    const auto variance = revert::martingale_variance(n);
    Json result = Json::object();
    result["n"] = variance.n;
    result["q_n"] = variance.q_n;
    result["variance"] = variance.variance;
    result["limit"] = variance.limit;
    emit(make_document("integral", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "covariance") {
    if (arguments.size() != 1) throw std::invalid_argument("covariance mode wants covariance:M");
    const auto m = static_cast<std::int64_t>(arguments[0]);
    Json result = Json::object();
    result["n"] = n;
    result["m"] = m;
    result["covariance"] = revert::clock_covariance(n, m);
    emit(make_document("integral", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "simulate") {
    const auto finals = parallel_values(options.samples, options.threads, options.seed,
                                        [n](revert::RandomStream& rng) {
                                          const auto trajectory =
                                              revert::simulate_clock_recursive(n, rng);
                                          return revert::integrated_trace(trajectory).back().m;
                                        });
    revert::CompensatedSum sum;
    revert::CompensatedSum squares;
    for (const double value : finals) {
      sum.add(value);
      squares.add(value * value);
    }
    const double mean = sum.value() / static_cast<double>(finals.size());
    Json result = Json::object();
    result["samples"] = options.samples;
    result["mean"] = mean;
    result["variance"] = squares.value() / static_cast<double>(finals.size()) - mean * mean;
    result["final_m"] = finals;
    emit(make_document("integral", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  throw std::invalid_argument("unknown integral mode '" + mode_text +
                              "' (want variance, covariance:M, simulate)");
}

int run_occasional(std::int64_t n, double q, const std::string& mode_text, double series_tolerance,
                   const CommonOptions& options) {
  const auto [mode, arguments] = split_mode(mode_text);
  Json params = Json::object();
  params["n"] = n;
  params["q"] = q;
  params["seed"] = options.seed;

  if (mode == "pmf") {
    const revert::Pmf pmf = revert::occasional_pmf(n, q, options.tail);
    Json result = Json::object();
    result["tail_tolerance"] = options.tail;
    result["truncated_mass"] = pmf.truncated_mass();
    result["pmf"] = pmf_to_json(pmf);
    emit(make_document("occasional", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "moments") {
    const auto moments = revert::occasional_moments(n, q);
    Json result = Json::object();
    result["n"] = moments.n;
    result["q"] = moments.q;
    result["mean"] = moments.mean;
    result["second_moment"] = moments.second_moment;
    result["variance"] = moments.variance;
    result["ratio"] = moments.ratio;
    emit(make_document("occasional", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "gf") {
    if (arguments.size() != 2) throw std::invalid_argument("gf mode wants gf:S,Z");
    Json result = Json::object();
    result["s"] = arguments[0];
    result["z"] = arguments[1];
    result["value"] = revert::occasional_bivariate_gf(arguments[0], arguments[1], q);
    emit(make_document("occasional", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "dobrushin") {
    const auto diagnostic = revert::dobrushin_diagnostic(n, q);
    Json result = Json::object();
    result["n"] = diagnostic.n;
    result["q"] = diagnostic.q;
    result["alpha"] = diagnostic.alpha;
    result["var_sum"] = diagnostic.var_sum;
    result["var_sum_lower_bound"] = diagnostic.var_sum_lower_bound;
    result["condition_value"] = diagnostic.condition_value;
    emit(make_document("occasional", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "martingale") {
    revert::RandomStream rng(options.seed, 0);
    const auto trace = revert::occasional_martingale_trace(options.samples, q, rng,
                                                           series_tolerance);
    Json rows = Json::array();
    for (const auto& entry : trace) {
      Json row = Json::object();
      row["epoch"] = entry.epoch;
      row["stage"] = entry.stage;
      row["s"] = entry.s;
      row["m"] = entry.m;
      row["correction"] = entry.correction;
      row["truncation_error"] = entry.truncation_error;
      rows.push_back(std::move(row));
    }
    Json result = Json::object();
    result["epochs"] = options.samples;
    result["series_tolerance"] = series_tolerance;
    result["trace"] = std::move(rows);
    emit(make_document("occasional", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  throw std::invalid_argument("unknown occasional mode '" + mode_text +
                              "' (want pmf, moments, gf:S,Z, dobrushin, martingale)");
}

int run_branching(std::int64_t n, const std::string& offspring_path, const std::string& mode_text,
                  std::int64_t population_cap, const CommonOptions& options) {
  const auto offspring = parse_offspring_file(offspring_path);
  const auto [mode, arguments] = split_mode(mode_text);
  Json params = Json::object();
  params["n"] = n;
  params["offspring_file"] = offspring_path;
  Json atoms = Json::object();
  for (const auto& [count, probability] : offspring.atoms()) {
    atoms[std::to_string(count)] = probability;
  }
  params["offspring"] = std::move(atoms);
  params["seed"] = options.seed;

  if (mode == "pgf") {
    if (arguments.size() != 1) throw std::invalid_argument("pgf mode wants pgf:S");
    Json result = Json::object();
    result["s"] = arguments[0];
    result["value"] = revert::reverting_gw_pgf(n, offspring, arguments[0]);
    emit(make_document("branching", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "extinction") {
    Json result = Json::object();
    result["value"] = revert::extinction_probability(n, offspring);
    if (n <= revert::kExactPmfLimit) {
      result["exact"] = revert::extinction_probability_exact(n, offspring).str();
    } else {
      result["exact"] = nullptr;
    }
    emit(make_document("branching", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  if (mode == "simulate") {
    std::int64_t extinct = 0;
    std::int64_t capped = 0;
    std::map<std::int64_t, std::int64_t> counts;
    // Capped runs do not produce an X_n; they are tallied separately.
    const auto totals = parallel_values(
        options.samples, options.threads, options.seed,
        [&offspring, n, population_cap](revert::RandomStream& stream) {
          const auto trajectory =
              revert::simulate_reverting_gw(n, offspring, stream, population_cap);
          if (trajectory.capped) return -1.0;
          return static_cast<double>(trajectory.values.back());
        });
    for (const double value : totals) {
      if (value < 0.0) {
        ++capped;
        continue;
      }
      const auto population = static_cast<std::int64_t>(value);
      ++counts[population];
      if (population == 0) ++extinct;
    }
    Json result = Json::object();
    result["samples"] = options.samples;
    result["population_cap"] = population_cap;
    result["extinct"] = extinct;
    result["capped"] = capped;
    result["counts"] = counts_to_json(counts);
    emit(make_document("branching", mode_text, std::move(params), std::move(result)), options);
    return kExitOk;
  }
  throw std::invalid_argument("unknown branching mode '" + mode_text +
                              "' (want pgf:S, extinction, simulate)");
}

int run_verify(const std::string& suite, const CommonOptions& options) {
  const auto checks = revert::verify::run_suite(suite);
  Json rows = Json::array();
  std::int64_t failures = 0;
  for (const auto& check : checks) {
    Json row = Json::object();
    row["name"] = check.name;
    row["passed"] = check.passed;
    row["detail"] = check.detail;
    rows.push_back(std::move(row));
    if (!check.passed) ++failures;
  }
  Json params = Json::object();
  params["suite"] = suite;
  Json result = Json::object();
  result["failures"] = failures;
  result["total"] = static_cast<std::int64_t>(checks.size());
  result["checks"] = std::move(rows);
  emit(make_document("verify", suite, std::move(params), std::move(result)), options);
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverting stochastic processes: exact laws, simulation, and verification"};
  app.require_subcommand(1);

  CommonOptions options;
  try {
    options.seed = default_seed_from_environment();
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }

  std::int64_t n = 1;
  std::string mode;
  std::string law_text = "uniform";
  double p = 0.5;
  double q = 0.5;
  double theta = 1.0;
  double series_tolerance = 1e-10;
  std::string offspring_path;
  std::int64_t population_cap = revert::kPopulationCap;
  std::string suite = "all";

  auto* clock_cmd = app.add_subcommand("clock", "Reverting clock T_n");
  clock_cmd->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  clock_cmd->add_option("--law", law_text, "uniform | power:BETA | weights:FILE")
      ->capture_default_str();
  clock_cmd->add_option("--mode", mode, "pmf | moments | clt | simulate")->required();
  clock_cmd->add_option("--tail", options.tail, "Tail mass tolerance for large-n pmfs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common_flags(clock_cmd, &options, true);

  auto* walk_cmd = app.add_subcommand("walk", "Reverting simple random walk R_n");
  walk_cmd->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  walk_cmd->add_option("--p", p, "Up-step probability")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  walk_cmd->add_option("--mode", mode, "pmf | moments | cf | simulate")->required();
  walk_cmd->add_option("--theta", theta, "Argument for cf mode")->capture_default_str();
  walk_cmd->add_option("--tail", options.tail, "Tail mass tolerance for large-n pmfs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common_flags(walk_cmd, &options, true);

  auto* integral_cmd = app.add_subcommand("integral", "Time-integral martingale M_n");
  integral_cmd->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  integral_cmd->add_option("--mode", mode, "variance | covariance:M | simulate")->required();
  add_common_flags(integral_cmd, &options, true);

  auto* occasional_cmd = app.add_subcommand("occasional", "Occasionally reverting clock");
  occasional_cmd->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  occasional_cmd->add_option("--q", q, "Reversion attempt probability")->required()
      ->check(CLI::Range(0.0, 1.0));
  occasional_cmd
      ->add_option("--mode", mode, "pmf | moments | gf:S,Z | dobrushin | martingale")
      ->required();
  occasional_cmd->add_option("--tail", options.tail, "Tail mass tolerance for large-n pmfs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  occasional_cmd
      ->add_option("--series-tol", series_tolerance, "Correction series tail bound (martingale)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common_flags(occasional_cmd, &options, true);

  auto* branching_cmd = app.add_subcommand("branching", "Reverting Galton-Watson process");
  branching_cmd->add_option("--n", n, "Index n")->required()->check(CLI::PositiveNumber);
  branching_cmd->add_option("--offspring", offspring_path, "Offspring law file")->required();
  branching_cmd->add_option("--mode", mode, "pgf:S | extinction | simulate")->required();
  branching_cmd->add_option("--cap", population_cap, "Population cap for simulation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common_flags(branching_cmd, &options, true);

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
  verify_cmd->add_option("--suite", suite, "all | clock | walk | integral | occasional | branching")
      ->check(CLI::IsMember({"all", "clock", "walk", "integral", "occasional", "branching"}))
      ->capture_default_str();
  add_common_flags(verify_cmd, &options, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (clock_cmd->parsed()) return run_clock(n, law_text, mode, options);
    if (walk_cmd->parsed()) return run_walk(n, p, mode, theta, options);
    if (integral_cmd->parsed()) return run_integral(n, mode, options);
    if (occasional_cmd->parsed()) return run_occasional(n, q, mode, series_tolerance, options);
    if (branching_cmd->parsed()) {
      return run_branching(n, offspring_path, mode, population_cap, options);
    }
    if (verify_cmd->parsed()) return run_verify(suite, options);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
