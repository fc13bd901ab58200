// Copyright 2026 The metrocommute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "metrocommute/descriptor.hpp"
#include "metrocommute/properties.hpp"
#include "metrocommute/report.hpp"
#include "metrocommute/worked_examples.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace mc = metrocommute;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct Overrides {
  std::vector<double> theta;
  std::string weight_file;
  std::optional<double> rank_tol;
  std::optional<double> zero_tol;
};

mc::ProblemDescriptor load_with_overrides(const std::string& file, const Overrides& o) {
  mc::ProblemDescriptor d = mc::load_descriptor(file);
  if (!o.theta.empty()) d.theta = o.theta;
  if (o.rank_tol) d.rank_tol = *o.rank_tol;
  if (o.zero_tol) d.zero_tol = *o.zero_tol;
  if (!(d.rank_tol > 0) || !(d.zero_tol > 0)) throw mc::ValidationError("tolerances must be positive");
  if (!o.weight_file.empty()) {
    std::ifstream in(o.weight_file);
    if (!in) throw mc::ValidationError("cannot open weight file '" + o.weight_file + "'");
    mc::Json j;
    try {
      j = mc::Json::parse(in);
    } catch (const mc::Json::parse_error& e) {
      throw mc::ValidationError(std::string("weight file: malformed JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("weight_matrix")) j = j["weight_matrix"];
    d.weight_matrix = mc::detail::parse_real_matrix(j, "weight_matrix");
  }
  return d;
}

int cmd_classify(const std::string& file, const Overrides& o, bool json) {
  const mc::Analysis a = mc::analyze(mc::build_problem(load_with_overrides(file, o)));
  if (json) std::cout << mc::to_json(a).dump(2) << "\n";
  else std::cout << mc::to_text(a);
  return kExitOk;
}

mc::ExampleParams parse_example_params(const std::vector<std::string>& kv) {
  mc::ExampleParams out;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw mc::ValidationError("example parameter '" + s + "' must look like key=value");
    try {
      std::size_t used = 0;
      const double v = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      out[s.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw mc::ValidationError("example parameter '" + s + "' has a non-numeric value");
    }
  }
  return out;
}

int cmd_example(const std::string& id, const std::vector<std::string>& kv, bool json, bool verbose) {
  const mc::ExampleParams params = parse_example_params(kv);
  std::vector<std::string> ids;
  if (id == "all") {
    if (!params.empty()) throw mc::ValidationError("parameters cannot be combined with 'all'");
    ids = mc::example_ids();
  } else {
    ids = {id};
  }
  std::vector<mc::ExampleReport> reports;
  for (const auto& e : ids) reports.push_back(mc::run_example(e, params));
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (json) {
    mc::Json arr = mc::Json::array();
    for (const auto& r : reports) arr.push_back(mc::to_json(r));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << mc::to_text(r, verbose);
    int passed = 0;
    for (const auto& r : reports) passed += r.pass ? 1 : 0;
    std::cout << passed << "/" << reports.size() << " reports pass\n";
  }
  return all_pass ? kExitOk : kExitFailure;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw mc::ValidationError("--grid must look like a:b:n");
  double a = 0, b = 0;
  long n = 0;
  try {
    a = std::stod(spec.substr(0, c1));
    b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    n = std::stol(spec.substr(c2 + 1));
  } catch (const std::logic_error&) {
    throw mc::ValidationError("--grid must look like a:b:n");
  }
  if (n < 1 || n > 100000 || !std::isfinite(a) || !std::isfinite(b)) throw mc::ValidationError("--grid needs finite a, b and 1 <= n <= 100000");
  std::vector<double> pts;
  for (long k = 0; k < n; ++k) pts.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  return pts;
}

int cmd_sweep(const std::string& file, const Overrides& o, const std::string& param, const std::string& grid, int jobs) {
  const mc::ProblemDescriptor base = load_with_overrides(file, o);
  const std::vector<double> pts = parse_grid(grid);
  mc::with_parameter(base, param, pts.front());  // reject unknown names up front

  std::vector<std::string> rows(pts.size());
  std::vector<std::string> errors(pts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pts.size(); k = next++) {
      try {
        rows[k] = mc::sweep_row(pts[k], mc::analyze(mc::build_problem(mc::with_parameter(base, param, pts[k]))));
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(pts.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!errors[k].empty()) throw mc::ValidationError(param + " = " + std::to_string(pts[k]) + ": " + errors[k]);
  }
  std::cout << mc::kSweepHeader << "\n";
  for (const auto& r : rows) std::cout << r << "\n";
  return kExitOk;
}

int cmd_selftest(std::uint64_t seed, int draws) {
  const mc::properties::Summary s = mc::properties::selftest(seed, draws);
  std::cout << mc::properties::to_text(s);
  return s.violations() == 0 ? kExitOk : kExitFailure;
}

int default_jobs() {
  if (const char* env = std::getenv("METROCOMMUTE_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metrocommute: SLD commutativity conditions and quantum Fisher information for encoded states"};
  app.require_subcommand(1);

  Overrides ov;
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--rank-tol", ov.rank_tol, "eigenvalues at or below this count as kernel (default 1e-10)");
    sub->add_option("--zero-tol", ov.zero_tol, "relative threshold for a condition to hold (default 1e-8)");
  };

  std::string file;
  bool json = false;
  auto* classify = app.add_subcommand("classify", "classify a descriptor within the commutativity hierarchy");
  classify->add_option("file", file, "descriptor JSON")->required();
  classify->add_option("--theta", ov.theta, "evaluation point, one value per Hamiltonian")->delimiter(',');
  classify->add_option("--weight", ov.weight_file, "JSON file with a weight matrix (array of rows)");
  classify->add_flag("--json", json, "emit JSON");
  add_tolerances(classify);

  std::string id;
  std::vector<std::string> kv;
  bool verbose = false;
  auto* example = app.add_subcommand("example", "run a worked example against its closed forms");
  example->add_option("id", id, "example id or 'all'")->required();
  example->add_option("--param", kv, "override a default, key=value (repeatable)");
  example->add_flag("--json", json, "emit JSON");
  example->add_flag("-v,--verbose", verbose, "list every compared value");

  std::string param, grid;
  int jobs = default_jobs();
  auto* sweep = app.add_subcommand("sweep", "sweep one descriptor parameter over a grid; CSV on stdout");
  sweep->add_option("file", file, "descriptor JSON")->required();
  sweep->add_option("--param", param, "state parameter, H<i>.<key> or theta<i>")->required();
  sweep->add_option("--grid", grid, "a:b:n, n evenly spaced points")->required();
  sweep->add_option("--jobs", jobs, "worker threads (default $METROCOMMUTE_JOBS or 1)")->check(CLI::PositiveNumber);
  add_tolerances(sweep);

  std::uint64_t seed = 42;
  int draws = 100;
  auto* selftest = app.add_subcommand("selftest", "run the randomised property suites");
  selftest->add_option("--seed", seed, "generator seed");
  selftest->add_option("--draws", draws, "draws per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*classify) return cmd_classify(file, ov, json);
    if (*example) return cmd_example(id, kv, json, verbose);
    if (*sweep) return cmd_sweep(file, ov, param, grid, jobs);
    if (*selftest) return cmd_selftest(seed, draws);
  } catch (const mc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
