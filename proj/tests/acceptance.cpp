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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "metrocommute/families.hpp"
#include "metrocommute/properties.hpp"
#include "metrocommute/worked_examples.hpp"

#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace metrocommute;

namespace {

constexpr std::uint64_t kSeed = 20261015;

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void suite(Criterion& c, const properties::SuiteResult& r) {
  c.check(r.violations == 0, r.name + ": " + std::to_string(r.draws) + " draws, " + std::to_string(r.violations) +
                                 " violations, max residual " + sci(r.max_residual) + " (threshold " + sci(r.threshold) + ")");
  for (const auto& f : r.failures) c.details.push_back("     " + f);
}

std::string show(const RealMatrix& m) {
  std::ostringstream os;
  os.precision(10);
  os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1) << "]]";
  return os.str();
}

void qfim_spot(Criterion& c, const std::string& label, const DensityMatrix& rho, const std::vector<Matrix>& hams,
               const RealMatrix& stated, bool singular) {
  const detail::Run run = detail::pipeline(rho, hams);
  const RealMatrix f = qfim(run.rho, run.sld).matrix;
  const double err = (f - stated).cwiseAbs().maxCoeff();
  c.check(err <= 1e-9, label + ": computed " + show(f) + ", stated " + show(stated) + ", max|diff| " + sci(err));
  if (singular) {
    bool raised = false;
    try {
      qcr_scalar(f, WeightMatrix::identity(2));
    } catch (const IdentifiabilityError&) {
      raised = true;
    }
    c.check(raised, label + ": bound evaluation reports a singular QFIM");
  }
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Criterion examples() {
  Criterion c{1, "worked examples reproduce their closed forms at 1e-8"};
  int passed = 0;
  const auto ids = example_ids();
  for (const auto& id : ids) {
    const ExampleReport r = run_example(id);
    const bool ok = r.pass && r.max_abs_error <= 1e-8;
    passed += ok;
    c.check(ok, id + " max|err| " + sci(r.max_abs_error));
  }
  c.check(ids.size() == 15 && passed == 15, std::to_string(passed) + "/" + std::to_string(ids.size()) + " reports pass");
  return c;
}

Criterion qfim_spots() {
  Criterion c{2, "QFIM spot values at 1e-9"};
  const double pi = std::acos(-1.0), r3 = std::sqrt(3.0);
  RealMatrix qutrit(2, 2), bell(2, 2), pair(2, 2);
  qutrit << 0.75, 3 * r3 / 4, 3 * r3 / 4, 2.25;
  bell << 2, -1.2, -1.2, 2;
  pair << 3, -3, -3, 3;
  qfim_spot(c, "qutrit rank-two, lambda = 1/4", family::qutrit_rank_two(pi / 4, 0.25),
            {family::qutrit_hprime(), family::qutrit_diag()}, qutrit, true);
  qfim_spot(c, "rank-three Bell mixture, (0.3, 0.2)", family::bell_rank_three(0.3, 0.2),
            {family::local(family::pauli('X'), 0, 2), family::local(family::pauli('X'), 1, 2)}, bell, false);
  qfim_spot(c, "two-qutrit pair, lambda = 1/3", family::qutrit_bell_pair(1.0 / 3.0),
            {family::local(family::qutrit_hprime(), 0, 2), family::local(family::qutrit_hprime(), 1, 2)}, pair, true);
  return c;
}

}  // namespace

int main() {
  using namespace properties;
  std::vector<Criterion> all;
  all.push_back(examples());
  all.push_back(qfim_spots());

  Criterion c3{3, "randomised identities, 500 draws each"};
  suite(c3, weak_routes(kSeed, 500));
  suite(c3, support_kernel_reassembly(kSeed, 500));
  suite(c3, projection_identities(kSeed, 500));
  suite(c3, hierarchy_chain(kSeed, 500));
  suite(c3, qubit_identity(kSeed, 500));
  suite(c3, white_noise(kSeed, 500));
  all.push_back(c3);

  Criterion c4{4, "Bell-diagonal states with local Hamiltonians have W = 0"};
  suite(c4, real_bell_diagonal(kSeed, 200));
  suite(c4, qubit_bell_diagonal(kSeed, 200));
  all.push_back(c4);

  Criterion c5{5, "classical Fisher ordering and single-parameter saturation"};
  suite(c5, fisher_ordering(kSeed, 200));
  suite(c5, optimal_measurement(kSeed, 200));
  all.push_back(c5);

  Criterion c6{6, "two-copy additivity and trace-norm PC equivalence"};
  suite(c6, additivity(kSeed, 50));
  suite(c6, pc_equivalence(kSeed, 200));
  all.push_back(c6);

  Criterion c7{7, "selftest output is byte-identical across runs"};
  const std::string cmd = std::string(METROCOMMUTE_BIN) + " selftest --seed 42 --draws 100 2>&1";
  const auto first = capture(cmd);
  const auto second = capture(cmd);
  c7.check(first.first == 0 && second.first == 0,
           "exit codes " + std::to_string(first.first) + ", " + std::to_string(second.first));
  c7.check(!first.second.empty() && first.second == second.second,
           "outputs identical (" + std::to_string(first.second.size()) + " bytes)");
  all.push_back(c7);

  bool ok = true;
  for (const auto& c : all) {
    for (const auto& d : c.details) std::cout << "  [" << c.id << "] " << d << "\n";
  }
  std::cout << "\n";
  for (const auto& c : all) {
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}
