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

#pragma once

// Randomised property suites. Each suite owns its generator, seeded from (seed, suite index),
// so suites can be run alone or in any order with the same outcome.

#include "metrocommute/closed_forms.hpp"
#include "metrocommute/conditions.hpp"
#include "metrocommute/encoding.hpp"
#include "metrocommute/families.hpp"
#include "metrocommute/metrology.hpp"
#include "metrocommute/random.hpp"
#include "metrocommute/sld.hpp"
#include "metrocommute/states.hpp"
#include "metrocommute/worked_examples.hpp"

#include <cstdio>

namespace metrocommute::properties {

struct SuiteResult {
  std::string name;
  int draws = 0;
  int violations = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::vector<std::string> failures;  // first few failing draws

  bool ok() const { return violations == 0; }

  void record(int draw, double residual) {
    if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
    max_residual = std::max(max_residual, residual);
    if (!(residual <= threshold)) fail(draw, "residual " + std::to_string(residual));
  }

  void check(int draw, bool good, const std::string& what) {
    if (!good) fail(draw, what);
  }

 private:
  void fail(int draw, const std::string& what) {
    ++violations;
    if (failures.size() < 5) failures.push_back("draw " + std::to_string(draw) + ": " + what);
  }
};

inline random::Rng suite_rng(std::uint64_t seed, int suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(suite)};
  return random::Rng(seq);
}

struct Draw {
  DensityMatrix rho;
  EncodingPoint pt;
  SldSet sld;
};

inline Draw make_draw(const DensityMatrix& rho, const std::vector<Matrix>& hams, const std::vector<double>& theta) {
  std::vector<HermitianOperator> ops;
  for (const auto& h : hams) ops.emplace_back(h);
  EncodingPoint pt = encode(HamiltonianSet(std::move(ops)), theta);
  SldSet sld = sld_rotated(rho.spectrum(), pt);
  return {rho, std::move(pt), std::move(sld)};
}

// Generic draw: dim 2..max_dim, rank 1..dim, m Hamiltonians, random theta.
inline Draw random_draw(random::Rng& rng, int max_dim, int m) {
  const int d = random::integer(rng, 2, max_dim);
  const int r = random::integer(rng, 1, d);
  const DensityMatrix rho = random::state(rng, d, r);
  std::vector<Matrix> hams;
  std::vector<double> theta;
  for (int i = 0; i < m; ++i) {
    hams.push_back(random::hermitian(rng, d));
    theta.push_back(random::normal(rng));
  }
  return make_draw(rho, hams, theta);
}

// Draws that sit on the boundary of the conditions: Hamiltonians diagonal in the state's
// eigenbasis (all conditions hold) or the qutrit family at alpha = pi/4 (PC without OC).
inline Draw structured_draw(random::Rng& rng, int max_dim, int m) {
  if (random::integer(rng, 0, 1) == 0) {
    const int d = random::integer(rng, 2, max_dim);
    const DensityMatrix rho = random::state(rng, d, random::integer(rng, 1, d));
    const Matrix& v = rho.spectrum().eigenvectors;
    std::vector<Matrix> hams;
    for (int i = 0; i < m; ++i) {
      Matrix diag = Matrix::Zero(d, d);
      for (int k = 0; k < d; ++k) diag(k, k) = random::normal(rng);
      hams.push_back(v * diag * v.adjoint());
    }
    return make_draw(rho, hams, std::vector<double>(static_cast<std::size_t>(m), 0.0));
  }
  const double lambda = random::uniform(rng, 0.05, 0.95);
  const DensityMatrix rho = family::qutrit_rank_two(std::acos(-1.0) / 4, lambda);
  std::vector<Matrix> hams = {random::normal(rng) * family::qutrit_h() + random::normal(rng) * family::qutrit_hprime(),
                              family::qutrit_diag()};
  return make_draw(rho, hams, {0.0, 0.0});
}

inline double max_gap(const OperatorConditionMatrix& a, const OperatorConditionMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.m; ++i) {
    for (std::size_t j = 0; j < a.m; ++j) worst = std::max(worst, (a.at(i, j) - b.at(i, j)).norm());
  }
  return worst;
}

inline SuiteResult weak_routes(std::uint64_t seed, int draws) {
  SuiteResult res{"weak-matrix routes agree", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 1);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 9, random::integer(rng, 2, 3));
    const Matrix direct = weak_direct(dr.rho, dr.sld).entries;
    double gap = (weak_decomposed(dr.rho.spectrum(), dr.pt).weak.entries - direct).norm();
    gap = std::max(gap, (weak_integral(dr.rho.spectrum(), dr.pt).entries - direct).norm());
    if (dr.rho.rank() == 2) {
      const Matrix fast = weak_decomposed(dr.rho.spectrum(), dr.pt).gamma.entries + weak_rank_two(dr.rho.spectrum(), dr.pt).entries;
      gap = std::max(gap, (fast - direct).norm());
    }
    // Encoded frame: W is unchanged by the unitary.
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const std::vector<HermitianOperator> enc = encoded_slds(dr.sld, dr.pt);
    gap = std::max(gap, (weak_direct(rho_theta.matrix(), enc).entries - direct).norm());
    res.record(k, gap);
  }
  return res;
}

inline SuiteResult sld_routes(std::uint64_t seed, int draws) {
  SuiteResult res{"SLD spectral vs Lyapunov", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 2);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 6, 2);
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const std::vector<HermitianOperator> enc = encoded_slds(dr.sld, dr.pt);
    double gap = 0.0;
    for (std::size_t i = 0; i < enc.size(); ++i) {
      const HermitianOperator l = sld_lyapunov(rho_theta, encoded_derivative(dr.rho, dr.pt, i));
      gap = std::max(gap, (l.matrix() - enc[i].matrix()).norm());
    }
    res.record(k, gap);
  }
  return res;
}

inline SuiteResult support_kernel_reassembly(std::uint64_t seed, int draws) {
  SuiteResult res{"support/kernel reassembly of S, O, P", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 3);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 9, 2);
    const ConditionOperators direct = condition_operators_direct(dr.rho, dr.sld);
    const SupportKernelDecomposition dec = support_kernel_decomposition(dr.rho.spectrum(), dr.pt);
    res.record(k, std::max({max_gap(dec.strong, direct.strong), max_gap(dec.one_sided, direct.one_sided),
                            max_gap(dec.partial, direct.partial)}));
  }
  return res;
}

inline SuiteResult projection_identities(std::uint64_t seed, int draws) {
  SuiteResult res{"P = Pi O and W = tr[rho P]", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 4);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 9, 3);
    const ConditionOperators ops = condition_operators_direct(dr.rho, dr.sld);
    const Matrix w = weak_direct(dr.rho, dr.sld).entries;
    const Matrix& pi = dr.rho.spectrum().support_projector;
    double gap = 0.0;
    for (std::size_t i = 0; i < ops.partial.m; ++i) {
      for (std::size_t j = 0; j < ops.partial.m; ++j) {
        gap = std::max(gap, (ops.partial.at(i, j) - pi * ops.one_sided.at(i, j)).norm());
        gap = std::max(gap, std::abs((dr.rho.matrix() * ops.partial.at(i, j)).trace() - w(i, j)));
      }
    }
    res.record(k, gap);
  }
  return res;
}

inline SuiteResult hierarchy_chain(std::uint64_t seed, int draws) {
  SuiteResult res{"SC => OC => PC => WC", draws, 0, 0.0, 0.0, {}};
  random::Rng rng = suite_rng(seed, 5);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = k % 2 == 0 ? random_draw(rng, 9, 2) : structured_draw(rng, 9, 2);
    const ClassificationReport rep = classify(dr.rho, dr.pt, dr.sld, kZeroTol);
    const bool chain = (!rep.sc || rep.oc) && (!rep.oc || rep.pc) && (!rep.pc || rep.wc);
    res.check(k, chain && rep.hierarchy_consistent, "chain broken");
  }
  return res;
}

inline SuiteResult qubit_identity(std::uint64_t seed, int draws) {
  SuiteResult res{"qubit W = (2 tr rho^2 - 1) Gamma", draws, 0, 0.0, 1e-10, {}};
  random::Rng rng = suite_rng(seed, 6);
  for (int k = 0; k < draws; ++k) {
    const DensityMatrix rho = random::state(rng, 2, random::integer(rng, 1, 2));
    const Matrix h1 = random::hermitian(rng, 2);
    const Matrix h2 = random::hermitian(rng, 2);
    const Draw dr = make_draw(rho, {h1, h2}, {0.0, 0.0});
    res.record(k, std::abs(weak_direct(dr.rho, dr.sld).entries(0, 1) - closed_form::qubit_weak(rho.matrix(), h1, h2)));
  }
  return res;
}

inline SuiteResult white_noise(std::uint64_t seed, int draws) {
  SuiteResult res{"white-noise closed form", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 7);
  for (int k = 0; k < draws; ++k) {
    const int d = random::integer(rng, 2, 9);
    const double p = random::uniform(rng, 0.0, 1.0);
    const Vector psi = random::pure(rng, d);
    const Matrix h1 = random::hermitian(rng, d);
    const Matrix h2 = random::hermitian(rng, d);
    const Draw dr = make_draw(white_noise_state(psi, p, d), {h1, h2}, {0.0, 0.0});
    res.record(k, std::abs(weak_direct(dr.rho, dr.sld).entries(0, 1) - closed_form::white_noise_weak(psi, p, d, h1, h2)));
  }
  return res;
}

inline SuiteResult fisher_ordering(std::uint64_t seed, int draws) {
  SuiteResult res{"F_C <= F_Q for random POVMs", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 8);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 6, random::integer(rng, 1, 3));
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const PovmSet povm = random::povm(rng, dr.rho.dim(), random::integer(rng, static_cast<int>(dr.rho.dim()), 2 * static_cast<int>(dr.rho.dim())));
    const FisherOrdering ord = verify_fc_order(rho_theta, povm, encoded_slds(dr.sld, dr.pt));
    res.record(k, std::max(0.0, -ord.min_eigenvalue));
  }
  return res;
}

inline SuiteResult optimal_measurement(std::uint64_t seed, int draws) {
  SuiteResult res{"SLD eigenbasis saturates F_Q (one parameter)", draws, 0, 0.0, 1e-8, {}};
  random::Rng rng = suite_rng(seed, 9);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 6, 1);
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const std::vector<HermitianOperator> enc = encoded_slds(dr.sld, dr.pt);
    const PovmSet povm = PovmSet::projective(hermitian_eig(enc[0]).vectors);
    const double fq = qfim(rho_theta.matrix(), enc).matrix(0, 0);
    const double fc = cfim(rho_theta, povm, enc).matrix(0, 0);
    res.record(k, std::abs(fq - fc));
  }
  return res;
}

inline SuiteResult additivity(std::uint64_t seed, int draws) {
  SuiteResult res{"F_Q(rho (x) rho) = 2 F_Q(rho)", draws, 0, 0.0, 1e-8, {}};
  random::Rng rng = suite_rng(seed, 10);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = random_draw(rng, 4, 2);
    res.record(k, qfim_additivity(dr.rho, dr.pt, 2));
  }
  return res;
}

inline SuiteResult pc_equivalence(std::uint64_t seed, int draws) {
  SuiteResult res{"trace-norm PC agrees with P = 0", draws, 0, 0.0, 0.0, {}};
  random::Rng rng = suite_rng(seed, 11);
  for (int k = 0; k < draws; ++k) {
    const Draw dr = k % 2 == 0 ? random_draw(rng, 6, 2) : structured_draw(rng, 6, 2);
    const double threshold = kZeroTol * zero_test_scale(dr.pt);
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const double p_norm = pc_trace_norm(rho_theta, encoded_slds(dr.sld, dr.pt)).norm();
    const double partial = condition_operators_direct(dr.rho, dr.sld).partial.norm();
    res.check(k, (p_norm <= threshold) == (partial <= threshold),
              "trace norm " + std::to_string(p_norm) + " vs |P| " + std::to_string(partial));
  }
  return res;
}

inline SuiteResult real_bell_diagonal(std::uint64_t seed, int draws) {
  SuiteResult res{"real Bell-diagonal, real local H: W = 0", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 12);
  for (int k = 0; k < draws; ++k) {
    const int d = k % 2 == 0 ? 2 : 3;
    const BellDiagonalState bd = bell_diagonal(detail::real_bell_weights(rng, d), d);
    const Draw dr = make_draw(bd.state, {family::local(random::real_symmetric(rng, d), 0, 2), family::local(random::real_symmetric(rng, d), 1, 2)},
                              {0.0, 0.0});
    res.check(k, bd.real, "state not real");
    res.record(k, weak_direct(dr.rho, dr.sld).norm());
  }
  return res;
}

inline SuiteResult qubit_bell_diagonal(std::uint64_t seed, int draws) {
  SuiteResult res{"two-qubit Bell-diagonal, spin H: W = 0", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 13);
  for (int k = 0; k < draws; ++k) {
    std::vector<double> w = random::simplex(rng, 4);
    const int zeros = random::integer(rng, 0, 3);
    for (int z = 0; z < zeros; ++z) w[static_cast<std::size_t>(random::integer(rng, 0, 3))] = 0.0;
    double sum = 0.0;
    for (double x : w) sum += x;
    if (sum == 0.0) w[0] = sum = 1.0;
    for (auto& x : w) x /= sum;
    auto dir = [&] { return family::spin(random::normal(rng), random::normal(rng), random::normal(rng)); };
    const Draw dr = make_draw(bell_diagonal(w, 2).state, {family::local(dir(), 0, 2), family::local(dir(), 1, 2)}, {0.0, 0.0});
    res.record(k, weak_direct(dr.rho, dr.sld).norm());
  }
  return res;
}

inline SuiteResult basis_independence(std::uint64_t seed, int draws) {
  SuiteResult res{"norms and QFIM invariant under V rho V^dagger, V H V^dagger", draws, 0, 0.0, 1e-9, {}};
  random::Rng rng = suite_rng(seed, 14);
  for (int k = 0; k < draws; ++k) {
    const int d = random::integer(rng, 2, 6);
    const DensityMatrix rho = random::state(rng, d, random::integer(rng, 1, d));
    const std::vector<Matrix> hams = {random::hermitian(rng, d), random::hermitian(rng, d)};
    const std::vector<double> theta = {random::normal(rng), random::normal(rng)};
    const Matrix v = random::unitary(rng, d);
    const Draw a = make_draw(rho, hams, theta);
    const Draw b = make_draw(DensityMatrix(v * rho.matrix() * v.adjoint()), {v * hams[0] * v.adjoint(), v * hams[1] * v.adjoint()}, theta);
    const ClassificationReport ra = classify(a.rho, a.pt, a.sld);
    const ClassificationReport rb = classify(b.rho, b.pt, b.sld);
    double gap = std::max({std::abs(ra.norm_w - rb.norm_w), std::abs(ra.norm_p - rb.norm_p), std::abs(ra.norm_o - rb.norm_o),
                           std::abs(ra.norm_s - rb.norm_s)});
    gap = std::max(gap, (qfim(a.rho, a.sld).matrix - qfim(b.rho, b.sld).matrix).norm());
    res.record(k, gap);
  }
  return res;
}

struct Summary {
  std::uint64_t seed = 0;
  int draws = 0;
  std::vector<SuiteResult> suites;
  int examples_run = 0;
  std::vector<std::string> examples_failed;

  int violations() const {
    int n = static_cast<int>(examples_failed.size());
    for (const auto& s : suites) n += s.violations;
    return n;
  }
};

inline Summary selftest(std::uint64_t seed, int draws) {
  if (draws < 1) throw ValidationError("selftest: draws must be >= 1");
  Summary out{seed, draws, {}, 0, {}};
  using Fn = SuiteResult (*)(std::uint64_t, int);
  const Fn suites[] = {weak_routes,        sld_routes,      support_kernel_reassembly, projection_identities,
                       hierarchy_chain,    qubit_identity,  white_noise,               fisher_ordering,
                       optimal_measurement, additivity,     pc_equivalence,            real_bell_diagonal,
                       qubit_bell_diagonal, basis_independence};
  for (Fn fn : suites) out.suites.push_back(fn(seed, draws));
  for (const auto& id : example_ids()) {
    ++out.examples_run;
    if (!run_example(id).pass) out.examples_failed.push_back(id);
  }
  return out;
}

inline std::string to_text(const Summary& s) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "selftest seed=%llu draws=%d\n", static_cast<unsigned long long>(s.seed), s.draws);
  out += line;
  for (const auto& r : s.suites) {
    std::snprintf(line, sizeof line, "  %-62s %5d draws  %3d violations  max residual %.2e\n", r.name.c_str(), r.draws,
                  r.violations, r.max_residual);
    out += line;
    for (const auto& f : r.failures) out += "      " + f + "\n";
  }
  std::snprintf(line, sizeof line, "  worked examples: %d run, %zu failed\n", s.examples_run, s.examples_failed.size());
  out += line;
  for (const auto& id : s.examples_failed) out += "      failed: " + id + "\n";
  std::snprintf(line, sizeof line, "total violations: %d\n", s.violations());
  out += line;
  return out;
}

}  // namespace metrocommute::properties
