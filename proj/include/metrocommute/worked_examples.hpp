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

#include "metrocommute/closed_forms.hpp"
#include "metrocommute/conditions.hpp"
#include "metrocommute/encoding.hpp"
#include "metrocommute/families.hpp"
#include "metrocommute/metrology.hpp"
#include "metrocommute/random.hpp"
#include "metrocommute/sld.hpp"
#include "metrocommute/states.hpp"

#include <functional>
#include <map>
#include <optional>

namespace metrocommute {

inline constexpr double kExampleTol = 1e-8;

struct ExampleValue {
  std::string name;
  Complex expected;
  Complex computed;
  std::string source;  // where the expected value comes from

  double error() const { return std::abs(expected - computed); }
};

using ExampleParams = std::map<std::string, double>;

struct ExampleReport {
  std::string id;
  std::string title;
  ExampleParams params;
  std::vector<ExampleValue> values;
  double max_abs_error = 0.0;
  bool pass = false;
};

namespace detail {

struct Run {
  DensityMatrix rho;
  EncodingPoint pt;
  SldSet sld;
};

inline Run pipeline(const DensityMatrix& rho, const std::vector<Matrix>& hams) {
  std::vector<HermitianOperator> ops;
  for (const auto& h : hams) ops.emplace_back(h);
  const HamiltonianSet hs(std::move(ops));
  EncodingPoint pt = encode(hs, std::vector<double>(hs.size(), 0.0));
  SldSet sld = sld_rotated(rho.spectrum(), pt);
  return {rho, std::move(pt), std::move(sld)};
}

class ReportBuilder {
 public:
  ReportBuilder(std::string id, std::string title, ExampleParams params) {
    rep_.id = std::move(id);
    rep_.title = std::move(title);
    rep_.params = std::move(params);
  }

  void value(std::string name, Complex expected, Complex computed, std::string source = "closed form") {
    rep_.values.push_back({std::move(name), expected, computed, std::move(source)});
  }

  void zero(std::string name, double norm) { value(std::move(name), 0.0, norm, "structural claim"); }

  void claim(std::string name, bool expected, bool observed) {
    value(std::move(name), expected ? 1.0 : 0.0, observed ? 1.0 : 0.0, "structural claim");
  }

  void matrix(const std::string& name, const Matrix& expected, const Matrix& computed, const std::string& source = "closed form") {
    for (Eigen::Index i = 0; i < expected.rows(); ++i) {
      for (Eigen::Index j = 0; j < expected.cols(); ++j) {
        value(name + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", expected(i, j), computed(i, j), source);
      }
    }
  }

  ExampleReport finish() {
    rep_.max_abs_error = 0.0;
    for (const auto& v : rep_.values) rep_.max_abs_error = std::max(rep_.max_abs_error, v.error());
    rep_.pass = !rep_.values.empty() && rep_.max_abs_error <= kExampleTol;
    return std::move(rep_);
  }

 private:
  ExampleReport rep_;
};

inline ExampleParams merge(const ExampleParams& defaults, const ExampleParams& given, const std::string& id) {
  ExampleParams out = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.count(k)) throw ValidationError(id + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw ValidationError(id + ": parameter '" + k + "' must be finite");
    out[k] = v;
  }
  return out;
}

inline bool qfim_is_singular(const RealMatrix& f) {
  try {
    qcr_scalar(f, WeightMatrix::identity(f.rows()));
  } catch (const IdentifiabilityError&) {
    return true;
  }
  return false;
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline void require_open_unit(double x, const std::string& what) {
  if (!(x > 0.0 && x < 1.0)) throw ValidationError(what + " must lie in (0, 1)");
}

inline std::vector<double> grid_or(const ExampleParams& given, const std::string& key, std::vector<double> grid) {
  if (auto it = given.find(key); it != given.end()) return {it->second};
  return grid;
}

inline ExampleReport ex1(const ExampleParams& given) {
  const ExampleParams p = merge({{"seed", 7}, {"draws", 100}}, given, "EX1");
  const int draws = static_cast<int>(p.at("draws"));
  if (draws < 1) throw ValidationError("EX1: draws must be >= 1");
  ReportBuilder b("EX1", "single qubit: W = (2 tr rho^2 - 1) Gamma", p);
  random::Rng rng(static_cast<std::uint64_t>(p.at("seed")));
  for (int k = 0; k < draws; ++k) {
    const DensityMatrix rho = random::state(rng, 2, random::integer(rng, 1, 2));
    const Matrix h1 = random::hermitian(rng, 2);
    const Matrix h2 = random::hermitian(rng, 2);
    const Run run = pipeline(rho, {h1, h2});
    const Complex w = weak_direct(run.rho, run.sld).entries(0, 1);
    b.value("W12[draw " + std::to_string(k) + "]", closed_form::qubit_weak(rho.matrix(), h1, h2), w);
  }
  return b.finish();
}

inline ExampleReport ex2(const ExampleParams& given) {
  const ExampleParams p = merge({{"p", 0.6}, {"d", 2}, {"N", 2}, {"seed", 11}}, given, "EX2");
  const int d = static_cast<int>(p.at("d"));
  const int n = static_cast<int>(p.at("N"));
  if (d < 2 || n < 1 || std::pow(d, n) > 64) throw ValidationError("EX2: need d >= 2, N >= 1 and d^N <= 64");
  const double prob = p.at("p");
  if (!(prob >= 0.0 && prob <= 1.0)) throw ValidationError("EX2: p must lie in [0, 1]");
  const auto dim = static_cast<Eigen::Index>(std::pow(d, n));
  ReportBuilder b("EX2", "white-noise state", p);
  random::Rng rng(static_cast<std::uint64_t>(p.at("seed")));
  const Vector psi = random::pure(rng, dim);
  const std::vector<Matrix> hams = {random::hermitian(rng, dim), random::hermitian(rng, dim), random::hermitian(rng, dim)};
  const Run run = pipeline(white_noise_state(psi, prob, dim), hams);
  const Matrix w = weak_direct(run.rho, run.sld).entries;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      b.value("W" + std::to_string(i + 1) + std::to_string(j + 1),
              closed_form::white_noise_weak(psi, prob, dim, hams[i], hams[j]), w(i, j));
    }
  }
  return b.finish();
}

inline ExampleReport ex3(const ExampleParams& given) {
  const double pi = std::acos(-1.0);
  const ExampleParams p = merge({{"alpha", pi / 3}, {"lambda", 0.25}}, given, "EX3");
  const double alpha = p.at("alpha");
  const double lambda = p.at("lambda");
  if (!(std::cos(2 * alpha + pi) >= -1e-12)) throw ValidationError("EX3: alpha outside the real-validity domain");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("EX3: lambda must lie in [0, 1]");
  ReportBuilder b("EX3", "qutrit rank-two state, commuting Hamiltonians", p);
  const Run run = pipeline(family::qutrit_rank_two(alpha, lambda), {family::qutrit_sigma(), family::qutrit_diag()});
  const Complex expected = closed_form::qutrit_weak(alpha, lambda);
  b.value("W12", expected, weak_direct(run.rho, run.sld).entries(0, 1));
  if (run.rho.rank() == 2) {
    const WeakDecomposition dec = weak_decomposed(run.rho.spectrum(), run.pt);
    const Matrix fast = dec.gamma.entries + weak_rank_two(run.rho.spectrum(), run.pt).entries;
    b.value("W12 (rank-two route)", expected, fast(0, 1));
  }
  return b.finish();
}

inline ExampleReport ex4(const ExampleParams& given) {
  const ExampleParams p = merge({{"p", 0.5}}, given, "EX4");
  const std::vector<double> grid = grid_or(given, "p", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  ExampleParams shown = p;
  if (grid.size() > 1) shown.erase("p");
  ReportBuilder b("EX4", "separable mixture with local Hamiltonians", shown);
  for (double prob : grid) {
    require_open_unit(prob, "EX4: p");
    const Run run = pipeline(family::separable_mixture(prob), {family::pauli_string("XI"), family::pauli_string("IY")});
    const std::string tag = "[p=" + fmt(prob) + "]";
    b.value("W12" + tag, closed_form::separable_weak(prob), weak_direct(run.rho, run.sld).entries(0, 1));
    b.value("lambda_min" + tag, closed_form::separable_min_eigenvalue(prob),
            run.rho.spectrum().eigenvalues[run.rho.rank() - 1]);
  }
  return b.finish();
}

inline ExampleReport ex5(const ExampleParams& given) {
  const ExampleParams p = merge({{"lambda", 0.25}}, given, "EX5");
  const std::vector<double> grid = grid_or(given, "lambda", {0.1, 0.2, 0.25, 0.3, 0.4, 0.6, 0.75, 0.9});
  ExampleParams shown = p;
  if (grid.size() > 1) shown.erase("lambda");
  ReportBuilder b("EX5", "three-qubit cyclic-phase mixture", shown);
  for (double lambda : grid) {
    require_open_unit(lambda, "EX5: lambda");
    const Run run = pipeline(family::cyclic_phase_mixture(lambda), {family::pauli_string("ZII"), family::pauli_string("IZI"),
                                                                     family::pauli_string("IIZ")});
    const Matrix w = weak_direct(run.rho, run.sld).entries;
    const Complex expected = closed_form::cyclic_phase_weak(lambda);
    const std::string tag = "[lambda=" + fmt(lambda) + "]";
    b.value("W12" + tag, expected, w(0, 1));
    b.value("W23" + tag, expected, w(1, 2));
    b.value("W13" + tag, -expected, w(0, 2));
  }
  return b.finish();
}

// Marginal of the normalised cyclic-phase ket built from core operations only.
inline Matrix oracle_marginal(const std::string& which) {
  const Complex w = std::exp(Complex(0.0, 2.0 * closed_form::pi() / 3.0));
  Vector psi = Vector::Zero(8);
  psi[1] = 1.0;
  psi[2] = w;
  psi[4] = w * w;
  psi /= std::sqrt(3.0);
  const Matrix full = psi * psi.adjoint();
  if (which == "AB") return partial_trace(full, {2, 2, 2}, {0, 1});
  if (which == "BC") return partial_trace(full, {2, 2, 2}, {1, 2});
  const Matrix ac = partial_trace(full, {2, 2, 2}, {0, 2});
  const Matrix s = swap_operator(2).matrix();
  return s * ac * s;
}

inline ExampleReport ex6(const ExampleParams& given) {
  const ExampleParams p = merge({{"seed", 5}, {"draws", 10}}, given, "EX6");
  ReportBuilder b("EX6", "two-qubit marginals of a three-qubit pure state", p);
  const Matrix x1 = family::pauli_string("XI");
  const Matrix x2 = family::pauli_string("IX");
  for (const std::string which : {"AB", "BC", "CA"}) {
    const Run run = pipeline(family::cyclic_phase_marginal(which), {x1, x2});
    const Complex w = weak_direct(run.rho, run.sld).entries(0, 1);
    b.value("W12[" + which + "]", closed_form::rank_two_weak(oracle_marginal(which), x1, x2), w);
    b.claim("WC violated[" + which + "]", true, std::abs(w) > 1e-6);
  }
  random::Rng rng(static_cast<std::uint64_t>(p.at("seed")));
  const int draws = static_cast<int>(p.at("draws"));
  for (int k = 0; k < draws; ++k) {
    const Vector a = random::pure(rng, 2), bb = random::pure(rng, 2), c = random::pure(rng, 2);
    const Vector psi = kron(kron(a, bb), c);
    const DensityMatrix marginal(partial_trace(psi * psi.adjoint(), {2, 2, 2}, {0, 1}));
    const Run run = pipeline(marginal, {x1, x2});
    b.zero("|W| product marginal[draw " + std::to_string(k) + "]", weak_direct(run.rho, run.sld).norm());
  }
  return b.finish();
}

inline std::vector<Matrix> qutrit_pair_hams(double a, double a_prime) {
  return {a * family::qutrit_h() + a_prime * family::qutrit_hprime(), family::qutrit_diag()};
}

inline ExampleReport ex7(const ExampleParams& given) {
  const double pi = std::acos(-1.0);
  const ExampleParams p = merge({{"alpha", 1.1}, {"lambda", 0.3}, {"a", 1.0}, {"a_prime", 0.5}}, given, "EX7");
  const double alpha = p.at("alpha"), lambda = p.at("lambda"), a = p.at("a"), ap = p.at("a_prime");
  require_open_unit(lambda, "EX7: lambda");
  ReportBuilder b("EX7", "qutrit rank-two state: WC without PC, PC without OC", p);

  const Run run = pipeline(family::qutrit_rank_two(alpha, lambda), qutrit_pair_hams(a, ap));
  const ConditionOperators ops = condition_operators_direct(run.rho, run.sld);
  b.zero("|W|", weak_direct(run.rho, run.sld).norm());
  b.matrix("P12", closed_form::qutrit_partial(a, alpha), ops.partial.at(0, 1));

  const Run deg = pipeline(family::qutrit_rank_two(pi / 4, lambda), qutrit_pair_hams(a, ap));
  const ConditionOperators dops = condition_operators_direct(deg.rho, deg.sld);
  b.zero("|P| at alpha=pi/4", dops.partial.norm());
  b.matrix("O12 at alpha=pi/4", closed_form::qutrit_one_sided_degenerate(a, lambda), dops.one_sided.at(0, 1));
  const SupportKernelDecomposition dec = support_kernel_decomposition(deg.rho.spectrum(), deg.pt);
  b.matrix("Iks12 at alpha=pi/4", closed_form::qutrit_one_sided_degenerate(a, lambda), dec.iks.at(0, 1));

  const Run zero_a = pipeline(family::qutrit_rank_two(pi / 4, lambda), qutrit_pair_hams(0.0, 1.0));
  b.zero("|S| at alpha=pi/4, a=0", condition_operators_direct(zero_a.rho, zero_a.sld).strong.norm());
  const RealMatrix f = qfim(zero_a.rho, zero_a.sld).matrix;
  b.matrix("FQ at alpha=pi/4, a=0, a'=1", closed_form::qutrit_qfim(lambda).cast<Complex>(), f.cast<Complex>(),
           "hand derivation");
  b.claim("FQ singular", true, qfim_is_singular(f));
  return b.finish();
}

inline std::vector<Matrix> local_pair_hams(double ax, double az, double bx, double bz) {
  return {family::local(family::spin(ax, 0, az), 0, 2), family::local(family::spin(bx, 0, bz), 1, 2)};
}

inline ExampleReport ex8(const ExampleParams& given) {
  const ExampleParams p = merge({{"lambda1", 0.3}, {"lambda2", 0.2}, {"ax", 0.8}, {"az", 0.3}, {"bx", 0.5}, {"bz", 0.9}},
                                given, "EX8");
  const double l1 = p.at("lambda1"), l2 = p.at("lambda2");
  const double ax = p.at("ax"), az = p.at("az"), bx = p.at("bx"), bz = p.at("bz");
  if (!(l1 > 0 && l2 > 0 && l1 + l2 < 1)) throw ValidationError("EX8: need lambda1, lambda2 > 0 with lambda1 + lambda2 < 1");
  ReportBuilder b("EX8", "two-qubit rank-three Bell-diagonal state", p);

  const DensityMatrix rho = family::bell_rank_three(l1, l2);
  const Run run = pipeline(rho, local_pair_hams(ax, az, bx, bz));
  b.zero("|W|", weak_direct(run.rho, run.sld).norm());
  b.matrix("P12", closed_form::bell_rank_three_partial(closed_form::bell_rank_three_f(l1, l2, ax, az, bx, bz)),
           condition_operators_direct(run.rho, run.sld).partial.at(0, 1));
  b.matrix("Iks12", closed_form::bell_rank_three_kernel_support(closed_form::bell_rank_three_g(l1, l2, ax, az, bx, bz)),
           support_kernel_decomposition(run.rho.spectrum(), run.pt).iks.at(0, 1));

  // a_x b_z = a_z b_x: the partial condition holds while the one-sided one fails.
  if (bx != 0.0) {
    const double az_balanced = ax * bz / bx;
    const Run bal = pipeline(rho, local_pair_hams(ax, az_balanced, bx, bz));
    const ConditionOperators ops = condition_operators_direct(bal.rho, bal.sld);
    b.zero("|P| at ax*bz = az*bx", ops.partial.norm());
    b.matrix("O12 at ax*bz = az*bx",
             closed_form::bell_rank_three_kernel_support(closed_form::bell_rank_three_g(l1, l2, ax, az_balanced, bx, bz)),
             ops.one_sided.at(0, 1));
  }

  const Run xonly = pipeline(rho, local_pair_hams(1.0, 0.0, 1.0, 0.0));
  b.zero("|S| at az=bz=0", condition_operators_direct(xonly.rho, xonly.sld).strong.norm());
  b.matrix("FQ at ax=bx=1, az=bz=0", closed_form::bell_rank_three_qfim(l1, l2).cast<Complex>(),
           qfim(xonly.rho, xonly.sld).matrix.cast<Complex>(), "hand derivation");
  return b.finish();
}

inline ExampleReport ex9(const ExampleParams& given) {
  const ExampleParams p = merge({{"lambda", 0.3}, {"a", 1.0}, {"a_prime", 0.5}}, given, "EX9");
  const double lambda = p.at("lambda"), a = p.at("a"), ap = p.at("a_prime");
  require_open_unit(lambda, "EX9: lambda");
  ReportBuilder b("EX9", "two-qutrit rank-two state: OC without SC", p);
  const DensityMatrix rho = family::qutrit_bell_pair(lambda);
  auto hams = [](double x, double y) {
    const Matrix eta = x * family::qutrit_h() + y * family::qutrit_hprime();
    return std::vector<Matrix>{family::local(eta, 0, 2), family::local(eta, 1, 2)};
  };
  const Run run = pipeline(rho, hams(a, ap));
  const ConditionOperators ops = condition_operators_direct(run.rho, run.sld);
  b.zero("|W|", weak_direct(run.rho, run.sld).norm());
  b.zero("|P|", ops.partial.norm());
  b.zero("|O|", ops.one_sided.norm());
  const SupportKernelDecomposition dec = support_kernel_decomposition(run.rho.spectrum(), run.pt);
  b.claim("Ikk nonzero", a != 0.0, dec.ikk.norm() > 1e-6);

  const Run zero_a = pipeline(rho, hams(0.0, 1.0));
  b.zero("|S| at a=0", condition_operators_direct(zero_a.rho, zero_a.sld).strong.norm());
  const RealMatrix f = qfim(zero_a.rho, zero_a.sld).matrix;
  b.matrix("FQ at a=0, a'=1", closed_form::qutrit_bell_qfim(lambda).cast<Complex>(), f.cast<Complex>());
  b.claim("FQ singular", true, qfim_is_singular(f));
  return b.finish();
}

inline ExampleReport ex10(const ExampleParams& given) {
  const ExampleParams p = merge({{"lambda", 0.6}, {"ax", 1.0}, {"az", 1.0}}, given, "EX10");
  const double lambda = p.at("lambda"), ax = p.at("ax"), az = p.at("az");
  require_open_unit(lambda, "EX10: lambda");
  ReportBuilder b("EX10", "full-rank isotropic Bell state: WC without SC", p);
  const Matrix sa = family::spin(ax, 0, az);
  const Run run = pipeline(family::isotropic(family::psi_plus(), lambda), {family::local(sa, 0, 2), family::local(sa, 1, 2)});
  const ConditionOperators ops = condition_operators_direct(run.rho, run.sld);
  b.matrix("S12", closed_form::isotropic_strong(lambda, 4, ax, az), ops.strong.at(0, 1));
  b.zero("|W|", weak_direct(run.rho, run.sld).norm());
  const ClassificationReport rep = classify(run.rho, run.pt, run.sld);
  b.claim("WC", true, rep.wc);
  b.claim("SC", ax * az == 0.0 || lambda == 0.25, rep.sc);
  return b.finish();
}

inline ExampleReport obs2(const ExampleParams& given) {
  const ExampleParams p = merge({{"p", 0.5}, {"lambda", 0.25}}, given, "OBS2");
  ReportBuilder b("OBS2", "commuting Hamiltonians do not imply WC on mixed states", p);
  std::vector<HermitianOperator> hs_ops{HermitianOperator(family::pauli_string("XI")), HermitianOperator(family::pauli_string("IY"))};
  b.claim("Hamiltonians commute", true, HamiltonianSet(hs_ops).commuting());
  const Run run = pipeline(family::separable_mixture(p.at("p")), {family::pauli_string("XI"), family::pauli_string("IY")});
  const Complex w = weak_direct(run.rho, run.sld).entries(0, 1);
  b.value("W12 separable", closed_form::separable_weak(p.at("p")), w);
  b.claim("WC violated (separable)", true, std::abs(w) > 1e-6);
  const Run ent = pipeline(family::cyclic_phase_mixture(p.at("lambda")),
                           {family::pauli_string("ZII"), family::pauli_string("IZI"), family::pauli_string("IIZ")});
  const Complex we = weak_direct(ent.rho, ent.sld).entries(0, 1);
  b.value("W12 entangled", closed_form::cyclic_phase_weak(p.at("lambda")), we);
  b.claim("WC violated (entangled)", true, std::abs(we) > 1e-6);
  return b.finish();
}

// Bell-diagonal weights invariant under m -> -m, so the state is real; a random subset is zeroed.
inline std::vector<double> real_bell_weights(random::Rng& rng, int d) {
  std::vector<double> w(static_cast<std::size_t>(d * d), 0.0);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m <= d / 2; ++m) {
      const double x = random::uniform(rng) < 0.3 ? 0.0 : random::uniform(rng, 0.05, 1.0);
      w[static_cast<std::size_t>(n * d + m)] = x;
      w[static_cast<std::size_t>(n * d + (d - m) % d)] = x;
    }
  }
  double sum = 0.0;
  for (double x : w) sum += x;
  if (sum == 0.0) {
    w[0] = 1.0;
    sum = 1.0;
  }
  for (auto& x : w) x /= sum;
  return w;
}

inline ExampleReport obs3(const ExampleParams& given) {
  const ExampleParams p = merge({{"seed", 3}, {"draws", 20}}, given, "OBS3");
  ReportBuilder b("OBS3", "real Bell-diagonal states with real local Hamiltonians satisfy WC", p);
  random::Rng rng(static_cast<std::uint64_t>(p.at("seed")));
  for (int k = 0; k < static_cast<int>(p.at("draws")); ++k) {
    const int d = k % 2 == 0 ? 2 : 3;
    const BellDiagonalState bd = bell_diagonal(real_bell_weights(rng, d), d);
    const Run run = pipeline(bd.state, {family::local(random::real_symmetric(rng, d), 0, 2),
                                        family::local(random::real_symmetric(rng, d), 1, 2)});
    const std::string tag = "[draw " + std::to_string(k) + ", d=" + std::to_string(d) + "]";
    b.claim("state real" + tag, true, bd.real);
    b.zero("|W|" + tag, weak_direct(run.rho, run.sld).norm());
  }
  return b.finish();
}

inline ExampleReport obs5(const ExampleParams& given) {
  const ExampleParams p = merge({{"seed", 5}, {"draws", 20}}, given, "OBS5");
  ReportBuilder b("OBS5", "two-qubit Bell-diagonal states satisfy WC for any local spin directions", p);
  random::Rng rng(static_cast<std::uint64_t>(p.at("seed")));
  for (int k = 0; k < static_cast<int>(p.at("draws")); ++k) {
    std::vector<double> w = random::simplex(rng, 4);
    const int zeros = random::integer(rng, 0, 2);
    for (int z = 0; z < zeros; ++z) w[static_cast<std::size_t>(random::integer(rng, 0, 3))] = 0.0;
    double sum = 0.0;
    for (double x : w) sum += x;
    for (auto& x : w) x /= sum;
    const DensityMatrix rho = bell_diagonal(w, 2).state;
    auto dir = [&] { return family::spin(random::normal(rng), random::normal(rng), random::normal(rng)); };
    const Run run = pipeline(rho, {family::local(dir(), 0, 2), family::local(dir(), 1, 2)});
    b.zero("|W|[draw " + std::to_string(k) + ", rank " + std::to_string(rho.rank()) + "]",
           weak_direct(run.rho, run.sld).norm());
  }
  return b.finish();
}

inline ExampleReport obs6(const ExampleParams& given) {
  const double pi = std::acos(-1.0);
  const ExampleParams p = merge({{"lambda", 0.3}}, given, "OBS6");
  const double lambda = p.at("lambda");
  require_open_unit(lambda, "OBS6: lambda");
  ReportBuilder b("OBS6", "converse implications of the chain fail", p);
  auto flags = [](const Run& run) { return classify(run.rho, run.pt, run.sld); };

  const ClassificationReport generic = flags(pipeline(family::qutrit_rank_two(1.1, lambda), qutrit_pair_hams(1.0, 0.5)));
  b.claim("qutrit generic: WC", true, generic.wc);
  b.claim("qutrit generic: PC", false, generic.pc);

  const ClassificationReport quarter = flags(pipeline(family::qutrit_rank_two(pi / 4, lambda), qutrit_pair_hams(1.0, 0.5)));
  b.claim("qutrit alpha=pi/4: PC", true, quarter.pc);
  b.claim("qutrit alpha=pi/4: OC", false, quarter.oc);

  const ClassificationReport bell = flags(pipeline(family::bell_rank_three(lambda, 0.2), local_pair_hams(0.8, 0.3, 0.6, 0.225)));
  b.claim("Bell rank three, ax*bz = az*bx: PC", true, bell.pc);
  b.claim("Bell rank three, ax*bz = az*bx: OC", false, bell.oc);

  const Matrix eta = family::qutrit_h() + 0.5 * family::qutrit_hprime();
  const ClassificationReport pair =
      flags(pipeline(family::qutrit_bell_pair(lambda), {family::local(eta, 0, 2), family::local(eta, 1, 2)}));
  b.claim("qutrit Bell pair: OC", true, pair.oc);
  b.claim("qutrit Bell pair: SC", false, pair.sc);
  for (const auto* rep : {&generic, &quarter, &bell, &pair}) {
    b.claim("chain consistent", true, rep->hierarchy_consistent);
  }
  return b.finish();
}

inline ExampleReport obs7(const ExampleParams& given) {
  const ExampleParams p = merge({{"lambda", 0.6}, {"ax", 1.0}, {"az", 1.0}}, given, "OBS7");
  ReportBuilder b("OBS7", "full-rank state with WC but not SC", p);
  const Matrix sa = family::spin(p.at("ax"), 0, p.at("az"));
  const Run run = pipeline(family::isotropic(family::psi_plus(), p.at("lambda")), {family::local(sa, 0, 2), family::local(sa, 1, 2)});
  const ClassificationReport rep = classify(run.rho, run.pt, run.sld);
  b.value("rank", 4.0, static_cast<double>(rep.rank), "structural claim");
  b.claim("WC", true, rep.wc);
  b.claim("SC", false, rep.sc);
  return b.finish();
}

using ExampleFn = ExampleReport (*)(const ExampleParams&);

inline const std::vector<std::pair<std::string, ExampleFn>>& registry() {
  static const std::vector<std::pair<std::string, ExampleFn>> table = {
      {"EX1", ex1},   {"EX2", ex2},   {"EX3", ex3},   {"EX4", ex4},   {"EX5", ex5},
      {"EX6", ex6},   {"EX7", ex7},   {"EX8", ex8},   {"EX9", ex9},   {"EX10", ex10},
      {"OBS2", obs2}, {"OBS3", obs3}, {"OBS5", obs5}, {"OBS6", obs6}, {"OBS7", obs7}};
  return table;
}

}  // namespace detail

inline std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : detail::registry()) ids.push_back(id);
  return ids;
}

inline ExampleReport run_example(const std::string& id, const ExampleParams& params = {}) {
  for (const auto& [name, fn] : detail::registry()) {
    if (name == id) return fn(params);
  }
  throw ValidationError("unknown example id '" + id + "'");
}

}  // namespace metrocommute
