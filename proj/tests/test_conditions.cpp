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

#include "metrocommute/conditions.hpp"
#include "metrocommute/families.hpp"
#include "metrocommute/properties.hpp"
#include "metrocommute/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace metrocommute;
using properties::Draw;
using properties::make_draw;

namespace {

Matrix rotated_weak_oracle(const DensityMatrix& rho, const std::vector<Matrix>& hams, const std::vector<double>& theta) {
  // W in the encoded frame from finite-difference derivatives and the vectorised SLD solve
  const Matrix rt = oracle::encoded_state(rho.matrix(), hams, theta);
  std::vector<Matrix> l;
  for (std::size_t i = 0; i < hams.size(); ++i) l.push_back(oracle::sld(rt, oracle::derivative(rho.matrix(), hams, theta, i)));
  const auto m = static_cast<Eigen::Index>(hams.size());
  Matrix w(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) w(i, j) = (rt * oracle::commutator(l[i], l[j])).trace();
  return w;
}

struct RankTwoForms {
  Matrix iss_prime, iks;
};

// Rank-two specialisations, with the spectrum taken from Eigen's solver directly.
RankTwoForms rank_two_forms(const Matrix& rho, const Matrix& hi, const Matrix& hj) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Eigen::Index d = rho.rows();
  const double lam = es.eigenvalues()[d - 1];
  const Matrix p1 = es.eigenvectors().col(d - 1) * es.eigenvectors().col(d - 1).adjoint();
  const Matrix p2 = es.eigenvectors().col(d - 2) * es.eigenvectors().col(d - 2).adjoint();
  const Matrix perp = Matrix::Identity(d, d) - p1 - p2;
  const Matrix d1 = hi * p1 * hj - hj * p1 * hi;
  const Matrix d2 = hi * p2 * hj - hj * p2 * hi;
  const Matrix dr = d1 + d2;
  RankTwoForms f;
  f.iss_prime = -4.0 * (p1 * d1 * p1 + p2 * d2 * p2 + p1 * dr * p2 + p2 * dr * p1 +
                        4.0 * lam * (1.0 - lam) * (p1 * d2 * p1 + p2 * d1 * p2));
  f.iks = 4.0 * (1.0 - 2.0 * lam) * (perp * d2 * p1 - perp * d1 * p2);
  return f;
}

Draw random_case(random::Rng& rng, int d, int r, int m, bool zero_theta = false) {
  const DensityMatrix rho = random::state(rng, d, r);
  std::vector<Matrix> hams;
  std::vector<double> theta;
  for (int i = 0; i < m; ++i) {
    hams.push_back(random::hermitian(rng, d));
    theta.push_back(zero_theta ? 0.0 : random::normal(rng));
  }
  return make_draw(rho, hams, theta);
}

}  // namespace

TEST(WeakDirect, MatchesFiniteDifferenceOracle) {
  random::Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const int d = random::integer(rng, 2, 5);
    const DensityMatrix rho = random::state(rng, d, random::integer(rng, 1, d));
    const std::vector<Matrix> hams = {random::hermitian(rng, d), random::hermitian(rng, d)};
    const std::vector<double> theta = {random::normal(rng), random::normal(rng)};
    const Draw dr = make_draw(rho, hams, theta);
    EXPECT_LT((weak_direct(dr.rho, dr.sld).entries - rotated_weak_oracle(rho, hams, theta)).norm(), 1e-6);
  }
}

TEST(WeakDirect, AntisymmetricAndImaginary) {
  random::Rng rng(32);
  for (int t = 0; t < 50; ++t) {
    const Draw dr = random_case(rng, random::integer(rng, 2, 7), random::integer(rng, 1, 2), 3);
    const Matrix w = weak_direct(dr.rho, dr.sld).entries;
    EXPECT_LT((w + w.transpose()).norm(), 1e-13);
    EXPECT_LT(w.real().norm(), 1e-13);
  }
}

TEST(WeakDecomposed, GammaPlusDeltaProperty) {
  random::Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const int d = random::integer(rng, 2, 9);
    const Draw dr = random_case(rng, d, random::integer(rng, 1, d), 2);
    const WeakDecomposition dec = weak_decomposed(dr.rho.spectrum(), dr.pt);
    EXPECT_LT((dec.weak.entries - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-9);
    // Gamma by its definition on the generators
    const Matrix& h0 = dr.pt.generators[0].matrix();
    const Matrix& h1 = dr.pt.generators[1].matrix();
    EXPECT_LT(std::abs(dec.gamma.entries(0, 1) - 4.0 * (dr.rho.matrix() * oracle::commutator(h0, h1)).trace()), 1e-12);
  }
}

TEST(WeakDecomposed, PureStateHasNoDelta) {
  random::Rng rng(34);
  for (int t = 0; t < 20; ++t) {
    const Draw dr = random_case(rng, random::integer(rng, 2, 6), 1, 2);
    const WeakDecomposition dec = weak_decomposed(dr.rho.spectrum(), dr.pt);
    EXPECT_LT(dec.delta.norm(), 1e-14);
    EXPECT_LT((dec.gamma.entries - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-12);
  }
}

TEST(WeakRankTwo, MatchesDirectForRankTwo) {
  random::Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const Draw dr = random_case(rng, random::integer(rng, 2, 9), 2, 2);
    const WeakDecomposition dec = weak_decomposed(dr.rho.spectrum(), dr.pt);
    const Matrix fast = dec.gamma.entries + weak_rank_two(dr.rho.spectrum(), dr.pt).entries;
    EXPECT_LT((fast - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-9);
  }
}

TEST(WeakRankTwo, SwapTraceBranchAboveSixteen) {
  random::Rng rng(36);
  const Draw dr = random_case(rng, 17, 2, 2);
  const WeakDecomposition dec = weak_decomposed(dr.rho.spectrum(), dr.pt);
  const Matrix fast = dec.gamma.entries + weak_rank_two(dr.rho.spectrum(), dr.pt).entries;
  EXPECT_LT((fast - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-9);
}

TEST(WeakRankTwo, RejectsOtherRanks) {
  random::Rng rng(37);
  const Draw dr = random_case(rng, 4, 3, 2);
  EXPECT_THROW(weak_rank_two(dr.rho.spectrum(), dr.pt), ValidationError);
}

TEST(WeakIntegral, RouteAgreementProperty) {
  random::Rng rng(38);
  for (int t = 0; t < 100; ++t) {
    const int d = random::integer(rng, 2, 9);
    const Draw dr = random_case(rng, d, random::integer(rng, 1, d), 3);
    EXPECT_LT((weak_integral(dr.rho.spectrum(), dr.pt).entries - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-9);
  }
}

TEST(WeakIntegral, QutritRankTwoWithCommutingPair) {
  random::Rng rng(39);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = random::state(rng, 3, 2);
    const Draw dr = make_draw(rho, {family::qutrit_sigma(), family::qutrit_diag()}, {0.0, 0.0});
    EXPECT_LT((weak_integral(dr.rho.spectrum(), dr.pt).entries - weak_direct(dr.rho, dr.sld).entries).norm(), 1e-9);
  }
}

TEST(WeakIntegral, MaximallyMixedIsZero) {
  random::Rng rng(40);
  const DensityMatrix rho(Matrix::Identity(4, 4) / 4.0);
  const Draw dr = make_draw(rho, {random::hermitian(rng, 4), random::hermitian(rng, 4)}, {0.3, 0.1});
  EXPECT_LT(weak_integral(dr.rho.spectrum(), dr.pt).norm(), 1e-15);
}

TEST(WeakSeries, MaximallyMixedAndPure) {
  random::Rng rng(41);
  const std::vector<Matrix> hams = {random::hermitian(rng, 3), random::hermitian(rng, 3)};
  const Draw mixed = make_draw(DensityMatrix(Matrix::Identity(3, 3) / 3.0), hams, {0.0, 0.0});
  for (int a : {0, 1}) EXPECT_LT(weak_series_truncation(mixed.rho.spectrum(), mixed.pt, a).norm(), 1e-14);

  const Vector psi = random::pure(rng, 3);
  const Draw pure = make_draw(DensityMatrix(psi * psi.adjoint()), hams, {0.0, 0.0});
  const Matrix gamma = weak_decomposed(pure.rho.spectrum(), pure.pt).gamma.entries;
  for (int a : {0, 1}) EXPECT_LT((weak_series_truncation(pure.rho.spectrum(), pure.pt, a).entries - gamma).norm(), 1e-12);
  EXPECT_THROW(weak_series_truncation(pure.rho.spectrum(), pure.pt, 2), ValidationError);
}

TEST(WeakSeries, MatchesDoubledSpaceSum) {
  // 4 tr[S W_a H_i (x) H_j] with W_a = sum_{x<=a} A^3 (1 - B)^{2x}, A = rho (x) 1 - 1 (x) rho, B = rho (x) 1 + 1 (x) rho
  random::Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    const int d = random::integer(rng, 2, 4);
    const DensityMatrix rho = random::state(rng, d, random::integer(rng, 1, d));
    const Draw dr = make_draw(rho, {random::hermitian(rng, d), random::hermitian(rng, d)}, {0.0, 0.0});
    const Matrix id = Matrix::Identity(d, d);
    const Matrix a = oracle::kron(rho.matrix(), id) - oracle::kron(id, rho.matrix());
    const Matrix c = Matrix::Identity(d * d, d * d) - oracle::kron(rho.matrix(), id) - oracle::kron(id, rho.matrix());
    const Matrix s = swap_operator(static_cast<int>(d)).matrix();
    const Matrix hh = oracle::kron(dr.pt.generators[0].matrix(), dr.pt.generators[1].matrix());
    const Matrix w0 = a * a * a;
    const Matrix w1 = w0 + w0 * c * c;
    EXPECT_LT(std::abs(weak_series_truncation(dr.rho.spectrum(), dr.pt, 0).entries(0, 1) - 4.0 * (s * w0 * hh).trace()), 1e-12);
    EXPECT_LT(std::abs(weak_series_truncation(dr.rho.spectrum(), dr.pt, 1).entries(0, 1) - 4.0 * (s * w1 * hh).trace()), 1e-12);
  }
}

TEST(WeakSeries, FullRankQubitSpotCheck) {
  random::Rng rng(43);
  const DensityMatrix rho = random::state(rng, 2, 2);
  const Draw dr = make_draw(rho, {random::hermitian(rng, 2), random::hermitian(rng, 2)}, {0.0, 0.0});
  const Matrix w = weak_direct(dr.rho, dr.sld).entries;
  const double e0 = (w - weak_series_truncation(dr.rho.spectrum(), dr.pt, 0).entries).norm();
  const double e1 = (w - weak_series_truncation(dr.rho.spectrum(), dr.pt, 1).entries).norm();
  EXPECT_LE(e1, e0 + 1e-12);
}

TEST(ConditionOperators, DefinitionsAndInvariants) {
  random::Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const int d = random::integer(rng, 2, 7);
    const Draw dr = random_case(rng, d, random::integer(rng, 1, d), 3);
    const ConditionOperators ops = condition_operators_direct(dr.rho, dr.sld);
    const Matrix& pi = dr.rho.spectrum().support_projector;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const Matrix s = oracle::commutator(dr.sld.ops[i].matrix(), dr.sld.ops[j].matrix());
        EXPECT_LT((ops.strong.at(i, j) - s).norm(), 1e-13);
        EXPECT_LT((ops.one_sided.at(i, j) - s * pi).norm(), 1e-13);
        EXPECT_LT((ops.strong.at(j, i) + ops.strong.at(i, j)).norm(), 1e-13);
        EXPECT_LT((ops.strong.at(i, j) + ops.strong.at(i, j).adjoint()).norm(), 1e-13);
        EXPECT_LT((ops.partial.at(i, j) + ops.partial.at(i, j).adjoint()).norm(), 1e-13);
      }
    }
  }
}

TEST(SupportKernel, ReassemblyProperty) {
  random::Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    const int d = random::integer(rng, 2, 9);
    const Draw dr = random_case(rng, d, random::integer(rng, 1, d), 2);
    const ConditionOperators ops = condition_operators_direct(dr.rho, dr.sld);
    const SupportKernelDecomposition dec = support_kernel_decomposition(dr.rho.spectrum(), dr.pt);
    EXPECT_LT(properties::max_gap(dec.strong, ops.strong), 1e-9);
    EXPECT_LT(properties::max_gap(dec.one_sided, ops.one_sided), 1e-9);
    EXPECT_LT(properties::max_gap(dec.partial, ops.partial), 1e-9);
  }
}

TEST(SupportKernel, RankTwoSpecialisedForms) {
  random::Rng rng(46);
  for (int t = 0; t < 30; ++t) {
    const int d = random::integer(rng, 3, 7);
    const Draw dr = random_case(rng, d, 2, 2);
    const SupportKernelDecomposition dec = support_kernel_decomposition(dr.rho.spectrum(), dr.pt);
    const RankTwoForms f = rank_two_forms(dr.rho.matrix(), dr.pt.generators[0].matrix(), dr.pt.generators[1].matrix());
    EXPECT_LT((dec.iss_prime.at(0, 1) - f.iss_prime).norm(), 1e-10);
    EXPECT_LT((dec.iks.at(0, 1) - f.iks).norm(), 1e-10);
  }
}

TEST(SupportKernel, FullRankHasNoKernelTerms) {
  random::Rng rng(47);
  const Draw dr = random_case(rng, 4, 4, 2);
  const SupportKernelDecomposition dec = support_kernel_decomposition(dr.rho.spectrum(), dr.pt);
  EXPECT_LT(dec.isk.norm() + dec.iks.norm() + dec.ikk.norm(), 1e-14);
}

TEST(PcTraceNorm, MatchesSvdOracle) {
  random::Rng rng(48);
  for (int t = 0; t < 20; ++t) {
    const int d = random::integer(rng, 2, 6);
    const Draw dr = random_case(rng, d, random::integer(rng, 1, d), 2);
    const DensityMatrix rho_theta = evolve(dr.rho, dr.pt);
    const std::vector<HermitianOperator> enc = encoded_slds(dr.sld, dr.pt);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_theta.matrix());
    const Matrix root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
    const double ref = oracle::trace_norm(root * oracle::commutator(enc[0].matrix(), enc[1].matrix()) * root);
    const ScalarConditionMatrix p = pc_trace_norm(rho_theta, enc);
    EXPECT_NEAR(p.entries(0, 1).real(), ref, 1e-10);
    EXPECT_NEAR(p.entries(1, 0).real(), ref, 1e-10);
  }
}

TEST(Classify, HierarchyProperty) {
  random::Rng rng(49);
  int seen_partial_only = 0, seen_all = 0;
  for (int t = 0; t < 200; ++t) {
    const Draw dr = t % 2 ? properties::random_draw(rng, 7, 2) : properties::structured_draw(rng, 7, 2);
    const ClassificationReport rep = classify(dr.rho, dr.pt, dr.sld);
    EXPECT_TRUE(rep.hierarchy_consistent);
    EXPECT_TRUE(!rep.sc || rep.oc);
    EXPECT_TRUE(!rep.oc || rep.pc);
    EXPECT_TRUE(!rep.pc || rep.wc);
    seen_partial_only += rep.pc && !rep.oc;
    seen_all += rep.sc;
  }
  // the structured half must actually reach both boundary regimes
  EXPECT_GT(seen_partial_only, 0);
  EXPECT_GT(seen_all, 0);
}

TEST(Classify, PureStateWithCommutingGenerators) {
  random::Rng rng(50);
  for (int t = 0; t < 10; ++t) {
    const Vector psi = random::pure(rng, 4);
    const DensityMatrix rho(psi * psi.adjoint());
    std::vector<HermitianOperator> ops{HermitianOperator(family::pauli_string("ZI")), HermitianOperator(family::pauli_string("IZ"))};
    const std::vector<double> theta = {random::normal(rng), random::normal(rng)};
    const ClassificationReport rep = classify(rho, HamiltonianSet(ops), theta);
    EXPECT_TRUE(rep.wc);
    EXPECT_TRUE(rep.pc);
    EXPECT_TRUE(rep.oc);
    EXPECT_TRUE(rep.commuting_hamiltonians);
  }
  // an eigenstate of both generators is stationary: every condition holds
  const DensityMatrix up(family::basis_state(4, 1) * family::basis_state(4, 1).adjoint());
  std::vector<HermitianOperator> ops{HermitianOperator(family::pauli_string("ZI")), HermitianOperator(family::pauli_string("IZ"))};
  const ClassificationReport rep = classify(up, HamiltonianSet(ops), std::vector<double>{0.0, 0.0});
  EXPECT_TRUE(rep.wc && rep.pc && rep.oc && rep.sc);
}

TEST(Classify, FullRankConditionsCoincideExceptWeak) {
  random::Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const Draw dr = random_case(rng, 4, 4, 2);
    const ClassificationReport rep = classify(dr.rho, dr.pt, dr.sld);
    EXPECT_NEAR(rep.norm_p, rep.norm_s, 1e-10);
    EXPECT_NEAR(rep.norm_o, rep.norm_s, 1e-10);
    EXPECT_FALSE(rep.gauge_dependent);
  }
}

TEST(Classify, ThresholdScalesWithGenerators) {
  random::Rng rng(52);
  const Draw dr = random_case(rng, 3, 2, 2, true);
  EXPECT_NEAR(zero_test_scale(dr.pt), 1.0, 1e-15);  // unit-norm draws
  const Draw big = make_draw(dr.rho, {10.0 * dr.pt.generators[0].matrix(), 10.0 * dr.pt.generators[1].matrix()}, {0.0, 0.0});
  EXPECT_NEAR(zero_test_scale(big.pt), 100.0, 1e-12);
}
