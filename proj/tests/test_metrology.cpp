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

#include "metrocommute/closed_forms.hpp"
#include "metrocommute/families.hpp"
#include "metrocommute/metrology.hpp"
#include "metrocommute/properties.hpp"
#include "metrocommute/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace metrocommute;
using properties::Draw;
using properties::make_draw;

namespace {

// QFIM from finite differences and the vectorised SLD solve.
RealMatrix oracle_qfim(const Matrix& rho, const std::vector<Matrix>& hams, const std::vector<double>& theta) {
  const Matrix rt = oracle::encoded_state(rho, hams, theta);
  std::vector<Matrix> l;
  for (std::size_t i = 0; i < hams.size(); ++i) l.push_back(oracle::sld(rt, oracle::derivative(rho, hams, theta, i)));
  return oracle::qfim(rt, l);
}

std::vector<Matrix> qutrit_hams(double a, double ap) {
  return {a * family::qutrit_h() + ap * family::qutrit_hprime(), family::qutrit_diag()};
}

}  // namespace

TEST(Qfim, MatchesOracle) {
  random::Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const int d = random::integer(rng, 2, 5);
    const DensityMatrix rho = random::state(rng, d, random::integer(rng, 1, d));
    const std::vector<Matrix> hams = {random::hermitian(rng, d), random::hermitian(rng, d)};
    const std::vector<double> theta = {random::normal(rng), random::normal(rng)};
    const Draw dr = make_draw(rho, hams, theta);
    EXPECT_LT((qfim(dr.rho, dr.sld).matrix - oracle_qfim(rho.matrix(), hams, theta)).norm(), 1e-6);
  }
}

TEST(Qfim, PureStateOverlapFormula) {
  random::Rng rng(62);
  for (int t = 0; t < 10; ++t) {
    const Vector psi = random::pure(rng, 4);
    const std::vector<Matrix> hams = {random::hermitian(rng, 4), random::hermitian(rng, 4)};
    const std::vector<double> theta = {random::normal(rng), random::normal(rng)};
    std::vector<Vector> dpsi;
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<double> plus = theta, minus = theta;
      plus[i] += 1e-5;
      minus[i] -= 1e-5;
      dpsi.push_back((oracle::unitary(hams, plus) - oracle::unitary(hams, minus)) * psi / 2e-5);
    }
    const Vector phi = oracle::unitary(hams, theta) * psi;
    RealMatrix ref(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ref(i, j) = 4.0 * (dpsi[i].dot(dpsi[j]) - dpsi[i].dot(phi) * phi.dot(dpsi[j])).real();
    const Draw dr = make_draw(DensityMatrix(psi * psi.adjoint()), hams, theta);
    EXPECT_LT((qfim(dr.rho, dr.sld).matrix - ref).norm(), 1e-7);
  }
}

TEST(Qfim, RankAndConditionNumber) {
  const Draw dr = make_draw(family::qutrit_rank_two(std::acos(-1.0) / 4, 0.25), qutrit_hams(0.0, 1.0), {0.0, 0.0});
  const QfimResult f = qfim(dr.rho, dr.sld);
  EXPECT_EQ(f.rank, 1);
  EXPECT_GT(f.condition_number, kMaxConditionNumber);
}

TEST(QfimClosedForm, QutritFamilyAgainstOracle) {
  for (double lambda : {0.1, 0.25, 0.4}) {
    const DensityMatrix rho = family::qutrit_rank_two(std::acos(-1.0) / 4, lambda);
    const RealMatrix ref = oracle_qfim(rho.matrix(), qutrit_hams(0.0, 1.0), {0.0, 0.0});
    EXPECT_LT((closed_form::qutrit_qfim(lambda) - ref).norm(), 1e-6) << lambda;
    EXPECT_LT((closed_form::qutrit_qfim_as_stated(lambda) - 2.0 * ref).norm(), 1e-6) << lambda;
  }
}

TEST(QfimClosedForm, BellRankThreeAgainstOracle) {
  const std::vector<Matrix> hams = {family::local(family::pauli('X'), 0, 2), family::local(family::pauli('X'), 1, 2)};
  for (auto [l1, l2] : {std::pair{0.3, 0.2}, std::pair{0.5, 0.1}, std::pair{0.2, 0.6}}) {
    const DensityMatrix rho = family::bell_rank_three(l1, l2);
    const RealMatrix ref = oracle_qfim(rho.matrix(), hams, {0.0, 0.0});
    EXPECT_LT((closed_form::bell_rank_three_qfim(l1, l2) - ref).norm(), 1e-6);
  }
  RealMatrix at(2, 2);
  at << 1.0, -0.6, -0.6, 1.0;
  EXPECT_LT((closed_form::bell_rank_three_qfim(0.3, 0.2) - at).norm(), 1e-12);
}

TEST(QfimClosedForm, QutritBellPairAgainstOracle) {
  for (double lambda : {0.2, 1.0 / 3.0, 0.7}) {
    const Matrix eta = family::qutrit_hprime();
    const std::vector<Matrix> hams = {family::local(eta, 0, 2), family::local(eta, 1, 2)};
    const RealMatrix ref = oracle_qfim(family::qutrit_bell_pair(lambda).matrix(), hams, {0.0, 0.0});
    EXPECT_LT((closed_form::qutrit_bell_qfim(lambda) - ref).norm(), 1e-6);
  }
}

TEST(WeightMatrix, Validation) {
  RealMatrix asym(2, 2);
  asym << 1, 0.5, 0.2, 1;
  EXPECT_THROW(WeightMatrix{asym}, ValidationError);
  RealMatrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_THROW(WeightMatrix{indefinite}, ValidationError);
  EXPECT_THROW(WeightMatrix{RealMatrix::Zero(2, 3)}, ValidationError);
  EXPECT_NO_THROW(WeightMatrix::identity(3));
}

TEST(QcrScalar, KnownInverse) {
  RealMatrix f(2, 2);
  f << 2, -1.2, -1.2, 2;
  // tr F^{-1} = 4 / (4 - 1.44)
  EXPECT_NEAR(qcr_scalar(f, WeightMatrix::identity(2)), 1.5625, 1e-12);
  RealMatrix w(2, 2);
  w << 2, 0.5, 0.5, 1;
  EXPECT_NEAR(qcr_scalar(f, WeightMatrix(w)), (w * f.inverse()).trace(), 1e-12);
}

TEST(QcrScalar, SingularRaisesIdentifiabilityError) {
  RealMatrix f(2, 2);
  f << 1, -1, -1, 1;
  EXPECT_THROW(qcr_scalar(f, WeightMatrix::identity(2)), IdentifiabilityError);
  try {
    qcr_scalar(f, WeightMatrix::identity(2));
  } catch (const IdentifiabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("singular"), std::string::npos);
  }
  EXPECT_THROW(qcr_scalar(RealMatrix::Identity(2, 2), WeightMatrix::identity(3)), ValidationError);
}

TEST(Incompatibility, SeparableMixtureValue) {
  const std::vector<Matrix> hams = {family::pauli_string("XI"), family::pauli_string("IY")};
  const Draw dr = make_draw(family::separable_mixture(0.5), hams, {0.0, 0.0});
  const RealMatrix f = qfim(dr.rho, dr.sld).matrix;
  const Matrix w = weak_direct(dr.rho, dr.sld).entries;
  EXPECT_LT(std::abs(w(0, 1) - closed_form::separable_weak(0.5)), 1e-12);
  const IncompatibilityResult e = incompatibility(f, w);
  // eigenvalues of F^{-1} W are +-|W12| / sqrt(det F)
  EXPECT_NEAR(e.measure, 0.5 * std::abs(w(0, 1)) / std::sqrt(f.determinant()), 1e-12);
  EXPECT_NEAR(e.sandwich_factor, 1.0 + e.measure, 1e-15);
}

TEST(Incompatibility, ZeroUnderWeakCommutativity) {
  RealMatrix f(2, 2);
  f << 3, 1, 1, 2;
  EXPECT_EQ(incompatibility(f, Matrix::Zero(2, 2)).measure, 0.0);
  EXPECT_THROW(incompatibility(f, Matrix::Zero(3, 3)), ValidationError);
}

TEST(FisherOrdering, RandomPovmProperty) {
  random::Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    const int d = random::integer(rng, 2, 5);
    const Draw dr = make_draw(random::state(rng, d, d), {random::hermitian(rng, d), random::hermitian(rng, d)},
                              {random::normal(rng), random::normal(rng)});
    const PovmSet povm = random::povm(rng, d, random::integer(rng, d, 2 * d));
    const FisherOrdering o = verify_fc_order(evolve(dr.rho, dr.pt), povm, encoded_slds(dr.sld, dr.pt));
    EXPECT_TRUE(o.holds) << o.min_eigenvalue;
  }
}

TEST(FisherOrdering, SldEigenbasisSaturatesSingleParameter) {
  random::Rng rng(64);
  for (int t = 0; t < 20; ++t) {
    const int d = random::integer(rng, 2, 6);
    const Draw dr = make_draw(random::state(rng, d, d), {random::hermitian(rng, d)}, {random::normal(rng)});
    const DensityMatrix rt = evolve(dr.rho, dr.pt);
    const std::vector<HermitianOperator> enc = encoded_slds(dr.sld, dr.pt);
    const PovmSet povm = PovmSet::projective(hermitian_eig(enc[0]).vectors);
    const double fq = qfim(rt.matrix(), enc).matrix(0, 0);
    EXPECT_NEAR(cfim(rt, povm, enc).matrix(0, 0), fq, 1e-8 * std::max(1.0, fq));
  }
}

TEST(Additivity, TwoCopyProperty) {
  random::Rng rng(65);
  for (int t = 0; t < 10; ++t) {
    const int d = random::integer(rng, 2, 3);
    const Draw dr = make_draw(random::state(rng, d, random::integer(rng, 1, d)),
                              {random::hermitian(rng, d), random::hermitian(rng, d)}, {random::normal(rng), 0.2});
    EXPECT_LT(qfim_additivity(dr.rho, dr.pt, 2), 1e-8);
  }
}

TEST(Additivity, ThreeCopiesAndLimits) {
  random::Rng rng(66);
  const Draw dr = make_draw(random::state(rng, 2, 2), {random::hermitian(rng, 2), random::hermitian(rng, 2)}, {0.4, -0.1});
  EXPECT_LT(qfim_additivity(dr.rho, dr.pt, 3), 1e-8);
  EXPECT_THROW(qfim_additivity(dr.rho, dr.pt, 1), ValidationError);
  EXPECT_THROW(copy_encoding(dr.pt, 4), ValidationError);
}

TEST(CopyEncoding, GeneratorsAreAdditive) {
  random::Rng rng(67);
  const Draw dr = make_draw(random::state(rng, 3, 2), {random::hermitian(rng, 3)}, {0.7});
  const EncodingPoint two = copy_encoding(dr.pt, 2);
  const Matrix& g = dr.pt.generators[0].matrix();
  const Matrix id = Matrix::Identity(3, 3);
  EXPECT_LT((two.generators[0].matrix() - oracle::kron(g, id) - oracle::kron(id, g)).norm(), 1e-13);
  EXPECT_LT((two.unitary.matrix() - oracle::kron(dr.pt.unitary.matrix(), dr.pt.unitary.matrix())).norm(), 1e-13);
}
