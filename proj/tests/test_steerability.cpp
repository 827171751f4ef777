// Copyright 2026 The steercert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"
#include "steercert/sampling.hpp"
#include "steercert/steerability.hpp"

namespace sc = steercert;
namespace ss = steercert::steerability;
using sc::Complex;
using sc::Matrix;
using sc::Vector;

namespace {

// Tr_A[(E (x) I)|psi+><psi+|] by explicit index sums.
Matrix steered_oracle(const Matrix& e) {
  const Vector psi = sc::bell_psi_plus().amplitudes();
  Matrix out = Matrix::Zero(2, 2);
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      Complex acc = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int ap = 0; ap < 2; ++ap) acc += e(a, ap) * psi(ap * 2 + b) * std::conj(psi(a * 2 + bp));
      }
      out(b, bp) = acc;
    }
  }
  return out;
}

Matrix ket_bra(const Vector& v) { return v * v.adjoint(); }

}  // namespace

TEST(Steerability, BellStateIsTotallySteerable) {
  const auto v = ss::check_totally_steerable(sc::DensityMatrix::from_pure(sc::bell_psi_plus()));
  EXPECT_TRUE(v.totally_steerable);
  EXPECT_TRUE(v.rho_b_maximally_mixed);
  EXPECT_TRUE(v.completely_steerable);
  EXPECT_NEAR(v.purity, 1.0, 1e-12);
  ASSERT_EQ(v.schmidt_coefficients.size(), 2u);
  EXPECT_NEAR(v.schmidt_coefficients[0], 1 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(v.schmidt_coefficients[1], 1 / std::sqrt(2.0), 1e-9);
  EXPECT_TRUE(ss::maximal_entanglement_crosscheck(sc::DensityMatrix::from_pure(sc::bell_psi_plus())));
}

TEST(Steerability, ProductStateIsNot) {
  const auto v = ss::check_totally_steerable(sc::DensityMatrix::from_pure(sc::StateVector::basis({2, 2}, 0)));
  EXPECT_FALSE(v.totally_steerable);
  EXPECT_FALSE(v.rho_b_maximally_mixed);
  EXPECT_NEAR(v.rho_b_distance, 0.5, 1e-12);
  // A pure product purifies trivially, so the factorisation itself holds.
  EXPECT_TRUE(v.completely_steerable);
}

TEST(Steerability, WernerPointEight) {
  const double p = 0.8;
  const auto rho = ss::werner_state(p);
  const auto v = ss::check_totally_steerable(rho);
  EXPECT_TRUE(v.rho_b_maximally_mixed);
  EXPECT_FALSE(v.totally_steerable);
  // Eigenvalues p + (1-p)/4 once and (1-p)/4 three times.
  const double top = p + (1 - p) / 4, rest = (1 - p) / 4;
  EXPECT_NEAR(v.purity, top * top + 3 * rest * rest, 1e-12);
  EXPECT_NEAR(v.purity, 0.73, 1e-12);
  EXPECT_TRUE(v.schmidt_coefficients.empty());
  EXPECT_TRUE(ss::maximal_entanglement_crosscheck(rho));
}

TEST(Steerability, WernerGridAgreement) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const auto rho = ss::werner_state(p);
    EXPECT_TRUE(ss::maximal_entanglement_crosscheck(rho)) << "p=" << p;
    EXPECT_EQ(ss::check_totally_steerable(rho).totally_steerable, i == 100) << "p=" << p;
  }
  EXPECT_THROW(ss::werner_state(1.1), std::domain_error);
}

TEST(Steerability, RandomStatesAgree) {
  sc::Rng rng(71);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rank = 1 + t % 4;
    EXPECT_TRUE(ss::maximal_entanglement_crosscheck(sc::random_density({2, 2}, rng, rank)));
  }
  // Random maximally entangled pure states: local unitary on psi+.
  for (int t = 0; t < 50; ++t) {
    const Matrix u = sc::random_unitary(2, rng);
    const Vector v = sc::kron(u, sc::identity(2)) * sc::bell_psi_plus().amplitudes();
    const sc::DensityMatrix rho(ket_bra(v), {2, 2});
    EXPECT_TRUE(ss::check_totally_steerable(rho).totally_steerable);
    EXPECT_TRUE(ss::maximal_entanglement_crosscheck(rho));
  }
}

TEST(Steerability, PurificationReproducesState) {
  sc::Rng rng(72);
  const auto rho = sc::random_density({2, 2}, rng);
  const auto psi = ss::canonical_purification(rho);
  EXPECT_EQ(psi.dims(), (sc::Dims{2, 2, 4}));
  const auto back = sc::partial_trace(sc::DensityMatrix::from_pure(psi), {0, 1});
  EXPECT_LT(sc::max_abs(back.entries() - rho.entries()), 1e-12);
}

TEST(Steerability, FactorizationInvariantUnderPurifierUnitaries) {
  sc::Rng rng(73);
  for (int t = 0; t < 30; ++t) {
    const auto rho = sc::random_density({2, 2}, rng, 1 + t % 4);
    const auto psi = ss::canonical_purification(rho);
    const Matrix u = sc::random_unitary(4, rng);
    const sc::StateVector moved(sc::apply_local(u, 2, psi.dims(), psi.amplitudes()), psi.dims());
    const double r0 = ss::factorization_residual(psi);
    const double r1 = ss::factorization_residual(moved);
    // Zero stays zero; nonzero stays nonzero (the entrywise max itself may move).
    EXPECT_EQ(r0 <= 1e-10, r1 <= 1e-10);
  }
}

TEST(Steerability, RejectsInvalidInput) {
  EXPECT_THROW(ss::check_totally_steerable(sc::DensityMatrix(Matrix::Identity(4, 4), {2, 2})), std::invalid_argument);
  EXPECT_THROW(ss::check_totally_steerable(sc::DensityMatrix::maximally_mixed({4})), std::invalid_argument);
}

TEST(Steerability, FamilyReducesToBellState) {
  const auto rho = ss::general_form({Complex(0, 0), 0.3, 0.0});
  const Matrix bell = sc::DensityMatrix::from_pure(sc::bell_psi_plus()).entries();
  EXPECT_LT(sc::max_abs(rho.entries() - bell), 1e-15);
  EXPECT_LT(sc::max_abs(ss::raw_family_matrix({Complex(0, 0), 0.3, 0.0}) - bell), 1e-15);
}

TEST(Steerability, FamilyNamedPoint) {
  const auto rho = ss::general_form({Complex(1, 1), 0.7, 2.1});
  EXPECT_TRUE(rho.is_valid());
  const auto v = ss::check_totally_steerable(rho);
  EXPECT_TRUE(v.totally_steerable);
  EXPECT_NEAR(v.purity, 1.0, 1e-10);
}

TEST(Steerability, LiteralFamilyMatrixIsNotPositive) {
  // The printed family is Hermitian with unit trace but has a negative
  // eigenvalue off the psi+ slice; general_form uses the corrected vector.
  const Matrix m = ss::raw_family_matrix({Complex(1, 1), 0.7, 2.1});
  EXPECT_TRUE(sc::is_hermitian(m));
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
  EXPECT_LT(sc::hermitian_eigenvalues(m).minCoeff(), -0.1);
}

TEST(Steerability, FamilySweepIsMaximallyEntangled) {
  sc::Rng rng(74);
  const auto rows = ss::family_sweep(300, rng);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.purity, 1.0, 1e-10);
    EXPECT_NEAR(r.schmidt1, 1 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(r.schmidt2, 1 / std::sqrt(2.0), 1e-9);
    EXPECT_TRUE(r.totally_steerable);
    EXPECT_TRUE(ss::maximal_entanglement_crosscheck(ss::general_form(r.form)));
  }
  const std::string csv = ss::family_csv(rows);
  EXPECT_EQ(csv.rfind("re_f,im_f,phi1,phi2,purity,schmidt1,schmidt2,verdict\n", 0), 0u);
}

TEST(Steerability, SteeredAssemblageMatchesOracle) {
  sc::Rng rng(75);
  for (int t = 0; t < 20; ++t) {
    const Matrix e = sc::random_density({2}, rng).entries();
    EXPECT_LT(sc::max_abs(ss::steered_assemblage_element(e) - steered_oracle(e)), 1e-12);
  }
}

TEST(Steerability, SteerToUniformEnsemble) {
  const Matrix q = 0.25 * sc::identity(2);
  const auto e = ss::steer_to_ensemble({q, q});
  ASSERT_EQ(e.size(), 2u);
  EXPECT_LT(sc::max_abs(e[0] - 0.5 * sc::identity(2)), 1e-15);
  EXPECT_LT(sc::max_abs(e[1] - 0.5 * sc::identity(2)), 1e-15);
}

TEST(Steerability, SteerToNamedEnsembles) {
  const double r = 1 / std::sqrt(2.0);
  Vector plus(2), minus(2), zero(2), one(2), yp = sc::y_plus(), ym = sc::y_minus();
  plus << r, r;
  minus << r, -r;
  zero << 1, 0;
  one << 0, 1;
  for (const auto& [u, w] : {std::pair{plus, minus}, std::pair{zero, one}, std::pair{yp, ym}}) {
    const std::vector<Matrix> targets = {0.5 * ket_bra(u), 0.5 * ket_bra(w)};
    const auto e = ss::steer_to_ensemble(targets);
    EXPECT_LT(sc::max_abs(e[0] + e[1] - sc::identity(2)), 1e-12);
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_GE(sc::hermitian_eigenvalues(e[a]).minCoeff(), -1e-12);
      EXPECT_LT(sc::max_abs(steered_oracle(e[a]) - targets[a]), 1e-10);
    }
  }
}

TEST(Steerability, SteerToRandomEnsembles) {
  sc::Rng rng(76);
  for (int t = 0; t < 50; ++t) {
    // Split I/2 into three positive pieces.
    const Matrix a = sc::random_density({2}, rng).entries() * 0.2;
    const Matrix b = sc::random_density({2}, rng).entries() * 0.2;
    const Matrix c = 0.5 * sc::identity(2) - a - b;
    if (sc::hermitian_eigenvalues(c).minCoeff() < 0) continue;
    const auto e = ss::steer_to_ensemble({a, b, c});
    EXPECT_LT(sc::max_abs(e[0] + e[1] + e[2] - sc::identity(2)), 1e-12);
    EXPECT_LT(sc::max_abs(steered_oracle(e[0]) - a), 1e-10);
    EXPECT_LT(sc::max_abs(steered_oracle(e[2]) - c), 1e-10);
  }
}

TEST(Steerability, SteerRejectsBadTargets) {
  EXPECT_THROW(ss::steer_to_ensemble({}), std::invalid_argument);
  EXPECT_THROW(ss::steer_to_ensemble({0.25 * sc::identity(2)}), std::invalid_argument);
  Matrix neg = 0.5 * sc::identity(2);
  neg(0, 0) = -0.1;
  neg(1, 1) = 0.6;
  EXPECT_THROW(ss::steer_to_ensemble({neg}), std::invalid_argument);
}
