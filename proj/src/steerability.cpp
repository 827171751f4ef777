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

#include "steercert/steerability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace steercert::steerability {

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw std::invalid_argument("expected a two-qubit state with dims {2, 2}");
  if (!rho.is_valid()) throw std::invalid_argument("not a valid density matrix");
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

StateVector canonical_purification(const DensityMatrix& rho_ab) {
  if (rho_ab.dimension() != 4) throw std::invalid_argument("canonical_purification: expected a 4x4 state");
  const Matrix herm = 0.5 * (rho_ab.entries() + rho_ab.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  Vector psi = Vector::Zero(16);
  // Eigenvalues at round-off level are zero: their square roots (~1e-8)
  // would otherwise leak into the factorisation test at the tolerance.
  constexpr double kRoundOff = 1e-13;
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double lambda = es.eigenvalues()(k);
    const double w = lambda > kRoundOff ? std::sqrt(lambda) : 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) psi(i * 4 + k) = w * es.eigenvectors()(i, k);
  }
  return StateVector::normalized(std::move(psi), {2, 2, 4});
}

double factorization_residual(const StateVector& psi_abc) {
  const DensityMatrix rho = DensityMatrix::from_pure(psi_abc);
  const DensityMatrix bc = partial_trace(rho, {1, 2});
  const DensityMatrix b = partial_trace(bc, {0});
  const DensityMatrix c = partial_trace(bc, {1});
  return max_abs(bc.entries() - kron(b.entries(), c.entries()));
}

SteerabilityVerdict check_totally_steerable(const DensityMatrix& rho_ab, double tol) {
  require_two_qubit(rho_ab);
  SteerabilityVerdict v;
  v.purity = rho_ab.purity();
  v.rho_b_distance = trace_distance(partial_trace(rho_ab, {1}), DensityMatrix::maximally_mixed({2}));
  v.rho_b_maximally_mixed = v.rho_b_distance <= tol;
  v.factorization_residual = factorization_residual(canonical_purification(rho_ab));
  v.completely_steerable = v.factorization_residual <= tol;
  v.totally_steerable = v.rho_b_maximally_mixed && v.completely_steerable;

  if (v.purity >= 1.0 - tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ab.entries() + rho_ab.entries().adjoint()));
    const Vector top = es.eigenvectors().col(3);
    Matrix m(2, 2);
    m << top(0), top(1), top(2), top(3);
    Eigen::JacobiSVD<Matrix> svd(m);
    v.schmidt_coefficients = {svd.singularValues()(0), svd.singularValues()(1)};
  }
  return v;
}

bool maximal_entanglement_crosscheck(const DensityMatrix& rho_ab, double tol) {
  const SteerabilityVerdict v = check_totally_steerable(rho_ab, tol);
  const bool direct = v.purity >= 1.0 - tol && v.rho_b_distance <= tol;
  return direct == v.totally_steerable;
}

DensityMatrix general_form(const SteerableForm& p) {
  const Complex phase = std::exp(Complex(0.0, -p.phi2));
  Vector v(4);
  v << p.f, 1.0, phase, -std::conj(p.f) * phase;
  v /= std::sqrt(2.0 * (std::norm(p.f) + 1.0));
  return DensityMatrix(v * v.adjoint(), {2, 2});
}

Matrix raw_family_matrix(const SteerableForm& p) {
  const Complex f = p.f;
  const Complex fc = std::conj(f);
  const double f2 = std::norm(f);
  const Complex e1 = std::exp(Complex(0.0, p.phi1));
  const Complex e2 = std::exp(Complex(0.0, p.phi2));
  Matrix m(4, 4);
  m << f2, f, f, e1 * f2,
       fc, 1.0, e2, -f,
       fc, std::conj(e2), 1.0, -f,
       std::conj(e1) * f2, -fc, -fc, f2;
  return m / (2.0 * (f2 + 1.0));
}

Matrix steered_assemblage_element(const Matrix& povm_element) {
  const DensityMatrix rho = DensityMatrix::from_pure(bell_psi_plus());
  const Matrix weighted = apply_local_left(povm_element, 0, rho.dims(), rho.entries());
  return partial_trace(DensityMatrix(weighted, rho.dims()), {1}).entries();
}

std::vector<Matrix> steer_to_ensemble(const std::vector<Matrix>& targets, double tol) {
  if (targets.empty()) throw std::invalid_argument("steer_to_ensemble: no targets");
  Matrix sum = Matrix::Zero(2, 2);
  for (const Matrix& t : targets) {
    if (t.rows() != 2 || t.cols() != 2) throw std::invalid_argument("steer_to_ensemble: targets must be 2x2");
    if (!is_hermitian(t, tol)) throw std::invalid_argument("steer_to_ensemble: target is not Hermitian");
    if (hermitian_eigenvalues(t).minCoeff() < -tol) throw std::invalid_argument("steer_to_ensemble: target is not positive");
    sum += t;
  }
  if (max_abs(sum - 0.5 * identity(2)) > tol) throw std::invalid_argument("steer_to_ensemble: targets do not sum to I/2");
  const Matrix x = pauli_x();
  std::vector<Matrix> out;
  out.reserve(targets.size());
  for (const Matrix& t : targets) {
    const Matrix e = 2.0 * x * t.transpose() * x;
    out.push_back(0.5 * (e + e.adjoint()));
  }
  return out;
}

std::vector<FamilyRow> family_sweep(std::size_t draws, Rng& rng, double tol) {
  std::vector<FamilyRow> rows;
  rows.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    FamilyRow row;
    const double re = rng.normal();
    const double im = rng.normal();
    row.form.f = Complex(re, im);
    row.form.phi1 = 2.0 * std::numbers::pi * rng.uniform();
    row.form.phi2 = 2.0 * std::numbers::pi * rng.uniform();
    const SteerabilityVerdict v = check_totally_steerable(general_form(row.form), tol);
    row.purity = v.purity;
    if (v.schmidt_coefficients.size() == 2) {
      row.schmidt1 = v.schmidt_coefficients[0];
      row.schmidt2 = v.schmidt_coefficients[1];
    }
    row.totally_steerable = v.totally_steerable;
    rows.push_back(row);
  }
  return rows;
}

std::string family_csv(const std::vector<FamilyRow>& rows) {
  std::string out = "re_f,im_f,phi1,phi2,purity,schmidt1,schmidt2,verdict\n";
  for (const FamilyRow& r : rows) {
    out += g17(r.form.f.real()) + ',' + g17(r.form.f.imag()) + ',' + g17(r.form.phi1) + ',' + g17(r.form.phi2) +
           ',' + g17(r.purity) + ',' + g17(r.schmidt1) + ',' + g17(r.schmidt2) + ',' +
           (r.totally_steerable ? "true" : "false") + '\n';
  }
  return out;
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("werner_state: p must lie in [0, 1]");
  const Matrix bell = DensityMatrix::from_pure(bell_psi_plus()).entries();
  return DensityMatrix(p * bell + (1.0 - p) * 0.25 * identity(4), {2, 2});
}

}  // namespace steercert::steerability
