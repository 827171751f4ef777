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

#include "steercert/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace steercert {

namespace {

void check_dims(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (std::size_t d : dims) {
    if (d < 2) throw std::invalid_argument("every subsystem dimension must be >= 2");
  }
  if (total_dimension(dims) > kMaxDimension) {
    throw std::invalid_argument("total dimension " + std::to_string(total_dimension(dims)) +
                                " exceeds the supported maximum");
  }
}

// Row-major digit decomposition helpers.
std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    strides[k] = s;
    s *= dims[k];
  }
  return strides;
}

void check_subsystem(const Matrix& op, std::size_t subsystem, const Dims& dims) {
  if (subsystem >= dims.size()) throw std::invalid_argument("subsystem index out of range");
  if (static_cast<std::size_t>(op.rows()) != dims[subsystem] ||
      static_cast<std::size_t>(op.cols()) != dims[subsystem]) {
    throw std::invalid_argument("operator dimension does not match its subsystem");
  }
}

}  // namespace

std::size_t total_dimension(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_);
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_)) {
    throw std::invalid_argument("amplitude count does not match the product of dims");
  }
}

StateVector StateVector::normalized(Vector amplitudes, Dims dims) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalise a zero vector");
  amplitudes /= n;
  return StateVector(std::move(amplitudes), std::move(dims));
}

StateVector StateVector::basis(Dims dims, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  if (index >= static_cast<std::size_t>(v.size())) throw std::invalid_argument("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v), std::move(dims));
}

StateVector StateVector::regrouped(Dims dims) const { return StateVector(amplitudes_, std::move(dims)); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, Dims dims) : entries_(std::move(entries)), dims_(std::move(dims)) {
  check_dims(dims_);
  const std::size_t n = total_dimension(dims_);
  if (static_cast<std::size_t>(entries_.rows()) != n || static_cast<std::size_t>(entries_.cols()) != n) {
    throw std::invalid_argument("density matrix shape does not match the product of dims");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const std::size_t n = total_dimension(dims);
  return DensityMatrix(identity(n) / static_cast<double>(n), std::move(dims));
}

bool DensityMatrix::is_valid(double tol) const {
  if (!is_hermitian(entries_, tol)) return false;
  if (std::abs(entries_.trace() - Complex(1.0, 0.0)) > tol) return false;
  return hermitian_eigenvalues(entries_).minCoeff() >= -tol;
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return entries_.cwiseAbs2().sum();
}

DensityMatrix DensityMatrix::regrouped(Dims dims) const { return DensityMatrix(entries_, std::move(dims)); }

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(Matrix matrix, std::size_t subsystem) : matrix_(std::move(matrix)), subsystem_(subsystem) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
    throw std::invalid_argument("observable must be a square matrix of size >= 2");
  }
  if (!is_hermitian(matrix_)) throw std::invalid_argument("observable is not Hermitian");
  if (!is_involution(matrix_)) throw std::invalid_argument("observable is not an involution (M*M != I)");
}

// ---------------------------------------------------------------------------
// Basic matrices

Matrix identity(std::size_t n) {
  return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_involution(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m * m - identity(static_cast<std::size_t>(m.rows()))) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// Composition

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return StateVector(kron(a.amplitudes(), b.amplitudes()), std::move(dims));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.entries(), b.entries()), std::move(dims));
}

Vector apply_local(const Matrix& op, std::size_t subsystem, const Dims& dims, const Vector& v) {
  check_subsystem(op, subsystem, dims);
  const std::size_t d = dims[subsystem];
  const std::size_t inner = strides_of(dims)[subsystem];
  const std::size_t outer = static_cast<std::size_t>(v.size()) / (d * inner);
  Vector out = Vector::Zero(v.size());
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * d * inner;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex c = op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (c == Complex(0.0, 0.0)) continue;
        for (std::size_t n = 0; n < inner; ++n) {
          out(static_cast<Eigen::Index>(base + i * inner + n)) += c * v(static_cast<Eigen::Index>(base + j * inner + n));
        }
      }
    }
  }
  return out;
}

Matrix apply_local_left(const Matrix& op, std::size_t subsystem, const Dims& dims, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = apply_local(op, subsystem, dims, m.col(c));
  return out;
}

Matrix conjugate_local(const Matrix& op, std::size_t subsystem, const Dims& dims, const Matrix& rho) {
  const Matrix left = apply_local_left(op, subsystem, dims, rho);
  return apply_local_left(op, subsystem, dims, left.adjoint()).adjoint();
}

Matrix local_operator(const Matrix& op, std::size_t subsystem, const Dims& dims) {
  check_subsystem(op, subsystem, dims);
  Matrix out = identity(1);
  for (std::size_t k = 0; k < dims.size(); ++k) out = kron(out, k == subsystem ? op : identity(dims[k]));
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  const Dims& dims = rho.dims();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw std::invalid_argument("partial_trace needs at least one kept subsystem");
  if (keep.back() >= dims.size()) throw std::invalid_argument("partial_trace: invalid subsystem index");

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
  }
  Dims kept_dims;
  for (std::size_t k : keep) kept_dims.push_back(dims[k]);
  if (traced.empty()) return DensityMatrix(rho.entries(), kept_dims);

  const auto strides = strides_of(dims);
  auto offsets = [&](const std::vector<std::size_t>& subs) {
    // Full-space index offset for every joint value of the listed subsystems.
    std::vector<std::size_t> out{0};
    for (std::size_t s : subs) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[s]);
      for (std::size_t base : out) {
        for (std::size_t x = 0; x < dims[s]; ++x) next.push_back(base + x * strides[s]);
      }
      out = std::move(next);
    }
    return out;
  };
  const auto kept_off = offsets(keep);
  const auto traced_off = offsets(traced);

  const Matrix& m = rho.entries();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept_off.size()), static_cast<Eigen::Index>(kept_off.size()));
  for (std::size_t i = 0; i < kept_off.size(); ++i) {
    for (std::size_t j = 0; j < kept_off.size(); ++j) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[i] + t), static_cast<Eigen::Index>(kept_off[j] + t));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order) {
  const Dims& dims = rho.dims();
  if (order.size() != dims.size()) throw std::invalid_argument("permutation length mismatch");
  std::vector<bool> seen(dims.size(), false);
  Dims new_dims;
  for (std::size_t k : order) {
    if (k >= dims.size() || seen[k]) throw std::invalid_argument("order is not a permutation");
    seen[k] = true;
    new_dims.push_back(dims[k]);
  }
  const auto old_strides = strides_of(dims);
  const std::size_t n = rho.dimension();
  // map[new_index] = old_index
  std::vector<std::size_t> map(n);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t old = 0;
    for (std::size_t k = 0; k < order.size(); ++k) old += digit[k] * old_strides[order[k]];
    map[idx] = old;
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  Matrix out(rho.entries().rows(), rho.entries().cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rho.entries()(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]));
    }
  }
  return DensityMatrix(std::move(out), std::move(new_dims));
}

// ---------------------------------------------------------------------------
// Distances

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("trace_distance: dimension mismatch");
  const double td = 0.5 * hermitian_eigenvalues(a.entries() - b.entries()).cwiseAbs().sum();
  return std::clamp(td, 0.0, 1.0);
}

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& phi) {
  if (rho.dimension() != phi.dimension()) throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  const double overlap = (phi.amplitudes().adjoint() * rho.entries() * phi.amplitudes())(0, 0).real();
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

// ---------------------------------------------------------------------------
// Measurement

Projectors eigenprojectors(const Observable& obs) {
  if (!is_involution(obs.matrix())) throw std::invalid_argument("eigenprojectors: observable is not involutive");
  const Matrix id = identity(obs.dimension());
  return {0.5 * (id + obs.matrix()), 0.5 * (id - obs.matrix())};
}

double outcome_probability(const DensityMatrix& rho, const Observable& obs, int sign) {
  const Projectors p = eigenprojectors(obs);
  const Matrix& proj = sign > 0 ? p.plus : p.minus;
  const Matrix applied = apply_local_left(proj, obs.subsystem(), rho.dims(), rho.entries());
  return std::clamp(applied.trace().real(), 0.0, 1.0);
}

namespace {

int sample_sign(double p_plus, double p_minus, Rng& rng) {
  if (p_plus < kNegligibleProbability) return -1;
  if (p_minus < kNegligibleProbability) return +1;
  return rng.uniform() * (p_plus + p_minus) < p_plus ? +1 : -1;
}

}  // namespace

MeasurementResult measure(const DensityMatrix& rho, const Observable& obs, Rng& rng) {
  const Projectors p = eigenprojectors(obs);
  const Matrix left_plus = apply_local_left(p.plus, obs.subsystem(), rho.dims(), rho.entries());
  const double p_plus = std::clamp(left_plus.trace().real(), 0.0, 1.0);
  const double p_minus = std::clamp(1.0 - p_plus, 0.0, 1.0);
  const int sign = sample_sign(p_plus, p_minus, rng);
  const Matrix& proj = sign > 0 ? p.plus : p.minus;
  Matrix post = conjugate_local(proj, obs.subsystem(), rho.dims(), rho.entries());
  const double prob = post.trace().real();
  post /= prob;
  return {sign, DensityMatrix(std::move(post), rho.dims()), prob};
}

PureMeasurementResult measure(const StateVector& psi, const Observable& obs, Rng& rng) {
  const Projectors p = eigenprojectors(obs);
  Vector plus = apply_local(p.plus, obs.subsystem(), psi.dims(), psi.amplitudes());
  const double p_plus = std::clamp(plus.squaredNorm(), 0.0, 1.0);
  const double p_minus = std::clamp(1.0 - p_plus, 0.0, 1.0);
  const int sign = sample_sign(p_plus, p_minus, rng);
  Vector post = sign > 0 ? std::move(plus) : apply_local(p.minus, obs.subsystem(), psi.dims(), psi.amplitudes());
  const double prob = post.squaredNorm();
  post /= std::sqrt(prob);
  return {sign, StateVector(std::move(post), psi.dims()), prob};
}

DensityMatrix dephase(const DensityMatrix& rho, const Observable& obs) {
  const Projectors p = eigenprojectors(obs);
  Matrix out = conjugate_local(p.plus, obs.subsystem(), rho.dims(), rho.entries()) +
               conjugate_local(p.minus, obs.subsystem(), rho.dims(), rho.entries());
  return DensityMatrix(std::move(out), rho.dims());
}

// ---------------------------------------------------------------------------
// Named observables and states

StandardObservables standard_observables() {
  const Matrix p = (pauli_x() + pauli_y()) / std::sqrt(2.0);
  return {Observable(pauli_x()), Observable(pauli_y()), Observable(pauli_z()), Observable(p)};
}

ObservablePair deviated_observables(double eps_prime) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) {
    throw std::domain_error("deviated_observables: eps_prime must lie in (0, 1)");
  }
  const double s = std::sqrt(eps_prime);
  const double c = std::sqrt(1.0 - eps_prime);
  Matrix b0(2, 2);
  b0 << -s, c, c, s;
  Matrix b1(2, 2);
  b1 << 0.0, Complex(s, -c), Complex(s, c), 0.0;
  return {Observable(b0), Observable(b1)};
}

StateVector bell_psi_plus() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(v), {2, 2});
}

Vector y_plus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  return v;
}

Vector y_minus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), Complex(0.0, -1.0 / std::sqrt(2.0));
  return v;
}

}  // namespace steercert
