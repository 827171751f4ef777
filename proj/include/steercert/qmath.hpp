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

// Dense small-dimension quantum linear algebra.
//
// Subsystem convention: a composite index is row-major over `dims`, with
// subsystem 0 the most significant digit, so |01> on dims {2,2} is index 1.

#ifndef STEERCERT_QMATH_HPP
#define STEERCERT_QMATH_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "steercert/rng.hpp"

namespace steercert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 12;
/// Measurement branches below this probability are never sampled.
inline constexpr double kNegligibleProbability = 1e-14;

std::size_t total_dimension(std::span<const std::size_t> dims);

class StateVector {
 public:
  /// Takes the amplitudes as given; throws if the length disagrees with dims.
  StateVector(Vector amplitudes, Dims dims);

  /// Rescales to unit norm. Throws on a zero vector.
  static StateVector normalized(Vector amplitudes, Dims dims);
  static StateVector basis(Dims dims, std::size_t index);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

  /// Same amplitudes under a different factorisation of the total dimension.
  StateVector regrouped(Dims dims) const;

 private:
  Vector amplitudes_;
  Dims dims_;
};

class DensityMatrix {
 public:
  /// Checks only the shape; use `is_valid` for the physical invariants.
  DensityMatrix(Matrix entries, Dims dims);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Dims dims);

  const Matrix& entries() const { return entries_; }
  const Dims& dims() const { return dims_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }

  /// Hermitian, unit trace and eigenvalues >= -tol.
  bool is_valid(double tol = kStateTolerance) const;
  double purity() const;
  DensityMatrix regrouped(Dims dims) const;

 private:
  Matrix entries_;
  Dims dims_;
};

/// A +-1 valued observable: a Hermitian involution acting on one subsystem.
class Observable {
 public:
  Observable(Matrix matrix, std::size_t subsystem = 0);

  const Matrix& matrix() const { return matrix_; }
  std::size_t subsystem() const { return subsystem_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  Observable on(std::size_t subsystem) const { return Observable(matrix_, subsystem, Unchecked{}); }
  Observable negated() const { return Observable(-matrix_, subsystem_, Unchecked{}); }

 private:
  struct Unchecked {};
  Observable(Matrix matrix, std::size_t subsystem, Unchecked)
      : matrix_(std::move(matrix)), subsystem_(subsystem) {}

  Matrix matrix_;
  std::size_t subsystem_;
};

Matrix identity(std::size_t n);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kStateTolerance);
bool is_involution(const Matrix& m, double tol = kStateTolerance);
/// Eigenvalues of the Hermitian part of `m`, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// (I (x) ... (x) op (x) ... (x) I) v, without materialising the full operator.
Vector apply_local(const Matrix& op, std::size_t subsystem, const Dims& dims, const Vector& v);
/// Left-multiplies every column of `m` by the embedded local operator.
Matrix apply_local_left(const Matrix& op, std::size_t subsystem, const Dims& dims, const Matrix& m);
/// op rho op^dagger on one subsystem.
Matrix conjugate_local(const Matrix& op, std::size_t subsystem, const Dims& dims, const Matrix& rho);
/// Dense embedding of a local operator; prefer `apply_local` for large dims.
Matrix local_operator(const Matrix& op, std::size_t subsystem, const Dims& dims);

/// Reduced state on `keep` (sorted, deduplicated, original relative order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);
/// Reorders subsystems: result subsystem k is input subsystem order[k].
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// sqrt(<phi|rho|phi>).
double fidelity_with_pure(const DensityMatrix& rho, const StateVector& phi);

struct Projectors {
  Matrix plus;
  Matrix minus;
};
Projectors eigenprojectors(const Observable& obs);

/// Probability of outcome `sign` (+1 or -1) when measuring `obs` on `rho`.
double outcome_probability(const DensityMatrix& rho, const Observable& obs, int sign);

struct MeasurementResult {
  int outcome;
  DensityMatrix post_state;
  double probability;
};
struct PureMeasurementResult {
  int outcome;
  StateVector post_state;
  double probability;
};

/// Projective Born-rule measurement. Mutates only `rng`.
MeasurementResult measure(const DensityMatrix& rho, const Observable& obs, Rng& rng);
PureMeasurementResult measure(const StateVector& psi, const Observable& obs, Rng& rng);

/// Outcome-averaged measurement channel: sum_s P_s rho P_s.
DensityMatrix dephase(const DensityMatrix& rho, const Observable& obs);

struct StandardObservables {
  Observable x;
  Observable y;
  Observable z;
  Observable p;  ///< (X + Y) / sqrt(2)
};
StandardObservables standard_observables();

struct ObservablePair {
  Observable first;
  Observable second;
};
/// Bob's perturbed X/Y pair used by the tightness witness; tends to (X, Y) as
/// eps_prime -> 0. Requires 0 < eps_prime < 1.
ObservablePair deviated_observables(double eps_prime);

/// (|01> + |10>) / sqrt(2) on dims {2, 2}.
StateVector bell_psi_plus();
/// Eigenstates of Pauli Y for eigenvalues +1 and -1.
Vector y_plus();
Vector y_minus();

}  // namespace steercert

#endif  // STEERCERT_QMATH_HPP
