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

// Total steerability of two-qubit states.
//
// rho_AB is completely steerable by Bob iff some (equivalently every)
// purification |psi_ABC> has rho_BC = rho_B (x) rho_C. It is totally
// steerable when in addition Tr_A(rho_AB) = I/2, which happens exactly for
// maximally entangled pure states.

#ifndef STEERCERT_STEERABILITY_HPP
#define STEERCERT_STEERABILITY_HPP

#include <string>
#include <vector>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"

namespace steercert::steerability {

inline constexpr double kDefaultTolerance = 1e-8;

struct SteerableForm {
  Complex f{0.0, 0.0};
  double phi1 = 0.0;
  double phi2 = 0.0;
};

struct SteerabilityVerdict {
  bool rho_b_maximally_mixed = false;
  bool completely_steerable = false;
  bool totally_steerable = false;
  double purity = 0.0;
  /// Descending; filled only when the state is pure within tolerance.
  std::vector<double> schmidt_coefficients;
  double rho_b_distance = 0.0;          ///< TD(Tr_A rho, I/2)
  double factorization_residual = 0.0;  ///< max |rho_BC - rho_B (x) rho_C|
};

/// Purification sum_k sqrt(lambda_k) |e_k>|k> with the purifying register C
/// last; dims {2, 2, 4}.
StateVector canonical_purification(const DensityMatrix& rho_ab);

/// max-entry residual of rho_BC - rho_B (x) rho_C for a state on {A, B, C}.
double factorization_residual(const StateVector& psi_abc);

/// Throws std::invalid_argument unless rho_ab is a valid 4x4 state on {2, 2}.
SteerabilityVerdict check_totally_steerable(const DensityMatrix& rho_ab, double tol = kDefaultTolerance);

/// Agreement between the steering verdict and the direct test
/// "purity >= 1 - tol and TD(Tr_A rho, I/2) <= tol".
bool maximal_entanglement_crosscheck(const DensityMatrix& rho_ab, double tol = kDefaultTolerance);

/// The general totally steerable state |v><v| with
/// v = (f, 1, e^{-i phi2}, -conj(f) e^{-i phi2}) / sqrt(2(|f|^2 + 1)).
/// phi1 only contributes a global phase and drops out.
DensityMatrix general_form(const SteerableForm& p);

/// The published 4x4 matrix for the family, entry for entry. It is Hermitian
/// with unit trace and unit purity but is not positive semidefinite unless
/// f = 0 or (phi2 = 0 and e^{i phi1}|f|^2 = -f^2); kept for comparison.
Matrix raw_family_matrix(const SteerableForm& p);

/// Alice's POVM realising the assemblage {sigma_a} on |psi+>:
/// E_a = 2 X sigma_a^T X. Targets must be positive and sum to I/2 within tol.
std::vector<Matrix> steer_to_ensemble(const std::vector<Matrix>& targets, double tol = 1e-10);

/// Bob's conditional (unnormalised) state Tr_A((E (x) I)|psi+><psi+|).
Matrix steered_assemblage_element(const Matrix& povm_element);

struct FamilyRow {
  SteerableForm form;
  double purity = 0.0;
  double schmidt1 = 0.0;
  double schmidt2 = 0.0;
  bool totally_steerable = false;
};

/// Random parameter draws: Re f, Im f ~ N(0, 1) and phases uniform in [0, 2 pi).
std::vector<FamilyRow> family_sweep(std::size_t draws, Rng& rng, double tol = kDefaultTolerance);
/// Header "re_f,im_f,phi1,phi2,purity,schmidt1,schmidt2,verdict".
std::string family_csv(const std::vector<FamilyRow>& rows);

/// p |psi+><psi+| + (1 - p) I/4.
DensityMatrix werner_state(double p);

}  // namespace steercert::steerability

#endif  // STEERCERT_STEERABILITY_HPP
