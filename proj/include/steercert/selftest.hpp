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

// One-sided device-independent self-testing of |psi+> = (|01> + |10>)/sqrt(2).
//
// Alice (subsystem 0, one qubit) is trusted and measures X and Y. Bob
// (subsystem 1, any dimension) reports outcomes of untrusted +-1 observables
// X'_B and Y'_B. Near-maximal steering correlation
// |<X_A X'_B + Y_A Y'_B>| = 2 - eps certifies, through an explicit local
// isometry on Bob's side, that the shared state is O(sqrt(eps))-close to
// |junk>_B (x) |psi+>_{A,ancilla}.

#ifndef STEERCERT_SELFTEST_HPP
#define STEERCERT_SELFTEST_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"

namespace steercert::selftest {

/// Which gamma2 feeds the closeness bound.
///  - theorem:  gamma2 = 4 sqrt(eps)
///  - appendix: gamma2 = 8 sqrt(eps) (what the Cauchy-Schwarz derivation yields)
///  - measured: the actual anticommutator norm ||(X'Y' + Y'X')|psi>||
enum class Gamma2Convention { theorem, appendix, measured };

std::string_view to_string(Gamma2Convention c);
/// Throws std::invalid_argument on an unknown name.
Gamma2Convention parse_gamma2_convention(std::string_view name);

struct SelfTestConditions {
  double gamma1 = 0.0;  ///< bounds ||(X_A - X'_B)psi|| and ||(Y_A - Y'_B)psi||
  double gamma2 = 0.0;  ///< bounds ||(X'_B Y'_B + Y'_B X'_B)psi||
};

struct ConditionNorms {
  double n1 = 0.0;  ///< ||(X_A - X'_B)|psi>||
  double n2 = 0.0;  ///< ||(Y_A - Y'_B)|psi>||
  double n3 = 0.0;  ///< ||(X'_B Y'_B + Y'_B X'_B)|psi>||
};

struct CertificationReport {
  double saturation = 0.0;  ///< |<X_A X'_B + Y_A Y'_B>|
  double epsilon = 0.0;     ///< 2 - saturation
  double gamma1 = 0.0;      ///< measured max(n1, n2)
  double gamma2 = 0.0;      ///< measured n3
  double closeness_bound = 0.0;
  double extracted_distance = 0.0;
  bool bound_holds = false;
  Gamma2Convention gamma2_convention = Gamma2Convention::measured;
  /// False when epsilon >= 1, i.e. the saturation hypothesis 0 < eps < 1 fails.
  bool in_regime = true;
};

bool operator==(const CertificationReport& a, const CertificationReport& b);

/// The three condition norms, computed exactly. `psi` must have Alice's qubit
/// as subsystem 0; any remaining subsystems form Bob's register.
ConditionNorms condition_norms(const StateVector& psi, const Observable& xa, const Observable& ya,
                               const Observable& xb, const Observable& yb);

/// Signed <X_A X'_B + Y_A Y'_B>.
double correlator(const StateVector& psi, const Observable& xa, const Observable& ya, const Observable& xb,
                  const Observable& yb);

/// |<X_A X'_B + Y_A Y'_B>|.
double saturation(const StateVector& psi, const Observable& xa, const Observable& ya, const Observable& xb,
                  const Observable& yb);

/// gamma1 = sqrt(2 eps); gamma2 from the chosen closed-form convention.
/// Requires 0 < eps < 1 and a closed-form convention.
SelfTestConditions gammas_from_saturation(double epsilon, Gamma2Convention convention);

/// 3 gamma1 + gamma1^2 / 4 + 2 gamma2.
double selftest_bound(const SelfTestConditions& c);

/// Local isometry on Bob's register:
///   Phi|psi> = 1/2 (I + Y')|psi>|+y> + i/2 X'(I - Y')|psi>|-y>
/// with the ancilla appended as the last subsystem: dims {2, d_B, 2}.
StateVector apply_isometry(const StateVector& psi, const Observable& xb, const Observable& yb);

/// The isometry as a (2 d_B) x d_B matrix acting on Bob's register alone.
Matrix isometry_matrix(const Observable& xb, const Observable& yb);

struct Extraction {
  double distance = 0.0;  ///< min over unit |junk> and phase of ||phi - |junk>|psi+>||
  StateVector junk;       ///< optimal Bob register state, dims {d_B}
  bool zero_overlap = false;
};

/// Best product companion |junk>_B (x) |psi+>_{A,anc} for an isometry output
/// with dims {2, d_B, 2}. The optimum is the normalised partial inner product
/// <psi+|_{A,anc} phi, which already carries the optimal global phase.
Extraction extract_distance(const StateVector& phi_out);

/// Full pipeline: norms, saturation, bound, isometry and extracted distance.
/// If the signed correlator is negative, Bob's observables are negated first
/// (the anticorrelated case is the same certificate up to relabelling).
CertificationReport certify(const StateVector& psi, const Observable& xa, const Observable& ya,
                            const Observable& xb, const Observable& yb,
                            Gamma2Convention convention = Gamma2Convention::measured);

struct Witness {
  StateVector psi;
  Observable b0;
  Observable b1;
};

/// State sqrt(1+s)|01> + sqrt(1-s)|10> (normalised, s = sqrt(eps/2)) with
/// Bob's deviated observables at eps' = eps/2. Saturates to exactly 2 - eps
/// while staying Theta(sqrt(eps)) away from |psi+>.
Witness tightness_witness(double epsilon);

/// Unitary U with U A0 U^dagger = X and U A1 U^dagger = Y for anticommuting
/// qubit involutions. Returns the identity exactly for (A0, A1) = (X, Y).
Matrix alice_frame_rotation(const Observable& a0, const Observable& a1);

/// The Bell state with <A0 (x) A0> = <A1 (x) A1> = 1, i.e. (U^+ (x) U^+)|psi+>.
StateVector correlated_bell_state(const Observable& a0, const Observable& a1);

/// Tightness witness transported to the (A0, A1) frame.
Witness tightness_witness_for(const Observable& a0, const Observable& a1, double epsilon);

/// Self-test with Alice measuring arbitrary anticommuting qubit observables:
/// rotate Alice's frame so (A0, A1) -> (X, Y) and run `certify`. Every report
/// field is invariant under the rotation, so no back-rotation is needed.
CertificationReport general_observable_selftest(const StateVector& psi, const Observable& a0,
                                                const Observable& a1, const Observable& b0,
                                                const Observable& b1,
                                                Gamma2Convention convention = Gamma2Convention::measured);

struct RandomStrategy {
  StateVector psi;
  Observable xb;
  Observable yb;
};

/// Random valid strategy near the honest one: |psi+> (x) random junk (Bob's
/// register is a qubit, optionally times a junk qubit), perturbed state and
/// perturbed involutions. Rejection-samples until saturation >= min_saturation.
RandomStrategy random_near_ideal_strategy(Rng& rng, double min_saturation, std::size_t bob_dim = 2);

struct SweepSummary {
  std::size_t trials = 0;
  std::size_t violations = 0;          ///< extracted_distance > appendix bound + 1e-9
  std::size_t measured_violations = 0;  ///< same, measured-gamma bound
  double worst_ratio = 0.0;             ///< max extracted_distance / appendix bound
  double min_saturation = 2.0;
  double max_distance = 0.0;
};

/// Randomised soundness sweep. Trial i draws from Rng(seed, i); results do not
/// depend on `workers`.
SweepSummary soundness_sweep(std::size_t trials, double min_saturation, std::uint64_t seed,
                             std::size_t workers = 1);

/// 3 sqrt(2 eps) + eps / 2 + 16 sqrt(eps): the closed-form bound under the
/// appendix gamma2 convention.
double appendix_bound(double epsilon);

}  // namespace steercert::selftest

#endif  // STEERCERT_SELFTEST_HPP
