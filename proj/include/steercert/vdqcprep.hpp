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

// Verified state preparation for one-sided device-independent delegated
// computation.
//
// The server supplies T pairs meant to be |psi+>. The verifier keeps a
// uniformly random M-subset, measures her half of each kept pair in a secret
// basis, and so remotely prepares the server's half in |+-_theta> or a
// computational state. Every other pair is a test: both sides measure in the
// same announced basis, and any outcome that breaks the |psi+> correlation
// signs aborts the run. The later computation stage is an abstract oracle.

#ifndef STEERCERT_VDQCPREP_HPP
#define STEERCERT_VDQCPREP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"

namespace steercert::vdqcprep {

/// Basis index 0..7 is the equatorial angle k * pi / 4; index 8 is Z.
inline constexpr int kComputationalBasis = 8;
inline constexpr int kBasisCount = 9;

/// cos(theta) X + sin(theta) Y, or Z for the computational basis.
Matrix basis_observable(int basis);
double basis_angle(int basis);

enum class ServerKind { honest, bitflip, witness };

struct ServerModel {
  ServerKind kind = ServerKind::honest;
  double parameter = 0.0;  ///< q for bitflip, eps for witness
  bool deviates() const { return kind != ServerKind::honest && parameter > 0.0; }
};
/// "honest", "bitflip:<q>" or "witness:<eps>".
ServerModel parse_server(const std::string& text);
std::string to_string(const ServerModel& s);

struct PrepConfig {
  std::size_t M = 2;
  std::size_t T = 4;
  double lambda = 2.0;
  ServerModel server;
};

struct KeptQubit {
  std::size_t qubit = 0;  ///< server-side pair id
  int basis = 0;          ///< secret
  int flip = 0;           ///< secret: 1 iff the server holds the -1 eigenstate
                          ///< (for Z: holds |1>)
  double fidelity = 0.0;  ///< server qubit vs the recorded state (simulator audit)
};

struct TestRecord {
  std::size_t qubit = 0;
  int basis = 0;
  int verifier_outcome = 1;
  int server_outcome = 1;
  bool mismatch = false;
};

struct PrepOutcome {
  bool aborted = false;
  std::vector<KeptQubit> kept;  ///< size M iff not aborted
  std::size_t tested = 0;
  std::size_t mismatches = 0;
  double eta = 0.0;
  double bound = 0.0;  ///< eta + 1 / lambda
  bool server_deviated = false;
  /// Full trace including secrets; for audits and tests only.
  std::vector<TestRecord> tests;
};

/// c M^13 ln M. Requires M >= 2 and c > 0.
double ideal_pair_count(std::size_t M, double c);

struct SoundnessBound {
  double bound = 0.0;
  bool vacuous = false;  ///< bound >= 1
};
/// eta + 1 / lambda. Requires eta in [0, 1] and lambda > 1.
SoundnessBound soundness_bound(double eta, double lambda);

/// lambda^12 M^6 steering games.
double recommended_games(double lambda, std::size_t M);

/// Runs the preparation stage. `eta` only feeds the report's soundness bound.
PrepOutcome run_stage1(const PrepConfig& cfg, Rng& rng, double eta = 0.0);

/// Exact probability that a single test in `basis` is flagged.
double test_mismatch_probability(const ServerModel& server, int basis);

enum class Stage2Result { accept_correct, accept_incorrect, reject };
std::string to_string(Stage2Result r);

/// Honest preparation is always accepted; after a deviating server the
/// oracle accepts an incorrect result with probability eta and rejects
/// otherwise. Throws std::logic_error on an aborted outcome.
Stage2Result stage2_oracle(const PrepOutcome& prepared, double eta, Rng& rng);

}  // namespace steercert::vdqcprep

#endif  // STEERCERT_VDQCPREP_HPP
