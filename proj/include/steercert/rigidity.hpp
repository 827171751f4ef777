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

// Rigidity of N sequential K-round steering games at desk scale.
//
// A strategy's global state is stored as a list of factors over numbered
// wires, so N*K fresh pairs never have to be materialised as one matrix.
// Evolution is exact: every measurement is applied as a non-selective
// instrument that writes its outcome into a fresh classical qubit register
// (|0> for +1, |1> for -1).

#ifndef STEERCERT_RIGIDITY_HPP
#define STEERCERT_RIGIDITY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"
#include "steercert/steergame.hpp"

namespace steercert::rigidity {

/// A density matrix over the listed wires, in that order.
struct Factor {
  DensityMatrix rho;
  std::vector<std::size_t> wires;
};

enum class BobKind {
  measure,  ///< measure obs[r] on `wire`, report the outcome
  guess,    ///< leave `wire` alone and report Alice's outcome
  fixed,    ///< leave `wire` alone and report `fixed_answer`
  random,   ///< leave `wire` alone and report a fair coin
};

struct BobOp {
  BobKind kind = BobKind::measure;
  Matrix obs0;  ///< used on setting 0
  Matrix obs1;  ///< used on setting 1
  std::size_t wire = 0;
  int fixed_answer = 1;
};

struct RoundOps {
  std::size_t alice_wire = 0;
  BobOp bob;
};

/// S = (rho, Alice's ops, Bob's ops). Alice always measures a0 / a1 honestly.
struct Strategy {
  std::size_t N = 0;
  std::size_t K = 0;
  std::vector<Factor> state;
  std::vector<std::vector<RoundOps>> rounds;  ///< [game][round]
  Matrix a0 = pauli_x();
  Matrix a1 = pauli_y();
};

/// Fresh |psi+> per round (Alice's qubit, then Bob's), Bob measures (X, Y).
/// Wire layout: game j, round k uses wires 2(jK+k) and 2(jK+k)+1.
Strategy honest_pairs(std::size_t N, std::size_t K);
/// Same layout with the tightness witness at `epsilon` and Bob's deviated pair.
Strategy witness_pairs(std::size_t N, std::size_t K, double epsilon);
/// Same layout, every Bob op replaced by `kind` (fixed answers are +1).
Strategy with_bob_kind(Strategy s, BobKind kind);

/// Alice unchanged; Bob leaves his system alone and copies Alice's outcome.
/// Idempotent.
Strategy guessing_strategy(const Strategy& s);

/// Settings r[j][k] (K/2 zeros per game) and one round R[j] per game.
struct RoundSample {
  std::vector<std::vector<int>> settings;
  std::vector<std::size_t> R;
};
RoundSample sample_rounds(std::size_t N, std::size_t K, Rng& rng);

struct Evolution {
  /// Joint state of the R rounds. Per game: Alice's qubit, Bob's wire (when
  /// this was its last use), Alice's outcome register, Bob's outcome register.
  DensityMatrix state;
  std::vector<double> game_correlations;  ///< exact expected fraction of wins per game
};

/// Exact sequential evolution through every round, tracing out each non-R
/// round's registers once they are no longer used. Total kept dimension is
/// capped at 4096.
Evolution evolve(const Strategy& s, const RoundSample& sample);

/// TD between the two strategies' R-round states under the same sample.
/// Throws std::invalid_argument when the kept Hilbert spaces differ.
double strategy_distance(const Strategy& s1, const Strategy& s2, const RoundSample& sample);

struct DistanceReport {
  double distance = 0.0;
  RoundSample sample;
};
DistanceReport strategy_distance(const Strategy& s1, const Strategy& s2, Rng& rng);

struct StructureReport {
  std::vector<double> per_game_correlations;
  double epsilon = 0.0;
  bool structured = false;  ///< fraction of games with correlation > 1 - eps is >= 1 - eps
};
/// Throws std::invalid_argument on an empty list.
StructureReport epsilon_structured(const std::vector<steergame::GameTranscript>& transcripts, double epsilon);
StructureReport epsilon_structured(const std::vector<double>& per_game_correlations, double epsilon);

/// ||(M (x) I)|psi+> - (I (x) X M^T X)|psi+>||.
double shift_identity_check(const Matrix& m);

struct RigidityBound {
  double bound = 0.0;     ///< constant * N * eps^(1/6)
  double round_scale = 0.0;  ///< N^12 ln N, the growth K must have
};
RigidityBound rigidity_bound(std::size_t N, double epsilon, double constant);

/// Declarative scenario: {"N", "K", "epsilon", "seed", "state": "bell" |
/// "witness", "bob": "honest" | "guess" | "fixed" | "random"}.
struct Scenario {
  std::size_t N = 2;
  std::size_t K = 4;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string state = "bell";
  std::string bob = "honest";
};
Scenario load_scenario(const std::string& json_text);
Strategy build_strategy(const Scenario& sc);

}  // namespace steercert::rigidity

#endif  // STEERCERT_RIGIDITY_HPP
