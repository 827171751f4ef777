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

// K-round steering games against an adversarial prover, and the
// concentration statistics that make them sound without an i.i.d. assumption.
//
// Round i: Alice draws r_i (exactly K/2 rounds of each setting), measures
// A_{r_i} on her qubit and keeps the outcome a_i secret. Bob reports b_i from
// his instruction and his own history only. The round is won iff a_i = b_i.

#ifndef STEERCERT_STEERGAME_HPP
#define STEERCERT_STEERGAME_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"

namespace steercert::steergame {

enum class StrategyKind { honest, iid_deviated, classical_lhs, noisy, adaptive };

/// How Bob produces b_i in one round.
enum class AnswerMode { measure, fixed, random };

/// Everything the simulator needs to play one round. `state` has dims
/// {2, d_B} with Alice's qubit first.
struct RoundPlan {
  DensityMatrix state;
  Observable bob_x;  ///< measured on setting 0, on subsystem 1
  Observable bob_y;  ///< measured on setting 1, on subsystem 1
  AnswerMode mode = AnswerMode::measure;
  int fixed_answer = 1;
  double flip_probability = 0.0;  ///< reported outcome flipped after measuring
  bool deviates = false;          ///< true when the round is not the honest one
};

/// A prover strategy: a state source plus a response rule. Plans depend only
/// on the round index, the instruction and Bob's own past outcomes.
class ProverStrategy {
 public:
  static ProverStrategy honest();
  /// Tightness witness at `epsilon` in every round.
  static ProverStrategy iid_deviated(double epsilon);
  /// Bob pre-sends the +1 eigenstate of A0 and always answers +1.
  static ProverStrategy classical_lhs();
  /// Honest measurements with each reported outcome flipped with probability q.
  static ProverStrategy noisy(double q);
  /// Honest except in `bad_rounds`, where Alice gets I/2 and Bob guesses.
  static ProverStrategy adaptive(std::vector<std::size_t> bad_rounds);

  StrategyKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double noise() const { return noise_; }
  const std::vector<std::size_t>& bad_rounds() const { return bad_rounds_; }
  /// Short name, e.g. "iid_deviated:0.02".
  std::string name() const;

  RoundPlan plan_round(std::size_t round, int instruction, const std::vector<int>& own_history,
                       const Observable& a0, const Observable& a1) const;

 private:
  StrategyKind kind_ = StrategyKind::honest;
  double epsilon_ = 0.0;
  double noise_ = 0.0;
  std::vector<std::size_t> bad_rounds_;
};

/// Parses "honest", "iid_deviated:<eps>", "classical_lhs", "noisy:<q>" or
/// "adaptive:<i>,<j>,...". Throws std::invalid_argument.
ProverStrategy parse_strategy(const std::string& text);

struct GameTranscript {
  std::size_t K = 0;
  std::vector<int> settings;  ///< r_i in {0, 1}, exactly K/2 zeros
  std::vector<int> alice_outcomes;
  std::vector<int> bob_outcomes;
  std::vector<int> correlations;  ///< a_i b_i
};

/// Plays K rounds. K must be even and positive; (A0, A1) must anticommute.
/// Alice's randomness comes from rng.fork(0), Bob's from rng.fork(1) and the
/// settings from rng.fork(2).
GameTranscript play_game(const ProverStrategy& strategy, std::size_t K, const Observable& a0,
                         const Observable& a1, Rng& rng);

/// Fraction of rounds with a_i = b_i.
double correlation_value(const GameTranscript& t);

struct AveragedCorrelations {
  double c0 = 0.0;
  double c1 = 0.0;
};
AveragedCorrelations averaged_correlations(const GameTranscript& t);

/// exp(-delta^2 n / 8). Requires delta > 0.
double azuma_bound(double delta, std::uint64_t n);

/// ceil((8 / eps^2) ln(1 / eps)). Requires 0 < eps < 1; tends to 0 as eps -> 1.
std::uint64_t required_rounds(double epsilon);

enum class CountSetting { iid, noniid };
std::string to_string(CountSetting s);
CountSetting parse_count_setting(const std::string& text);

struct CountReport {
  double c = 0.0;
  double D = 0.0;
  CountSetting setting = CountSetting::iid;
  double count = 0.0;
};

/// iid: (2 c^4 / D^4) ln(c / D), needs 0 < D < c.
/// noniid: (8 c^4 / D^12) ln(c^2 / D^6), needs D > 0 and D^6 < c^2.
/// Natural logarithm. Throws std::domain_error outside the domain.
CountReport measurement_count(double c, double D, CountSetting setting);

struct TypicalBound {
  double probability = 0.0;  ///< 1 - gamma^(1/3)
  double distance = 0.0;     ///< gamma^(1/3)
};
TypicalBound typical_state_bound(double gamma);

/// 2 sqrt(delta) + delta.
double gentle_measurement_bound(double delta);

struct CountComparisonRow {
  double D = 0.0;
  double iid_count = 0.0;
  double noniid_count = 0.0;
};
std::vector<CountComparisonRow> count_comparison(const std::vector<double>& D_grid, double c_iid, double c_noniid);
/// Header "D,iid_count,noniid_count", 17 significant digits, '\n' line ends.
std::string count_comparison_csv(const std::vector<CountComparisonRow>& rows);

struct SampledRoundOptions {
  std::uint64_t max_rounds = 100'000'000;
};

struct SampledRoundReport {
  double epsilon = 0.0;
  std::uint64_t required_rounds = 0;
  std::uint64_t rounds_played = 0;  ///< required_rounds rounded up to even, capped
  bool capped = false;
  double c0 = 0.0;
  double c1 = 0.0;
  bool saturated = false;  ///< c0 + c1 >= 2 - eps
  std::size_t sampled_round = 0;
  bool sampled_round_deviates = false;
  /// TD between the sampled round's isometry output on (A, ancilla) and |psi+>.
  /// Only meaningful when `saturated`.
  double trace_distance = 0.0;
  double reference_scale = 0.0;  ///< eps^(1/6)
};

/// One game of required_rounds(eps) rounds (capped) followed, on saturation,
/// by the isometry applied to a uniformly sampled round's reduced state.
SampledRoundReport sampled_round_experiment(const ProverStrategy& strategy, double epsilon, const Observable& a0,
                                   const Observable& a1, Rng& rng, const SampledRoundOptions& opts = {});

/// TD to |psi+> of the isometry output for one round's declared state, after
/// rotating Alice's frame so (A0, A1) -> (X, Y).
double round_isometry_distance(const RoundPlan& plan, const Observable& a0, const Observable& a1);

struct TailCell {
  double delta = 0.0;
  double frequency = 0.0;  ///< fraction of repetitions with |mean C - true C| >= delta
  double bound = 0.0;      ///< azuma_bound(delta, n)
};

struct AzumaExperiment {
  double q = 0.0;
  std::size_t n = 0;
  std::size_t repetitions = 0;
  double true_correlation = 0.0;  ///< 1 - 2q
  std::vector<TailCell> cells;
};

/// Repetition i plays noisy(q) with Rng(seed, i) for n rounds; aggregation is
/// by repetition index, independent of `workers`.
AzumaExperiment azuma_experiment(double q, std::size_t n, std::size_t repetitions,
                                 const std::vector<double>& deltas, std::uint64_t seed, std::size_t workers = 1);

}  // namespace steercert::steergame

#endif  // STEERCERT_STEERGAME_HPP
