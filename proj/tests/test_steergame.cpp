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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steercert/qmath.hpp"
#include "steercert/rng.hpp"
#include "steercert/sampling.hpp"
#include "steercert/selftest.hpp"
#include "steercert/steergame.hpp"

namespace sc = steercert;
namespace sg = steercert::steergame;
using sc::Complex;
using sc::Matrix;
using sc::Vector;

namespace {

const sc::StandardObservables kStd = sc::standard_observables();

double expect2(const sc::StateVector& psi, const Matrix& a, const Matrix& b) {
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * sc::kron(a, b) * v)(0, 0).real();
}

}  // namespace

TEST(SteerGame, QuotedMeasurementCounts) {
  EXPECT_NEAR(sg::measurement_count(12.3, 0.1, sg::CountSetting::iid).count / 2.2e9, 1.0, 0.05);
  EXPECT_NEAR(sg::measurement_count(12.3, 0.1, sg::CountSetting::noniid).count / 3.4e18, 1.0, 0.05);
  EXPECT_NEAR(sg::measurement_count(1.19, 0.1, sg::CountSetting::noniid).count / 2.2e14, 1.0, 0.05);
}

TEST(SteerGame, MeasurementCountFormulaOracle) {
  // 2 (c/D)^4 ln(c/D) and 8 c^4 / D^12 ln(c^2 / D^6), evaluated independently.
  const double c = 3.0, D = 0.2;
  const double r = c / D;
  EXPECT_NEAR(sg::measurement_count(c, D, sg::CountSetting::iid).count, 2 * r * r * r * r * std::log(r), 1e-6);
  const double d12 = std::pow(0.2, 12);
  EXPECT_NEAR(sg::measurement_count(c, D, sg::CountSetting::noniid).count / (8 * 81 / d12 * std::log(9 / std::pow(0.2, 6))),
              1.0, 1e-12);
  EXPECT_THROW(sg::measurement_count(0.0, 0.1, sg::CountSetting::iid), std::domain_error);
  EXPECT_THROW(sg::measurement_count(1.0, 2.0, sg::CountSetting::iid), std::domain_error);
  EXPECT_THROW(sg::parse_count_setting("both"), std::invalid_argument);
}

TEST(SteerGame, CountComparisonRowsAndMonotonicity) {
  std::vector<double> grid;
  for (int i = 5; i <= 50; ++i) grid.push_back(i / 100.0);
  const auto rows = sg::count_comparison(grid, 12.3, 12.3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].iid_count, rows[i - 1].iid_count);
    EXPECT_LT(rows[i].noniid_count, rows[i - 1].noniid_count);
  }
  const auto& at = rows[5];
  ASSERT_DOUBLE_EQ(at.D, 0.1);
  EXPECT_EQ(at.iid_count, sg::measurement_count(12.3, 0.1, sg::CountSetting::iid).count);
  EXPECT_NEAR(at.noniid_count / at.iid_count / 1.5e9, 1.0, 0.05);
  const std::string csv = sg::count_comparison_csv(rows);
  EXPECT_EQ(csv.rfind("D,iid_count,noniid_count\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(rows.size() + 1));
}

TEST(SteerGame, AzumaBoundValues) {
  EXPECT_NEAR(sg::azuma_bound(1.0, 8), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(sg::azuma_bound(0.1, 8000), std::exp(-10.0), 1e-18);
  EXPECT_THROW(sg::azuma_bound(0.0, 8), std::domain_error);
}

TEST(SteerGame, RequiredRounds) {
  EXPECT_EQ(sg::required_rounds(0.1), 1843u);
  EXPECT_EQ(sg::required_rounds(0.5), 23u);
  EXPECT_LE(sg::required_rounds(0.999999), 1u);
  EXPECT_THROW(sg::required_rounds(0.0), std::domain_error);
  EXPECT_THROW(sg::required_rounds(1.0), std::domain_error);
}

TEST(SteerGame, TypicalAndGentleBounds) {
  auto t = sg::typical_state_bound(0.001);
  EXPECT_NEAR(t.probability, 0.9, 1e-12);
  EXPECT_NEAR(t.distance, 0.1, 1e-12);
  t = sg::typical_state_bound(1e-6);
  EXPECT_NEAR(t.probability, 0.99, 1e-12);
  EXPECT_NEAR(sg::gentle_measurement_bound(0.0), 0.0, 0.0);
  EXPECT_NEAR(sg::gentle_measurement_bound(0.01), 0.21, 1e-12);
  EXPECT_THROW(sg::typical_state_bound(0.0), std::domain_error);
  EXPECT_THROW(sg::gentle_measurement_bound(-1.0), std::domain_error);
}

TEST(SteerGame, TypicalStateEnsembleProperty) {
  // Ensembles whose average is close to a pure target: few members may be far.
  sc::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto phi = sc::random_state({2}, rng);
    const auto target = sc::DensityMatrix::from_pure(phi);
    const std::size_t n = 100;
    std::vector<sc::DensityMatrix> members;
    Matrix avg = Matrix::Zero(2, 2);
    const double far_fraction = 0.05 * rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
      const double t = rng.uniform() < far_fraction ? 0.5 + 0.5 * rng.uniform() : 0.02 * rng.uniform();
      const auto sigma = sc::random_density({2}, rng);
      members.emplace_back((1 - t) * target.entries() + t * sigma.entries(), sc::Dims{2});
      avg += members.back().entries() / static_cast<double>(n);
    }
    const double gamma = sc::trace_distance(sc::DensityMatrix(avg, {2}), target);
    if (!(gamma > 0.0 && gamma < 1.0)) continue;
    const auto b = sg::typical_state_bound(gamma);
    std::size_t far = 0;
    for (const auto& m : members) far += sc::trace_distance(m, target) > b.distance;
    EXPECT_LE(static_cast<double>(far) / n, b.distance + 1e-12);
  }
}

TEST(SteerGame, GentleMeasurementProperty) {
  sc::Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pi_state = sc::random_state({2}, rng);
    const Matrix pi = pi_state.amplitudes() * pi_state.amplitudes().adjoint();
    const auto sigma = sc::random_density({3}, rng);
    const auto noise = sc::random_density({2, 3}, rng);
    const double t = 0.2 * rng.uniform();
    const sc::DensityMatrix rho((1 - t) * sc::kron(pi, sigma.entries()) + t * noise.entries(), {2, 3});
    const double delta = std::max(0.0, 1.0 - (pi * sc::partial_trace(rho, {0}).entries()).trace().real());
    const sc::DensityMatrix prod(sc::kron(pi, sc::partial_trace(rho, {1}).entries()), {2, 3});
    EXPECT_LE(sc::trace_distance(rho, prod), sg::gentle_measurement_bound(delta) + 1e-12);
  }
}

TEST(SteerGame, HonestGameCorrelatesPerfectly) {
  sc::Rng rng(43);
  const auto t = sg::play_game(sg::ProverStrategy::honest(), 1000, kStd.x, kStd.y, rng);
  EXPECT_EQ(sg::correlation_value(t), 1.0);
  const auto c = sg::averaged_correlations(t);
  EXPECT_EQ(c.c0, 1.0);
  EXPECT_EQ(c.c1, 1.0);
  EXPECT_EQ(std::count(t.settings.begin(), t.settings.end(), 0), 500);
}

TEST(SteerGame, HonestGameInOtherFrames) {
  sc::Rng rng(44);
  const auto t = sg::play_game(sg::ProverStrategy::honest(), 200, kStd.z, kStd.x, rng);
  EXPECT_EQ(sg::correlation_value(t), 1.0);
}

TEST(SteerGame, FlippedOutcomesGiveMinusOne) {
  sc::Rng rng(45);
  const auto t = sg::play_game(sg::ProverStrategy::noisy(1.0), 100, kStd.x, kStd.y, rng);
  const auto c = sg::averaged_correlations(t);
  EXPECT_EQ(c.c0, -1.0);
  EXPECT_EQ(c.c1, -1.0);
  EXPECT_EQ(sg::correlation_value(t), 0.0);
}

TEST(SteerGame, CorrelationValueCounting) {
  sg::GameTranscript t;
  t.K = 4;
  t.settings = {0, 1, 0, 1};
  t.alice_outcomes = {1, 1, -1, -1};
  t.bob_outcomes = {1, -1, -1, 1};
  t.correlations = {1, -1, 1, -1};
  EXPECT_EQ(sg::correlation_value(t), 0.5);
  const auto c = sg::averaged_correlations(t);
  EXPECT_EQ(c.c0, 1.0);
  EXPECT_EQ(c.c1, -1.0);
}

TEST(SteerGame, ClassicalLocalHiddenStateScoresOne) {
  sc::Rng rng(46);
  const std::size_t K = 100000;
  const auto t = sg::play_game(sg::ProverStrategy::classical_lhs(), K, kStd.x, kStd.y, rng);
  const auto c = sg::averaged_correlations(t);
  // X rounds: Alice's |+> always gives +1. Y rounds: fair coin, variance 1 per round.
  EXPECT_EQ(c.c0, 1.0);
  EXPECT_NEAR(c.c0 + c.c1, 1.0, 3.0 / std::sqrt(K / 2.0));
}

TEST(SteerGame, DeviatedStrategyApproachesTwoMinusEps) {
  const double eps = 0.02;
  const auto w = sc::selftest::tightness_witness(eps);
  const double m0 = expect2(w.psi, sc::pauli_x(), w.b0.matrix());
  const double m1 = expect2(w.psi, sc::pauli_y(), w.b1.matrix());
  ASSERT_NEAR(m0 + m1, 2 - eps, 1e-9);
  sc::Rng rng(47);
  const std::size_t K = 100000;
  const auto t = sg::play_game(sg::ProverStrategy::iid_deviated(eps), K, kStd.x, kStd.y, rng);
  const auto c = sg::averaged_correlations(t);
  const double half = K / 2.0;
  const double sd = std::sqrt((1 - m0 * m0) / half + (1 - m1 * m1) / half);
  EXPECT_NEAR(c.c0 + c.c1, 2 - eps, 4 * sd);
}

TEST(SteerGame, GameRejectsBadInput) {
  sc::Rng rng(48);
  EXPECT_THROW(sg::play_game(sg::ProverStrategy::honest(), 3, kStd.x, kStd.y, rng), std::invalid_argument);
  EXPECT_THROW(sg::play_game(sg::ProverStrategy::honest(), 4, kStd.x, kStd.p, rng), std::invalid_argument);
}

TEST(SteerGame, GamesAreReproducible) {
  sc::Rng a(49), b(49);
  const auto s = sg::ProverStrategy::iid_deviated(0.1);
  const auto ta = sg::play_game(s, 64, kStd.x, kStd.y, a);
  const auto tb = sg::play_game(s, 64, kStd.x, kStd.y, b);
  EXPECT_EQ(ta.settings, tb.settings);
  EXPECT_EQ(ta.alice_outcomes, tb.alice_outcomes);
  EXPECT_EQ(ta.bob_outcomes, tb.bob_outcomes);
}

TEST(SteerGame, ParseStrategy) {
  EXPECT_EQ(sg::parse_strategy("honest").kind(), sg::StrategyKind::honest);
  EXPECT_EQ(sg::parse_strategy("classical_lhs").kind(), sg::StrategyKind::classical_lhs);
  EXPECT_DOUBLE_EQ(sg::parse_strategy("iid_deviated:0.02").epsilon(), 0.02);
  EXPECT_DOUBLE_EQ(sg::parse_strategy("noisy:0.1").noise(), 0.1);
  EXPECT_EQ(sg::parse_strategy("adaptive:5,2,5").bad_rounds(), (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(sg::parse_strategy("adaptive:2,5").name(), "adaptive:2,5");
  EXPECT_THROW(sg::parse_strategy("psychic"), std::invalid_argument);
  EXPECT_THROW(sg::parse_strategy("noisy"), std::invalid_argument);
  EXPECT_THROW(sg::parse_strategy("noisy:0.1x"), std::invalid_argument);
  EXPECT_THROW(sg::parse_strategy("iid_deviated:1.5"), std::domain_error);
}

TEST(SteerGame, HonestSampledRoundHasZeroDistance) {
  for (double eps : {0.1, 0.3}) {
    sc::Rng rng(50);
    const auto r = sg::sampled_round_experiment(sg::ProverStrategy::honest(), eps, kStd.x, kStd.y, rng);
    EXPECT_TRUE(r.saturated);
    EXPECT_LE(r.trace_distance, 1e-10);
    EXPECT_EQ(r.rounds_played % 2, 0u);
    EXPECT_GE(r.rounds_played, r.required_rounds);
    EXPECT_NEAR(r.reference_scale, std::pow(eps, 1.0 / 6.0), 1e-15);
  }
  sc::Rng rng(51);
  const auto z = sg::sampled_round_experiment(sg::ProverStrategy::honest(), 0.2, kStd.z, kStd.x, rng);
  EXPECT_LE(z.trace_distance, 1e-10);
}

TEST(SteerGame, DeviatedSampledRoundDistanceBoundedByWitness) {
  for (double eps : {0.02, 0.2}) {
    sc::Rng rng(52);
    const auto r = sg::sampled_round_experiment(sg::ProverStrategy::iid_deviated(eps), eps, kStd.x, kStd.y, rng);
    const auto w = sc::selftest::tightness_witness(eps);
    const double extracted = sc::selftest::certify(w.psi, kStd.x, kStd.y, w.b0, w.b1).extracted_distance;
    // TD between pure states is at most their vector distance.
    EXPECT_LE(r.trace_distance, extracted + 1e-12);
    EXPECT_GT(r.trace_distance, 0.0);
    EXPECT_LE(r.trace_distance, 12.3 * std::sqrt(eps));
    EXPECT_TRUE(r.sampled_round_deviates);
  }
}

TEST(SteerGame, SampledRoundCap) {
  sc::Rng rng(53);
  sg::SampledRoundOptions opts;
  opts.max_rounds = 101;
  const auto r = sg::sampled_round_experiment(sg::ProverStrategy::honest(), 0.1, kStd.x, kStd.y, rng, opts);
  EXPECT_TRUE(r.capped);
  EXPECT_EQ(r.rounds_played, 100u);
}

TEST(SteerGame, AdaptiveShortfallAndSamplingRate) {
  const std::size_t K = 10;
  double shortfall = 0.0;
  const int seeds = 4000;
  for (int s = 0; s < seeds; ++s) {
    sc::Rng rng(54, static_cast<std::uint64_t>(s));
    const auto t = sg::play_game(sg::ProverStrategy::adaptive({3}), K, kStd.x, kStd.y, rng);
    const auto c = sg::averaged_correlations(t);
    shortfall += 2 - c.c0 - c.c1;
  }
  // The bad round scores 0 in expectation against 1, inside a K/2 average.
  const double sd = (2.0 / K) / std::sqrt(static_cast<double>(seeds));
  EXPECT_NEAR(shortfall / seeds, 2.0 / K, 5 * sd);

  // eps = 0.5 plays 24 rounds; the bad round is drawn with probability 1/24.
  int bad = 0;
  const int runs = 6000;
  for (int s = 0; s < runs; ++s) {
    sc::Rng rng(55, static_cast<std::uint64_t>(s));
    bad += sg::sampled_round_experiment(sg::ProverStrategy::adaptive({7}), 0.5, kStd.x, kStd.y, rng)
               .sampled_round_deviates;
  }
  const double p = 1.0 / 24.0;
  EXPECT_NEAR(bad / static_cast<double>(runs), p, 5 * std::sqrt(p * (1 - p) / runs));
}

TEST(SteerGame, AzumaExperimentSmall) {
  const auto e = sg::azuma_experiment(0.1, 200, 2000, {0.05, 0.1, 0.2}, 3, 2);
  ASSERT_EQ(e.cells.size(), 3u);
  EXPECT_NEAR(e.true_correlation, 0.8, 1e-15);
  for (const auto& c : e.cells) EXPECT_LE(c.frequency, c.bound);
  const auto f = sg::azuma_experiment(0.1, 200, 2000, {0.05, 0.1, 0.2}, 3, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(e.cells[i].frequency, f.cells[i].frequency);
  EXPECT_THROW(sg::azuma_experiment(0.1, 7, 10, {0.1}, 0), std::invalid_argument);
}
