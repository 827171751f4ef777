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

#include "steercert/steergame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "steercert/selftest.hpp"

namespace steercert::steergame {

namespace {

DensityMatrix ket0_density() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), {2});
}

Observable bob_identity() { return Observable(identity(2), 1); }

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ProverStrategy ProverStrategy::honest() { return ProverStrategy(); }

ProverStrategy ProverStrategy::iid_deviated(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("iid_deviated: eps must lie in (0, 1)");
  ProverStrategy s;
  s.kind_ = StrategyKind::iid_deviated;
  s.epsilon_ = epsilon;
  return s;
}

ProverStrategy ProverStrategy::classical_lhs() {
  ProverStrategy s;
  s.kind_ = StrategyKind::classical_lhs;
  return s;
}

ProverStrategy ProverStrategy::noisy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("noisy: q must lie in [0, 1]");
  ProverStrategy s;
  s.kind_ = StrategyKind::noisy;
  s.noise_ = q;
  return s;
}

ProverStrategy ProverStrategy::adaptive(std::vector<std::size_t> bad_rounds) {
  ProverStrategy s;
  s.kind_ = StrategyKind::adaptive;
  std::sort(bad_rounds.begin(), bad_rounds.end());
  bad_rounds.erase(std::unique(bad_rounds.begin(), bad_rounds.end()), bad_rounds.end());
  s.bad_rounds_ = std::move(bad_rounds);
  return s;
}

std::string ProverStrategy::name() const {
  switch (kind_) {
    case StrategyKind::honest:
      return "honest";
    case StrategyKind::iid_deviated:
      return "iid_deviated:" + format_g17(epsilon_);
    case StrategyKind::classical_lhs:
      return "classical_lhs";
    case StrategyKind::noisy:
      return "noisy:" + format_g17(noise_);
    case StrategyKind::adaptive: {
      std::string out = "adaptive:";
      for (std::size_t i = 0; i < bad_rounds_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(bad_rounds_[i]);
      }
      return out;
    }
  }
  return "honest";
}

RoundPlan ProverStrategy::plan_round(std::size_t round, int instruction, const std::vector<int>& /*own_history*/,
                                     const Observable& a0, const Observable& a1) const {
  if (instruction != 0 && instruction != 1) throw std::invalid_argument("plan_round: instruction must be 0 or 1");
  auto honest_plan = [&]() {
    return RoundPlan{DensityMatrix::from_pure(selftest::correlated_bell_state(a0, a1)), a0.on(1), a1.on(1)};
  };
  switch (kind_) {
    case StrategyKind::honest:
      return honest_plan();
    case StrategyKind::noisy: {
      RoundPlan p = honest_plan();
      p.flip_probability = noise_;
      p.deviates = noise_ > 0.0;
      return p;
    }
    case StrategyKind::iid_deviated: {
      const selftest::Witness w = selftest::tightness_witness_for(a0, a1, epsilon_);
      RoundPlan p{DensityMatrix::from_pure(w.psi), w.b0, w.b1};
      p.deviates = true;
      return p;
    }
    case StrategyKind::classical_lhs: {
      // +1 eigenvector of A0, i.e. U^dagger |+>.
      const Matrix u = selftest::alice_frame_rotation(a0, a1);
      Vector plus(2);
      plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
      const StateVector alice(u.adjoint() * plus, {2});
      RoundPlan p{tensor_product(DensityMatrix::from_pure(alice), ket0_density()), bob_identity(), bob_identity()};
      p.mode = AnswerMode::fixed;
      p.fixed_answer = 1;
      p.deviates = true;
      return p;
    }
    case StrategyKind::adaptive: {
      if (!std::binary_search(bad_rounds_.begin(), bad_rounds_.end(), round)) return honest_plan();
      RoundPlan p{tensor_product(DensityMatrix::maximally_mixed({2}), ket0_density()), bob_identity(),
                  bob_identity()};
      p.mode = AnswerMode::random;
      p.deviates = true;
      return p;
    }
  }
  return honest_plan();
}

ProverStrategy parse_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&]() {
    if (arg.empty()) throw std::invalid_argument("strategy '" + head + "' needs a numeric argument");
    std::size_t used = 0;
    const double v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad numeric argument: " + arg);
    return v;
  };
  if (head == "honest") return ProverStrategy::honest();
  if (head == "classical_lhs") return ProverStrategy::classical_lhs();
  if (head == "iid_deviated") return ProverStrategy::iid_deviated(number());
  if (head == "noisy") return ProverStrategy::noisy(number());
  if (head == "adaptive") {
    std::vector<std::size_t> rounds;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) rounds.push_back(static_cast<std::size_t>(std::stoull(item)));
    }
    return ProverStrategy::adaptive(std::move(rounds));
  }
  throw std::invalid_argument("unknown strategy: " + text);
}

GameTranscript play_game(const ProverStrategy& strategy, std::size_t K, const Observable& a0, const Observable& a1,
                         Rng& rng) {
  if (K == 0 || K % 2 != 0) throw std::invalid_argument("play_game: K must be even and positive");
  // Validates anticommutation once, up front.
  (void)selftest::alice_frame_rotation(a0, a1);

  Rng alice_rng = rng.fork(0);
  Rng bob_rng = rng.fork(1);
  Rng setting_rng = rng.fork(2);

  GameTranscript t;
  t.K = K;
  t.settings.assign(K, 1);
  std::fill(t.settings.begin(), t.settings.begin() + static_cast<std::ptrdiff_t>(K / 2), 0);
  setting_rng.shuffle(t.settings);
  t.alice_outcomes.reserve(K);
  t.bob_outcomes.reserve(K);
  t.correlations.reserve(K);

  const Observable alice_obs[2] = {a0.on(0), a1.on(0)};
  for (std::size_t i = 0; i < K; ++i) {
    const int r = t.settings[i];
    const RoundPlan plan = strategy.plan_round(i, r, t.bob_outcomes, a0, a1);
    if (plan.state.dims().size() != 2 || plan.state.dims()[0] != 2) {
      throw std::invalid_argument("play_game: strategy state must have dims {2, d_B}");
    }
    const MeasurementResult alice = measure(plan.state, alice_obs[r], alice_rng);
    int b = 1;
    switch (plan.mode) {
      case AnswerMode::measure: {
        const Observable& ob = r == 0 ? plan.bob_x : plan.bob_y;
        if (ob.dimension() != plan.state.dims()[1]) {
          throw std::invalid_argument("play_game: Bob's observable does not match his register");
        }
        b = measure(alice.post_state, ob.on(1), bob_rng).outcome;
        break;
      }
      case AnswerMode::fixed:
        b = plan.fixed_answer;
        break;
      case AnswerMode::random:
        b = bob_rng.bernoulli(0.5) ? 1 : -1;
        break;
    }
    if (plan.flip_probability > 0.0 && bob_rng.bernoulli(plan.flip_probability)) b = -b;
    t.alice_outcomes.push_back(alice.outcome);
    t.bob_outcomes.push_back(b);
    t.correlations.push_back(alice.outcome * b);
  }
  return t;
}

double correlation_value(const GameTranscript& t) {
  if (t.alice_outcomes.empty()) return 0.0;
  std::size_t wins = 0;
  for (std::size_t i = 0; i < t.alice_outcomes.size(); ++i) wins += t.alice_outcomes[i] == t.bob_outcomes[i];
  return static_cast<double>(wins) / static_cast<double>(t.alice_outcomes.size());
}

AveragedCorrelations averaged_correlations(const GameTranscript& t) {
  double sum[2] = {0.0, 0.0};
  std::size_t count[2] = {0, 0};
  for (std::size_t i = 0; i < t.correlations.size(); ++i) {
    sum[t.settings[i]] += t.correlations[i];
    ++count[t.settings[i]];
  }
  return {count[0] ? sum[0] / static_cast<double>(count[0]) : 0.0,
          count[1] ? sum[1] / static_cast<double>(count[1]) : 0.0};
}

double azuma_bound(double delta, std::uint64_t n) {
  if (!(delta > 0.0)) throw std::domain_error("azuma_bound: delta must be positive");
  return std::exp(-delta * delta * static_cast<double>(n) / 8.0);
}

std::uint64_t required_rounds(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("required_rounds: eps must lie in (0, 1)");
  const double k = 8.0 / (epsilon * epsilon) * std::log(1.0 / epsilon);
  return static_cast<std::uint64_t>(std::ceil(k));
}

std::string to_string(CountSetting s) { return s == CountSetting::iid ? "iid" : "noniid"; }

CountSetting parse_count_setting(const std::string& text) {
  if (text == "iid") return CountSetting::iid;
  if (text == "noniid") return CountSetting::noniid;
  throw std::invalid_argument("unknown setting: " + text);
}

CountReport measurement_count(double c, double D, CountSetting setting) {
  if (!(c > 0.0) || !(D > 0.0)) throw std::domain_error("measurement_count: c and D must be positive");
  CountReport r{c, D, setting, 0.0};
  if (setting == CountSetting::iid) {
    if (!(D < c)) throw std::domain_error("measurement_count: iid needs D < c");
    r.count = 2.0 * std::pow(c, 4) / std::pow(D, 4) * std::log(c / D);
  } else {
    if (!(std::pow(D, 6) < c * c)) throw std::domain_error("measurement_count: noniid needs D^6 < c^2");
    r.count = 8.0 * std::pow(c, 4) / std::pow(D, 12) * std::log(c * c / std::pow(D, 6));
  }
  return r;
}

TypicalBound typical_state_bound(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("typical_state_bound: gamma must lie in (0, 1)");
  const double r = std::cbrt(gamma);
  return {1.0 - r, r};
}

double gentle_measurement_bound(double delta) {
  if (!(delta >= 0.0)) throw std::domain_error("gentle_measurement_bound: delta must be nonnegative");
  return 2.0 * std::sqrt(delta) + delta;
}

std::vector<CountComparisonRow> count_comparison(const std::vector<double>& D_grid, double c_iid, double c_noniid) {
  std::vector<CountComparisonRow> rows;
  rows.reserve(D_grid.size());
  for (double D : D_grid) {
    rows.push_back({D, measurement_count(c_iid, D, CountSetting::iid).count,
                    measurement_count(c_noniid, D, CountSetting::noniid).count});
  }
  return rows;
}

std::string count_comparison_csv(const std::vector<CountComparisonRow>& rows) {
  std::string out = "D,iid_count,noniid_count\n";
  for (const CountComparisonRow& r : rows) {
    out += format_g17(r.D) + ',' + format_g17(r.iid_count) + ',' + format_g17(r.noniid_count) + '\n';
  }
  return out;
}

double round_isometry_distance(const RoundPlan& plan, const Observable& a0, const Observable& a1) {
  const Dims& d = plan.state.dims();
  const std::size_t db = d.at(1);
  const Matrix u = selftest::alice_frame_rotation(a0, a1);
  const Matrix rotated = conjugate_local(u, 0, d, plan.state.entries());
  const Matrix v = kron(identity(2), selftest::isometry_matrix(plan.bob_x, plan.bob_y));
  const DensityMatrix out(v * rotated * v.adjoint(), {2, db, 2});
  const DensityMatrix reduced = partial_trace(out, {0, 2});
  return trace_distance(reduced, DensityMatrix::from_pure(bell_psi_plus()));
}

SampledRoundReport sampled_round_experiment(const ProverStrategy& strategy, double epsilon, const Observable& a0,
                                   const Observable& a1, Rng& rng, const SampledRoundOptions& opts) {
  SampledRoundReport rep;
  rep.epsilon = epsilon;
  rep.required_rounds = required_rounds(epsilon);
  rep.reference_scale = std::pow(epsilon, 1.0 / 6.0);
  std::uint64_t k = std::max<std::uint64_t>(2, rep.required_rounds + (rep.required_rounds % 2));
  const std::uint64_t cap = opts.max_rounds - (opts.max_rounds % 2);
  if (cap < 2) throw std::invalid_argument("sampled_round_experiment: max_rounds must be at least 2");
  if (k > cap) {
    k = cap;
    rep.capped = true;
  }
  rep.rounds_played = k;

  Rng game_rng = rng.fork(0);
  const GameTranscript t = play_game(strategy, static_cast<std::size_t>(k), a0, a1, game_rng);
  const AveragedCorrelations c = averaged_correlations(t);
  rep.c0 = c.c0;
  rep.c1 = c.c1;
  rep.saturated = c.c0 + c.c1 >= 2.0 - epsilon;

  Rng pick_rng = rng.fork(1);
  rep.sampled_round = static_cast<std::size_t>(pick_rng.below(k));
  const std::vector<int> history(t.bob_outcomes.begin(),
                                 t.bob_outcomes.begin() + static_cast<std::ptrdiff_t>(rep.sampled_round));
  const RoundPlan plan = strategy.plan_round(rep.sampled_round, t.settings[rep.sampled_round], history, a0, a1);
  rep.sampled_round_deviates = plan.deviates;
  rep.trace_distance = round_isometry_distance(plan, a0, a1);
  return rep;
}

AzumaExperiment azuma_experiment(double q, std::size_t n, std::size_t repetitions, const std::vector<double>& deltas,
                                 std::uint64_t seed, std::size_t workers) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("azuma_experiment: n must be even and positive");
  AzumaExperiment ex;
  ex.q = q;
  ex.n = n;
  ex.repetitions = repetitions;
  ex.true_correlation = 1.0 - 2.0 * q;

  const ProverStrategy strategy = ProverStrategy::noisy(q);
  const StandardObservables s = standard_observables();
  std::vector<double> deviation(repetitions, 0.0);
  auto run = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < repetitions; i += step) {
      Rng rng(seed, i);
      const GameTranscript t = play_game(strategy, n, s.x, s.y, rng);
      double sum = 0.0;
      for (int c : t.correlations) sum += c;
      deviation[i] = std::abs(sum / static_cast<double>(n) - ex.true_correlation);
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(repetitions, 1)));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& th : pool) th.join();
  }

  for (double delta : deltas) {
    const auto hits = std::count_if(deviation.begin(), deviation.end(), [&](double d) { return d >= delta; });
    ex.cells.push_back({delta, repetitions ? static_cast<double>(hits) / static_cast<double>(repetitions) : 0.0,
                        azuma_bound(delta, n)});
  }
  return ex;
}

}  // namespace steercert::steergame
