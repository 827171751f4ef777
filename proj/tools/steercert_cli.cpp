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

// steercert: command-line front end.
//
// Exit codes: 0 success, 1 bound violation or unexpected abort, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steercert/report_json.hpp"
#include "steercert/rigidity.hpp"
#include "steercert/sampling.hpp"
#include "steercert/selftest.hpp"
#include "steercert/steerability.hpp"
#include "steercert/steergame.hpp"
#include "steercert/vdqcprep.hpp"

namespace {

using steercert::report::Json;
namespace sc = steercert;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::size_t workers = 1;
};

// Parameters of one subcommand, in declaration order: given values, or the
// default when one exists.
Json collect_parameters(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.empty()) {
        params[name] = true;
      } else if (res.size() == 1) {
        params[name] = res.front();
      } else {
        params[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

Json manifest(const std::string& command, const CLI::App* sub, const Globals& g) {
  Json outputs = Json::array();
  if (!g.out.empty()) outputs.push_back(g.out);
  return Json{{"command", command},
              {"parameters", collect_parameters(sub)},
              {"seed", g.seed},
              {"format", g.format},
              {"workers", g.workers},
              {"version", STEERCERT_VERSION},
              {"outputs", outputs}};
}

void emit(const std::string& text, const Globals& g) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + g.out);
  f << text;
}

void emit_json(Json doc, const std::string& command, const CLI::App* sub, const Globals& g) {
  Json full{{"manifest", manifest(command, sub, g)}};
  for (auto& item : doc.items()) full[item.key()] = std::move(item.value());
  emit(steercert::report::dump(full) + "\n", g);
}

void require_json(const Globals& g, const std::string& command) {
  if (g.format != "json") throw UsageError(command + " only produces JSON output");
}

struct AlicePair {
  sc::Observable a0;
  sc::Observable a1;
};

AlicePair alice_pair(const std::string& name) {
  const sc::StandardObservables s = sc::standard_observables();
  if (name == "xy") return {s.x, s.y};
  if (name == "zx") return {s.z, s.x};
  if (name == "xz") return {s.x, s.z};
  if (name == "yz") return {s.y, s.z};
  throw UsageError("unknown Alice pair: " + name);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("grid must be start:stop:step with step > 0");
  }
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return grid;
}

// ---------------------------------------------------------------------------

struct SelftestArgs {
  bool honest = false;
  bool witness = false;
  double eps = 0.02;
  std::size_t sweep = 0;
  double min_saturation = 1.9;
  std::string convention = "measured";
  std::string alice = "xy";
};

int run_selftest(const SelftestArgs& a, const CLI::App* sub, const Globals& g) {
  require_json(g, "selftest");
  const int modes = int(a.honest) + int(a.witness) + int(a.sweep > 0);
  if (modes != 1) throw UsageError("choose exactly one of --honest, --witness, --random-sweep");
  const auto conv = sc::selftest::parse_gamma2_convention(a.convention);
  const AlicePair p = alice_pair(a.alice);

  if (a.sweep > 0) {
    const auto s = sc::selftest::soundness_sweep(a.sweep, a.min_saturation, g.seed, g.workers);
    emit_json(Json{{"sweep", sc::report::to_json(s)}}, "selftest", sub, g);
    return s.violations == 0 ? kExitOk : kExitViolation;
  }
  sc::selftest::CertificationReport rep;
  if (a.honest) {
    const sc::StateVector psi = sc::selftest::correlated_bell_state(p.a0, p.a1);
    rep = sc::selftest::general_observable_selftest(psi, p.a0, p.a1, p.a0.on(1), p.a1.on(1), conv);
  } else {
    const auto w = sc::selftest::tightness_witness_for(p.a0, p.a1, a.eps);
    rep = sc::selftest::general_observable_selftest(w.psi, p.a0, p.a1, w.b0, w.b1, conv);
  }
  emit_json(Json{{"report", sc::report::to_json(rep)}}, "selftest", sub, g);
  return rep.bound_holds ? kExitOk : kExitViolation;
}

struct CountsArgs {
  double c = 12.3;
  double D = 0.1;
  std::string setting = "iid";
  bool comparison = false;
  std::string grid = "0.05:0.5:0.01";
  double c_iid = 12.3;
  double c_noniid = 12.3;
  double rounds_eps = 0.0;
  std::size_t pairs_M = 0;
  double pairs_c = 1.0;
};

int run_counts(const CountsArgs& a, const CLI::App* sub, const Globals& g) {
  if (a.comparison) {
    const auto rows = sc::steergame::count_comparison(parse_grid(a.grid), a.c_iid, a.c_noniid);
    if (g.format == "csv") {
      emit(sc::steergame::count_comparison_csv(rows), g);
      return kExitOk;
    }
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(Json{{"D", r.D}, {"iid_count", r.iid_count}, {"noniid_count", r.noniid_count}});
    emit_json(Json{{"rows", arr}}, "counts", sub, g);
    return kExitOk;
  }
  require_json(g, "counts");
  Json doc{{"count", sc::report::to_json(sc::steergame::measurement_count(
                         a.c, a.D, sc::steergame::parse_count_setting(a.setting)))}};
  if (a.rounds_eps > 0.0) doc["required_rounds"] = sc::steergame::required_rounds(a.rounds_eps);
  if (a.pairs_M > 0) doc["ideal_pair_count"] = sc::vdqcprep::ideal_pair_count(a.pairs_M, a.pairs_c);
  emit_json(doc, "counts", sub, g);
  return kExitOk;
}

struct GameArgs {
  std::string strategy = "honest";
  std::size_t K = 1000;
  std::string alice = "xy";
  bool transcript = false;
  double sampled_eps = 0.0;
  std::uint64_t max_rounds = 100'000'000;
  std::size_t azuma_reps = 0;
  std::size_t azuma_n = 1000;
  double azuma_q = 0.1;
  std::vector<double> deltas{0.05, 0.1, 0.2};
};

int run_game(const GameArgs& a, const CLI::App* sub, const Globals& g) {
  require_json(g, "game");
  const AlicePair p = alice_pair(a.alice);
  if (a.azuma_reps > 0) {
    const auto ex = sc::steergame::azuma_experiment(a.azuma_q, a.azuma_n, a.azuma_reps, a.deltas, g.seed, g.workers);
    emit_json(Json{{"azuma", sc::report::to_json(ex)}}, "game", sub, g);
    const bool ok = std::all_of(ex.cells.begin(), ex.cells.end(), [](const auto& c) { return c.frequency <= c.bound; });
    return ok ? kExitOk : kExitViolation;
  }
  const auto strategy = sc::steergame::parse_strategy(a.strategy);
  if (a.sampled_eps > 0.0) {
    sc::Rng rng(g.seed);
    const auto rep = sc::steergame::sampled_round_experiment(strategy, a.sampled_eps, p.a0, p.a1, rng,
                                                             {a.max_rounds});
    emit_json(Json{{"strategy", strategy.name()}, {"sampled_round", sc::report::to_json(rep)}}, "game", sub, g);
    return kExitOk;
  }
  sc::Rng rng(g.seed);
  const auto t = sc::steergame::play_game(strategy, a.K, p.a0, p.a1, rng);
  const auto c = sc::steergame::averaged_correlations(t);
  Json doc{{"strategy", strategy.name()},
           {"K", a.K},
           {"correlation_value", sc::steergame::correlation_value(t)},
           {"c0", c.c0},
           {"c1", c.c1},
           {"saturation", c.c0 + c.c1}};
  if (a.transcript) doc["transcript"] = sc::report::to_json(t);
  emit_json(doc, "game", sub, g);
  return kExitOk;
}

struct RigidityArgs {
  std::string scenario;
  std::size_t N = 2;
  std::size_t K = 4;
  double epsilon = 0.02;
  std::string state = "bell";
  std::string bob = "honest";
  double constant = 13.0;
  std::size_t shift_checks = 0;
};

int run_rigidity(const RigidityArgs& a, const CLI::App* sub, const Globals& g) {
  require_json(g, "rigidity");
  sc::rigidity::Scenario s;
  if (!a.scenario.empty()) {
    std::ifstream f(a.scenario);
    if (!f) throw UsageError("cannot read scenario: " + a.scenario);
    std::stringstream buf;
    buf << f.rdbuf();
    s = sc::rigidity::load_scenario(buf.str());
  } else {
    s.N = a.N;
    s.K = a.K;
    s.epsilon = a.epsilon;
    s.seed = g.seed;
    s.state = a.state;
    s.bob = a.bob;
  }
  const auto strategy = sc::rigidity::build_strategy(s);
  const auto ideal = sc::rigidity::honest_pairs(s.N, s.K);
  sc::Rng rng(s.seed);
  const auto sample = sc::rigidity::sample_rounds(s.N, s.K, rng);
  const auto ev = sc::rigidity::evolve(strategy, sample);
  const double to_guess = sc::rigidity::strategy_distance(strategy, sc::rigidity::guessing_strategy(strategy), sample);
  const double to_ideal = sc::rigidity::strategy_distance(strategy, ideal, sample);

  double worst = 0.0;
  for (double c : ev.game_correlations) worst = std::max(worst, 1.0 - c);
  const auto structure = sc::rigidity::epsilon_structured(ev.game_correlations, s.epsilon > 0.0 ? s.epsilon : worst);
  const auto bound = sc::rigidity::rigidity_bound(s.N, worst, a.constant);

  Json doc{{"scenario", Json{{"N", s.N}, {"K", s.K}, {"epsilon", s.epsilon}, {"seed", s.seed},
                             {"state", s.state}, {"bob", s.bob}}},
           {"sample", sc::report::to_json(sample)},
           {"structure", sc::report::to_json(structure)},
           {"epsilon_measured", worst},
           {"distance_to_guessing", to_guess},
           {"distance_to_ideal", to_ideal},
           {"rigidity_bound", Json{{"constant", a.constant}, {"bound", bound.bound},
                                   {"round_scale", bound.round_scale}}},
           {"within_bound", to_ideal <= bound.bound + 1e-9}};
  if (a.shift_checks > 0) {
    sc::Rng mrng(g.seed, 1);
    double residual = 0.0;
    for (std::size_t i = 0; i < a.shift_checks; ++i) {
      residual = std::max(residual, sc::rigidity::shift_identity_check(sc::ginibre(2, 2, mrng)));
    }
    doc["shift_identity_max_residual"] = residual;
  }
  emit_json(doc, "rigidity", sub, g);
  return to_ideal <= bound.bound + 1e-9 ? kExitOk : kExitViolation;
}

struct SteerableArgs {
  std::string state;
  std::size_t family_sweep = 0;
  std::size_t random = 0;
  double tol = sc::steerability::kDefaultTolerance;
};

sc::DensityMatrix named_state(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "bell") return sc::DensityMatrix::from_pure(sc::bell_psi_plus());
  if (head == "product") return sc::DensityMatrix::from_pure(sc::StateVector::basis({2, 2}, 0));
  if (head == "werner") return sc::steerability::werner_state(std::stod(arg));
  if (head == "family") {
    std::vector<double> v;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 4) throw UsageError("family needs re_f,im_f,phi1,phi2");
    return sc::steerability::general_form({sc::Complex(v[0], v[1]), v[2], v[3]});
  }
  throw UsageError("unknown state: " + text);
}

int run_steerable(const SteerableArgs& a, const CLI::App* sub, const Globals& g) {
  const int modes = int(!a.state.empty()) + int(a.family_sweep > 0) + int(a.random > 0);
  if (modes != 1) throw UsageError("choose exactly one of --state, --family-sweep, --random");
  sc::Rng rng(g.seed);
  if (a.family_sweep > 0) {
    const auto rows = sc::steerability::family_sweep(a.family_sweep, rng, a.tol);
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.totally_steerable; });
    if (g.format == "csv") {
      emit(sc::steerability::family_csv(rows), g);
    } else {
      double worst_purity = 0.0;
      double worst_schmidt = 0.0;
      for (const auto& r : rows) {
        worst_purity = std::max(worst_purity, std::abs(r.purity - 1.0));
        worst_schmidt = std::max({worst_schmidt, std::abs(r.schmidt1 - 1.0 / std::sqrt(2.0)),
                                  std::abs(r.schmidt2 - 1.0 / std::sqrt(2.0))});
      }
      emit_json(Json{{"draws", rows.size()},
                     {"all_totally_steerable", ok},
                     {"max_purity_deviation", worst_purity},
                     {"max_schmidt_deviation", worst_schmidt}},
                "steerable", sub, g);
    }
    return ok ? kExitOk : kExitViolation;
  }
  require_json(g, "steerable");
  if (a.random > 0) {
    std::size_t agree = 0;
    for (std::size_t i = 0; i < a.random; ++i) {
      const auto rho = sc::random_density({2, 2}, rng, 1 + rng.below(4));
      agree += sc::steerability::maximal_entanglement_crosscheck(rho, a.tol);
    }
    emit_json(Json{{"samples", a.random}, {"agreements", agree}}, "steerable", sub, g);
    return agree == a.random ? kExitOk : kExitViolation;
  }
  const auto rho = named_state(a.state);
  const auto v = sc::steerability::check_totally_steerable(rho, a.tol);
  emit_json(Json{{"verdict", sc::report::to_json(v)},
                 {"crosscheck_agrees", sc::steerability::maximal_entanglement_crosscheck(rho, a.tol)}},
            "steerable", sub, g);
  return kExitOk;
}

struct VdqcArgs {
  std::size_t M = 4;
  std::size_t T = 204;
  std::string server = "honest";
  double lambda = 2.0;
  double eta = 0.0;
  std::size_t runs = 1;
  std::string audit;
  bool expect_accept = false;
};

int run_vdqc(const VdqcArgs& a, const CLI::App* sub, const Globals& g) {
  require_json(g, "vdqc");
  sc::vdqcprep::PrepConfig cfg{a.M, a.T, a.lambda, sc::vdqcprep::parse_server(a.server)};
  if (a.runs == 0) throw UsageError("--runs must be positive");
  std::size_t aborted = 0;
  std::size_t accept_incorrect = 0;
  Json last_view;
  Json last_audit;
  for (std::size_t i = 0; i < a.runs; ++i) {
    sc::Rng rng(g.seed, i);
    const auto out = sc::vdqcprep::run_stage1(cfg, rng, a.eta);
    aborted += out.aborted;
    if (!out.aborted) {
      sc::Rng oracle_rng = rng.fork(7);
      accept_incorrect += sc::vdqcprep::stage2_oracle(out, a.eta, oracle_rng) ==
                          sc::vdqcprep::Stage2Result::accept_incorrect;
    }
    if (i + 1 == a.runs) {
      last_view = sc::report::server_visible_view(cfg, out);
      last_audit = sc::report::audit_view(cfg, out);
    }
  }
  const auto sb = sc::vdqcprep::soundness_bound(a.eta, a.lambda);
  const double runs = static_cast<double>(a.runs);
  Json doc{{"runs", a.runs},
           {"aborted", aborted},
           {"abort_rate", static_cast<double>(aborted) / runs},
           {"accept_incorrect_rate", static_cast<double>(accept_incorrect) / runs},
           {"soundness_bound", Json{{"bound", sb.bound}, {"vacuous", sb.vacuous}}},
           {"recommended_games", sc::vdqcprep::recommended_games(a.lambda, a.M)},
           {"server_visible", last_view}};
  if (!a.audit.empty()) {
    std::ofstream f(a.audit, std::ios::binary);
    if (!f) throw UsageError("cannot open audit file: " + a.audit);
    f << sc::report::dump(last_audit) << "\n";
  }
  emit_json(doc, "vdqc", sub, g);
  return a.expect_accept && aborted > 0 ? kExitViolation : kExitOk;
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steercert: one-sided device-independent self-testing toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();

  SelftestArgs st;
  auto* s_self = app.add_subcommand("selftest", "Certify a strategy from its steering correlations");
  s_self->add_flag("--honest", st.honest, "Honest Bell strategy");
  s_self->add_flag("--witness", st.witness, "Tightness witness at --eps");
  s_self->add_option("--eps", st.eps, "Saturation gap for --witness")->capture_default_str();
  s_self->add_option("--random-sweep", st.sweep, "Randomised soundness sweep with this many trials");
  s_self->add_option("--min-saturation", st.min_saturation, "Minimum saturation in the sweep")->capture_default_str();
  s_self->add_option("--convention", st.convention, "gamma2 convention")
      ->check(CLI::IsMember({"measured", "theorem", "appendix"}))
      ->capture_default_str();
  s_self->add_option("--alice", st.alice, "Alice's anticommuting pair")
      ->check(CLI::IsMember({"xy", "zx", "xz", "yz"}))
      ->capture_default_str();

  CountsArgs ct;
  auto* s_counts = app.add_subcommand("counts", "Measurement-count calculators");
  s_counts->add_option("--c", ct.c, "Bound constant")->capture_default_str();
  s_counts->add_option("--D", ct.D, "Target trace distance")->capture_default_str();
  s_counts->add_option("--setting", ct.setting, "iid or noniid")
      ->check(CLI::IsMember({"iid", "noniid"}))
      ->capture_default_str();
  s_counts->add_flag("--comparison", ct.comparison, "iid versus non-iid table over --D-grid");
  s_counts->add_option("--D-grid", ct.grid, "start:stop:step")->capture_default_str();
  s_counts->add_option("--c-iid", ct.c_iid, "Constant for the iid column")->capture_default_str();
  s_counts->add_option("--c-noniid", ct.c_noniid, "Constant for the non-iid column")->capture_default_str();
  s_counts->add_option("--rounds-eps", ct.rounds_eps, "Also report required_rounds(eps)");
  s_counts->add_option("--pairs-M", ct.pairs_M, "Also report the ideal pair count for M qubits");
  s_counts->add_option("--pairs-c", ct.pairs_c, "Constant for the ideal pair count")->capture_default_str();

  GameArgs gm;
  auto* s_game = app.add_subcommand("game", "Play a K-round steering game");
  s_game->add_option("--strategy", gm.strategy, "honest | iid_deviated:<eps> | classical_lhs | noisy:<q> | adaptive:<i,j>")
      ->capture_default_str();
  s_game->add_option("--K", gm.K, "Rounds (even)")->capture_default_str();
  s_game->add_option("--alice", gm.alice, "Alice's anticommuting pair")
      ->check(CLI::IsMember({"xy", "zx", "xz", "yz"}))
      ->capture_default_str();
  s_game->add_flag("--transcript", gm.transcript, "Include the full transcript");
  s_game->add_option("--sampled-round-eps", gm.sampled_eps, "Run the sampled-round isometry experiment at eps");
  s_game->add_option("--max-rounds", gm.max_rounds, "Desk-scale cap on K")->capture_default_str();
  s_game->add_option("--azuma-reps", gm.azuma_reps, "Run the martingale tail experiment with this many repetitions");
  s_game->add_option("--azuma-n", gm.azuma_n, "Rounds per repetition")->capture_default_str();
  s_game->add_option("--azuma-q", gm.azuma_q, "Flip probability of the noisy strategy")->capture_default_str();
  s_game->add_option("--delta", gm.deltas, "Deviation thresholds")->capture_default_str();

  RigidityArgs rg;
  auto* s_rig = app.add_subcommand("rigidity", "Sequential-game rigidity at desk scale");
  s_rig->add_option("--scenario", rg.scenario, "JSON scenario file");
  s_rig->add_option("--N", rg.N, "Games")->capture_default_str();
  s_rig->add_option("--K", rg.K, "Rounds per game (even)")->capture_default_str();
  s_rig->add_option("--epsilon", rg.epsilon, "Witness gap and structure threshold")->capture_default_str();
  s_rig->add_option("--state", rg.state, "bell or witness")->capture_default_str();
  s_rig->add_option("--bob", rg.bob, "honest, guess, fixed or random")->capture_default_str();
  s_rig->add_option("--constant", rg.constant, "Constant in the rigidity bound")->capture_default_str();
  s_rig->add_option("--shift-checks", rg.shift_checks, "Random matrices for the shift identity");

  SteerableArgs sb;
  auto* s_steer = app.add_subcommand("steerable", "Total steerability checks");
  s_steer->add_option("--state", sb.state, "bell | product | werner:<p> | family:<re,im,phi1,phi2>");
  s_steer->add_option("--family-sweep", sb.family_sweep, "Random draws from the totally steerable family");
  s_steer->add_option("--random", sb.random, "Random density matrices for the equivalence crosscheck");
  s_steer->add_option("--tol", sb.tol, "Verdict tolerance")->capture_default_str();

  VdqcArgs vd;
  auto* s_vdqc = app.add_subcommand("vdqc", "Verified state preparation");
  s_vdqc->add_option("--M", vd.M, "Kept qubits")->capture_default_str();
  s_vdqc->add_option("--T", vd.T, "Total pairs")->capture_default_str();
  s_vdqc->add_option("--server", vd.server, "honest | bitflip:<q> | witness:<eps>")->capture_default_str();
  s_vdqc->add_option("--lambda", vd.lambda, "Soundness parameter (> 1)")->capture_default_str();
  s_vdqc->add_option("--eta", vd.eta, "Computation-stage soundness error")->capture_default_str();
  s_vdqc->add_option("--runs", vd.runs, "Independent runs, run i uses stream i")->capture_default_str();
  s_vdqc->add_option("--audit", vd.audit, "Write the full audit trace (secrets included) here");
  s_vdqc->add_flag("--expect-accept", vd.expect_accept, "Exit 1 if any run aborts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (s_self->parsed()) return run_selftest(st, s_self, g);
    if (s_counts->parsed()) return run_counts(ct, s_counts, g);
    if (s_game->parsed()) return run_game(gm, s_game, g);
    if (s_rig->parsed()) return run_rigidity(rg, s_rig, g);
    if (s_steer->parsed()) return run_steerable(sb, s_steer, g);
    if (s_vdqc->parsed()) return run_vdqc(vd, s_vdqc, g);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "out of domain: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
