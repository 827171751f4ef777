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


// Python surface: scalar calculators return floats, reports return dicts built
// from the same JSON views the CLI emits.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "steercert/qmath.hpp"
#include "steercert/report_json.hpp"
#include "steercert/rigidity.hpp"
#include "steercert/rng.hpp"
#include "steercert/selftest.hpp"
#include "steercert/steerability.hpp"
#include "steercert/steergame.hpp"
#include "steercert/vdqcprep.hpp"

namespace py = pybind11;
namespace sc = steercert;

namespace {

py::object to_py(const sc::report::Json& j) {
  return py::module_::import("json").attr("loads")(sc::report::dump(j, -1));
}

sc::Observable alice_observable(char name) {
  const auto s = sc::standard_observables();
  switch (name) {
    case 'x':
      return s.x;
    case 'y':
      return s.y;
    case 'z':
      return s.z;
  }
  throw std::invalid_argument(std::string("unknown Alice observable: ") + name);
}

std::pair<sc::Observable, sc::Observable> alice_pair(const std::string& pair) {
  if (pair.size() != 2) throw std::invalid_argument("Alice pair must be two letters, e.g. 'xy'");
  return {alice_observable(pair[0]), alice_observable(pair[1])};
}

py::dict certify_arrays(const sc::Vector& psi, std::size_t bob_dim, const sc::Matrix& xb, const sc::Matrix& yb,
                        const std::string& convention) {
  const sc::StateVector state(psi, {2, bob_dim});
  const auto s = sc::standard_observables();
  const auto rep = sc::selftest::certify(state, s.x, s.y, sc::Observable(xb, 1), sc::Observable(yb, 1),
                                         sc::selftest::parse_gamma2_convention(convention));
  return to_py(sc::report::to_json(rep));
}

}  // namespace

PYBIND11_MODULE(_steercert, m) {
  m.doc() = "One-sided device-independent self-testing toolkit";
  m.attr("__version__") = STEERCERT_VERSION;

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  m.def(
      "measurement_count",
      [](double c, double D, const std::string& setting) {
        return sc::steergame::measurement_count(c, D, sc::steergame::parse_count_setting(setting)).count;
      },
      py::arg("c"), py::arg("D"), py::arg("setting") = "iid");
  m.def("required_rounds", &sc::steergame::required_rounds, py::arg("epsilon"));
  m.def("azuma_bound", &sc::steergame::azuma_bound, py::arg("delta"), py::arg("n"));
  m.def("ideal_pair_count", &sc::vdqcprep::ideal_pair_count, py::arg("M"), py::arg("c") = 1.0);
  m.def(
      "soundness_bound",
      [](double eta, double lambda) {
        const auto b = sc::vdqcprep::soundness_bound(eta, lambda);
        return py::make_tuple(b.bound, b.vacuous);
      },
      py::arg("eta"), py::arg("lam"));

  m.def(
      "selftest_bound", [](double g1, double g2) { return sc::selftest::selftest_bound({g1, g2}); },
      py::arg("gamma1"), py::arg("gamma2"));
  m.def("appendix_bound", &sc::selftest::appendix_bound, py::arg("epsilon"));
  m.def(
      "gammas_from_saturation",
      [](double eps, const std::string& convention) {
        const auto g = sc::selftest::gammas_from_saturation(eps, sc::selftest::parse_gamma2_convention(convention));
        return py::make_tuple(g.gamma1, g.gamma2);
      },
      py::arg("epsilon"), py::arg("convention") = "theorem");
  m.def(
      "tightness_witness",
      [](double eps) {
        const auto w = sc::selftest::tightness_witness(eps);
        return py::make_tuple(sc::Vector(w.psi.amplitudes()), sc::Matrix(w.b0.matrix()), sc::Matrix(w.b1.matrix()));
      },
      py::arg("epsilon"));
  m.def("certify", &certify_arrays, py::arg("psi"), py::arg("bob_dim"), py::arg("xb"), py::arg("yb"),
        py::arg("convention") = "measured",
        "Certify a state on {Alice qubit, Bob d_B} against Alice's X and Y.");
  m.def(
      "isometry_matrix",
      [](const sc::Matrix& xb, const sc::Matrix& yb) {
        return sc::selftest::isometry_matrix(sc::Observable(xb, 1), sc::Observable(yb, 1));
      },
      py::arg("xb"), py::arg("yb"));
  m.def(
      "soundness_sweep",
      [](std::size_t trials, double min_saturation, std::uint64_t seed, std::size_t workers) {
        sc::selftest::SweepSummary s;
        {
          py::gil_scoped_release release;
          s = sc::selftest::soundness_sweep(trials, min_saturation, seed, workers);
        }
        return to_py(sc::report::to_json(s));
      },
      py::arg("trials"), py::arg("min_saturation") = 1.9, py::arg("seed") = 0, py::arg("workers") = 1);

  m.def(
      "play_game",
      [](const std::string& strategy, std::size_t K, std::uint64_t seed, const std::string& alice) {
        const auto [a0, a1] = alice_pair(alice);
        sc::Rng rng(seed);
        const auto t = sc::steergame::play_game(sc::steergame::parse_strategy(strategy), K, a0, a1, rng);
        auto j = sc::report::to_json(t);
        const auto c = sc::steergame::averaged_correlations(t);
        j["correlation_value"] = sc::steergame::correlation_value(t);
        j["c0"] = c.c0;
        j["c1"] = c.c1;
        return to_py(j);
      },
      py::arg("strategy") = "honest", py::arg("K") = 1000, py::arg("seed") = 0, py::arg("alice") = "xy");
  m.def(
      "sampled_round_experiment",
      [](const std::string& strategy, double eps, std::uint64_t seed, std::uint64_t max_rounds) {
        const auto s = sc::standard_observables();
        sc::Rng rng(seed);
        sc::steergame::SampledRoundOptions opts;
        opts.max_rounds = max_rounds;
        return to_py(sc::report::to_json(sc::steergame::sampled_round_experiment(
            sc::steergame::parse_strategy(strategy), eps, s.x, s.y, rng, opts)));
      },
      py::arg("strategy"), py::arg("epsilon"), py::arg("seed") = 0, py::arg("max_rounds") = 100'000'000);
  m.def(
      "azuma_experiment",
      [](double q, std::size_t n, std::size_t reps, const std::vector<double>& deltas, std::uint64_t seed,
         std::size_t workers) {
        sc::steergame::AzumaExperiment e;
        {
          py::gil_scoped_release release;
          e = sc::steergame::azuma_experiment(q, n, reps, deltas, seed, workers);
        }
        return to_py(sc::report::to_json(e));
      },
      py::arg("q"), py::arg("n"), py::arg("repetitions"), py::arg("deltas"), py::arg("seed") = 0,
      py::arg("workers") = 1);

  m.def("shift_identity_check", &sc::rigidity::shift_identity_check, py::arg("M"));
  m.def(
      "guessing_distance",
      [](std::size_t N, std::size_t K, const std::string& state, double eps, std::uint64_t seed) {
        sc::rigidity::Scenario scn;
        scn.N = N;
        scn.K = K;
        scn.state = state;
        scn.epsilon = eps;
        const auto s = sc::rigidity::build_strategy(scn);
        sc::Rng rng(seed);
        return sc::rigidity::strategy_distance(s, sc::rigidity::guessing_strategy(s), rng).distance;
      },
      py::arg("N"), py::arg("K"), py::arg("state") = "bell", py::arg("epsilon") = 0.02, py::arg("seed") = 0,
      "Trace distance on sampled rounds between a pair strategy and its guessing counterpart.");
  m.def(
      "rigidity_bound",
      [](std::size_t N, double eps, double constant) {
        const auto b = sc::rigidity::rigidity_bound(N, eps, constant);
        return py::make_tuple(b.bound, b.round_scale);
      },
      py::arg("N"), py::arg("epsilon"), py::arg("constant") = 13.0);

  m.def(
      "check_totally_steerable",
      [](const sc::Matrix& rho, double tol) {
        return to_py(sc::report::to_json(sc::steerability::check_totally_steerable(sc::DensityMatrix(rho, {2, 2}), tol)));
      },
      py::arg("rho"), py::arg("tol") = sc::steerability::kDefaultTolerance);
  m.def(
      "maximal_entanglement_crosscheck",
      [](const sc::Matrix& rho, double tol) {
        return sc::steerability::maximal_entanglement_crosscheck(sc::DensityMatrix(rho, {2, 2}), tol);
      },
      py::arg("rho"), py::arg("tol") = sc::steerability::kDefaultTolerance);
  m.def(
      "general_form",
      [](sc::Complex f, double phi1, double phi2) {
        return sc::Matrix(sc::steerability::general_form({f, phi1, phi2}).entries());
      },
      py::arg("f"), py::arg("phi1"), py::arg("phi2"));
  m.def(
      "werner_state", [](double p) { return sc::Matrix(sc::steerability::werner_state(p).entries()); }, py::arg("p"));
  m.def("steer_to_ensemble", &sc::steerability::steer_to_ensemble, py::arg("targets"), py::arg("tol") = 1e-10);

  m.def(
      "run_stage1",
      [](std::size_t M, std::size_t T, const std::string& server, double lambda, double eta, std::uint64_t seed,
         bool audit) {
        const sc::vdqcprep::PrepConfig cfg{M, T, lambda, sc::vdqcprep::parse_server(server)};
        sc::Rng rng(seed);
        const auto out = sc::vdqcprep::run_stage1(cfg, rng, eta);
        return to_py(audit ? sc::report::audit_view(cfg, out) : sc::report::server_visible_view(cfg, out));
      },
      py::arg("M") = 4, py::arg("T") = 204, py::arg("server") = "honest", py::arg("lam") = 2.0, py::arg("eta") = 0.0,
      py::arg("seed") = 0, py::arg("audit") = false,
      "One stage-one run. The default view is what the server may see; audit=True includes secrets.");
}
