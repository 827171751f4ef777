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

#include "steercert/vdqcprep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "steercert/selftest.hpp"

namespace steercert::vdqcprep {

namespace {

StateVector pair_state(const ServerModel& s) {
  if (s.kind == ServerKind::witness) return selftest::tightness_witness(s.parameter).psi;
  return bell_psi_plus();
}

// The server half's ideal state after the verifier sees `outcome` in `basis`:
// same eigenvalue for equatorial bases, the opposite Z eigenstate otherwise.
StateVector steered_target(int basis, int outcome) {
  Vector v(2);
  if (basis == kComputationalBasis) {
    v << (outcome == 1 ? 0.0 : 1.0), (outcome == 1 ? 1.0 : 0.0);
  } else {
    const Complex phase = std::exp(Complex(0.0, basis_angle(basis)));
    v << 1.0, static_cast<double>(outcome) * phase;
    v /= std::sqrt(2.0);
  }
  return StateVector(std::move(v), {2});
}

bool outcomes_consistent(int basis, int verifier, int server) {
  return basis == kComputationalBasis ? verifier == -server : verifier == server;
}

}  // namespace

double basis_angle(int basis) {
  if (basis < 0 || basis >= kComputationalBasis) throw std::invalid_argument("basis_angle: not an equatorial basis");
  return basis * std::numbers::pi / 4.0;
}

Matrix basis_observable(int basis) {
  if (basis == kComputationalBasis) return pauli_z();
  const double t = basis_angle(basis);
  return std::cos(t) * pauli_x() + std::sin(t) * pauli_y();
}

ServerModel parse_server(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  ServerModel s;
  if (head == "honest") {
    if (colon != std::string::npos) throw std::invalid_argument("honest server takes no argument");
    return s;
  }
  if (colon == std::string::npos) throw std::invalid_argument("server '" + head + "' needs an argument");
  std::size_t used = 0;
  const std::string arg = text.substr(colon + 1);
  s.parameter = std::stod(arg, &used);
  if (used != arg.size()) throw std::invalid_argument("bad server argument: " + arg);
  if (head == "bitflip") {
    if (!(s.parameter >= 0.0 && s.parameter <= 1.0)) throw std::invalid_argument("bitflip q must lie in [0, 1]");
    s.kind = ServerKind::bitflip;
  } else if (head == "witness") {
    if (!(s.parameter > 0.0 && s.parameter < 1.0)) throw std::invalid_argument("witness eps must lie in (0, 1)");
    s.kind = ServerKind::witness;
  } else {
    throw std::invalid_argument("unknown server: " + text);
  }
  return s;
}

std::string to_string(const ServerModel& s) {
  char buf[64];
  switch (s.kind) {
    case ServerKind::honest:
      return "honest";
    case ServerKind::bitflip:
      std::snprintf(buf, sizeof buf, "bitflip:%.17g", s.parameter);
      return buf;
    case ServerKind::witness:
      std::snprintf(buf, sizeof buf, "witness:%.17g", s.parameter);
      return buf;
  }
  return "honest";
}

double ideal_pair_count(std::size_t M, double c) {
  if (M < 2) throw std::domain_error("ideal_pair_count: M must be at least 2");
  if (!(c > 0.0)) throw std::domain_error("ideal_pair_count: c must be positive");
  const double m = static_cast<double>(M);
  return c * std::pow(m, 13) * std::log(m);
}

SoundnessBound soundness_bound(double eta, double lambda) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("soundness_bound: eta must lie in [0, 1]");
  if (!(lambda > 1.0)) throw std::domain_error("soundness_bound: lambda must exceed 1");
  const double b = eta + 1.0 / lambda;
  return {b, b >= 1.0};
}

double recommended_games(double lambda, std::size_t M) {
  if (!(lambda > 1.0)) throw std::domain_error("recommended_games: lambda must exceed 1");
  return std::pow(lambda, 12) * std::pow(static_cast<double>(M), 6);
}

double test_mismatch_probability(const ServerModel& server, int basis) {
  const Matrix m = basis_observable(basis);
  const DensityMatrix rho = DensityMatrix::from_pure(pair_state(server));
  const double corr = (kron(m, m) * rho.entries()).trace().real();
  double p = basis == kComputationalBasis ? (1.0 + corr) / 2.0 : (1.0 - corr) / 2.0;
  if (server.kind == ServerKind::bitflip) p = p * (1.0 - server.parameter) + (1.0 - p) * server.parameter;
  return std::clamp(p, 0.0, 1.0);
}

PrepOutcome run_stage1(const PrepConfig& cfg, Rng& rng, double eta) {
  if (cfg.M == 0 || cfg.T <= cfg.M) throw std::invalid_argument("run_stage1: need 0 < M < T");
  const SoundnessBound sb = soundness_bound(eta, cfg.lambda);

  Rng select_rng = rng.fork(0);
  Rng verifier_rng = rng.fork(1);
  Rng server_rng = rng.fork(2);

  PrepOutcome out;
  out.eta = eta;
  out.bound = sb.bound;
  out.server_deviated = cfg.server.deviates();

  std::vector<std::size_t> ids(cfg.T);
  for (std::size_t i = 0; i < cfg.T; ++i) ids[i] = i;
  select_rng.shuffle(ids);
  std::vector<char> is_kept(cfg.T, 0);
  for (std::size_t i = 0; i < cfg.M; ++i) is_kept[ids[i]] = 1;

  const DensityMatrix pair = DensityMatrix::from_pure(pair_state(cfg.server));
  for (std::size_t q = 0; q < cfg.T; ++q) {
    const int basis = static_cast<int>(verifier_rng.below(kBasisCount));
    const Matrix m = basis_observable(basis);
    const MeasurementResult v = measure(pair, Observable(m, 0), verifier_rng);
    if (is_kept[q]) {
      KeptQubit k;
      k.qubit = q;
      k.basis = basis;
      k.flip = basis == kComputationalBasis ? (v.outcome == 1 ? 1 : 0) : (v.outcome == -1 ? 1 : 0);
      const DensityMatrix server_half = partial_trace(v.post_state, {1});
      const double f = fidelity_with_pure(server_half, steered_target(basis, v.outcome));
      k.fidelity = f * f;
      out.kept.push_back(k);
      continue;
    }
    int s = measure(v.post_state, Observable(m, 1), server_rng).outcome;
    if (cfg.server.kind == ServerKind::bitflip && server_rng.bernoulli(cfg.server.parameter)) s = -s;
    TestRecord t{q, basis, v.outcome, s, !outcomes_consistent(basis, v.outcome, s)};
    out.mismatches += t.mismatch;
    out.tests.push_back(t);
  }
  out.tested = out.tests.size();
  out.aborted = out.mismatches > 0;
  if (out.aborted) out.kept.clear();
  return out;
}

std::string to_string(Stage2Result r) {
  switch (r) {
    case Stage2Result::accept_correct:
      return "accept_correct";
    case Stage2Result::accept_incorrect:
      return "accept_incorrect";
    case Stage2Result::reject:
      return "reject";
  }
  return "reject";
}

Stage2Result stage2_oracle(const PrepOutcome& prepared, double eta, Rng& rng) {
  if (prepared.aborted) throw std::logic_error("stage2_oracle: preparation was aborted");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("stage2_oracle: eta must lie in [0, 1]");
  if (!prepared.server_deviated) return Stage2Result::accept_correct;
  return rng.bernoulli(eta) ? Stage2Result::accept_incorrect : Stage2Result::reject;
}

}  // namespace steercert::vdqcprep
