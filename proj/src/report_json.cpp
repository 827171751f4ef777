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

#include "steercert/report_json.hpp"

#include <cmath>
#include <cstdio>

namespace steercert::report {

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(item.key()).dump();
        out += pretty ? ": " : ":";
        write(item.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += pretty && scalars ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        write(v, indent, depth + 1, out);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json to_json(const selftest::CertificationReport& r) {
  return Json{{"saturation", r.saturation},
              {"epsilon", r.epsilon},
              {"gamma1", r.gamma1},
              {"gamma2", r.gamma2},
              {"paper_bound", r.closeness_bound},
              {"extracted_distance", r.extracted_distance},
              {"bound_holds", r.bound_holds},
              {"gamma2_convention", std::string(selftest::to_string(r.gamma2_convention))},
              {"in_regime", r.in_regime}};
}

Json to_json(const selftest::SweepSummary& s) {
  return Json{{"trials", s.trials},
              {"violations", s.violations},
              {"measured_violations", s.measured_violations},
              {"worst_ratio", s.worst_ratio},
              {"min_saturation", s.min_saturation},
              {"max_distance", s.max_distance}};
}

Json to_json(const steergame::CountReport& r) {
  return Json{{"c", r.c}, {"D", r.D}, {"setting", steergame::to_string(r.setting)}, {"count", r.count}};
}

Json to_json(const steergame::GameTranscript& t) {
  return Json{{"K", t.K},
              {"settings", t.settings},
              {"alice_outcomes", t.alice_outcomes},
              {"bob_outcomes", t.bob_outcomes},
              {"correlations", t.correlations}};
}

Json to_json(const steergame::SampledRoundReport& r) {
  return Json{{"epsilon", r.epsilon},
              {"required_rounds", r.required_rounds},
              {"rounds_played", r.rounds_played},
              {"capped", r.capped},
              {"c0", r.c0},
              {"c1", r.c1},
              {"saturated", r.saturated},
              {"sampled_round", r.sampled_round},
              {"sampled_round_deviates", r.sampled_round_deviates},
              {"trace_distance", r.trace_distance},
              {"reference_scale", r.reference_scale}};
}

Json to_json(const steergame::AzumaExperiment& e) {
  Json cells = Json::array();
  for (const auto& c : e.cells) {
    cells.push_back(Json{{"delta", c.delta}, {"frequency", c.frequency}, {"bound", c.bound},
                         {"holds", c.frequency <= c.bound}});
  }
  return Json{{"q", e.q},
              {"n", e.n},
              {"repetitions", e.repetitions},
              {"true_correlation", e.true_correlation},
              {"cells", cells}};
}

Json to_json(const rigidity::StructureReport& r) {
  return Json{{"per_game_correlations", r.per_game_correlations}, {"epsilon", r.epsilon}, {"structured", r.structured}};
}

Json to_json(const rigidity::RoundSample& s) { return Json{{"settings", s.settings}, {"R", s.R}}; }

Json to_json(const steerability::SteerabilityVerdict& v) {
  return Json{{"rho_b_maximally_mixed", v.rho_b_maximally_mixed},
              {"completely_steerable", v.completely_steerable},
              {"totally_steerable", v.totally_steerable},
              {"purity", v.purity},
              {"schmidt_coefficients", v.schmidt_coefficients},
              {"rho_b_distance", v.rho_b_distance},
              {"factorization_residual", v.factorization_residual}};
}

Json server_visible_view(const vdqcprep::PrepConfig& cfg, const vdqcprep::PrepOutcome& out) {
  Json tests = Json::array();
  for (const auto& t : out.tests) {
    tests.push_back(Json{{"qubit", t.qubit}, {"instructed_basis", t.basis}, {"server_outcome", t.server_outcome}});
  }
  std::vector<std::size_t> kept_ids;
  for (const auto& k : out.kept) kept_ids.push_back(k.qubit);
  return Json{{"pairs", cfg.T}, {"tests", tests}, {"kept_qubits", kept_ids}, {"aborted", out.aborted}};
}

Json audit_view(const vdqcprep::PrepConfig& cfg, const vdqcprep::PrepOutcome& out) {
  Json kept = Json::array();
  for (const auto& k : out.kept) {
    Json item{{"qubit", k.qubit}, {"basis", k.basis}};
    if (k.basis == vdqcprep::kComputationalBasis) {
      item["theta"] = nullptr;
    } else {
      item["theta"] = vdqcprep::basis_angle(k.basis);
    }
    item["flip"] = k.flip;
    item["fidelity"] = k.fidelity;
    kept.push_back(item);
  }
  Json tests = Json::array();
  for (const auto& t : out.tests) {
    tests.push_back(Json{{"qubit", t.qubit},
                         {"basis", t.basis},
                         {"verifier_outcome", t.verifier_outcome},
                         {"server_outcome", t.server_outcome},
                         {"mismatch", t.mismatch}});
  }
  return Json{{"M", cfg.M},
              {"T", cfg.T},
              {"lambda", cfg.lambda},
              {"server", vdqcprep::to_string(cfg.server)},
              {"aborted", out.aborted},
              {"tested", out.tested},
              {"mismatches", out.mismatches},
              {"eta", out.eta},
              {"soundness_bound", out.bound},
              {"server_deviated", out.server_deviated},
              {"kept", kept},
              {"tests", tests}};
}

}  // namespace steercert::report
