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

// JSON views of every report. Keys are emitted in insertion order and every
// floating-point value is written with 17 significant digits, so identical
// runs give byte-identical documents.

#ifndef STEERCERT_REPORT_JSON_HPP
#define STEERCERT_REPORT_JSON_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "steercert/rigidity.hpp"
#include "steercert/selftest.hpp"
#include "steercert/steerability.hpp"
#include "steercert/steergame.hpp"
#include "steercert/vdqcprep.hpp"

namespace steercert::report {

using Json = nlohmann::ordered_json;

/// Serialises with `indent` spaces (negative: compact). Non-finite numbers
/// become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const selftest::CertificationReport& r);
Json to_json(const selftest::SweepSummary& s);
Json to_json(const steergame::CountReport& r);
Json to_json(const steergame::GameTranscript& t);
Json to_json(const steergame::SampledRoundReport& r);
Json to_json(const steergame::AzumaExperiment& e);
Json to_json(const rigidity::StructureReport& r);
Json to_json(const rigidity::RoundSample& s);
Json to_json(const steerability::SteerabilityVerdict& v);

/// What the server may see: pair count, kept pair ids, instructed test bases
/// and its own reports. No verifier outcomes and no kept-pair bases or flips.
Json server_visible_view(const vdqcprep::PrepConfig& cfg, const vdqcprep::PrepOutcome& out);
/// Everything, secrets included.
Json audit_view(const vdqcprep::PrepConfig& cfg, const vdqcprep::PrepOutcome& out);

}  // namespace steercert::report

#endif  // STEERCERT_REPORT_JSON_HPP
