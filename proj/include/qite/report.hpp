// Copyright 2026 The qite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "qite/combopt.hpp"
#include "qite/ite_exact.hpp"
#include "qite/spectral.hpp"
#include "qite/state.hpp"
#include "qite/varqite.hpp"

namespace qite {

using Json = nlohmann::ordered_json;

/// CSV with a leading `# <comment>` line, then
/// `t,energy,fidelity,grad_norm_sq,fidelity_bound,norm_log` and one row per
/// sample. Values are printed with 17 significant digits.
void write_trace_csv(std::ostream& out, const EvolutionTrace& trace,
                     const std::string& comment);

/// Header fields and the final sample of a trace.
Json trace_summary(const EvolutionTrace& trace);

/// Q, mu, gap and ground energy.
Json spectrum_summary(const Spectrum& spec);

/// {bitstring: count}.
Json to_json(const SampleCounts& counts);

Json to_json(const CompiledEvolution& compiled);

Json to_json(const SuccessReport& report);

}  // namespace qite
