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

#include "qite/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qite {

namespace {

std::string number(Real v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no NaN; map it to null.
Json finite_or_null(Real v) { return std::isfinite(v) ? Json(v) : Json(); }

Json optional_real(const std::optional<Real>& v) {
  return v ? Json(*v) : Json();
}

}  // namespace

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace,
                     const std::string& comment) {
  out << "# " << comment << '\n';
  out << "t,energy,fidelity,grad_norm_sq,fidelity_bound,norm_log\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << number(trace.times[i]) << ',' << number(trace.energy[i]) << ','
        << number(trace.fidelity[i]) << ',' << number(trace.grad_norm_sq[i])
        << ',' << number(trace.fidelity_bound[i]) << ','
        << number(trace.norm_log[i]) << '\n';
  }
}

Json trace_summary(const EvolutionTrace& trace) {
  Json j;
  j["samples"] = trace.size();
  j["orthogonal_start"] = trace.orthogonal_start;
  j["f0"] = finite_or_null(trace.f0);
  j["gap"] = optional_real(trace.gap);
  j["target_level"] = {trace.target_level_begin, trace.target_level_end};
  const bool have_fidelity =
      trace.size() > 0 && std::isfinite(trace.fidelity.front());
  j["fidelity_bound_ok"] =
      have_fidelity ? Json(trace.fidelity_bound_ok()) : Json();
  if (trace.size() > 0) {
    j["final"] = {{"t", trace.times.back()},
                  {"energy", finite_or_null(trace.energy.back())},
                  {"fidelity", finite_or_null(trace.fidelity.back())},
                  {"fidelity_bound", finite_or_null(trace.fidelity_bound.back())},
                  {"grad_norm_sq", finite_or_null(trace.grad_norm_sq.back())},
                  {"norm_log", finite_or_null(trace.norm_log.back())}};
  }
  return j;
}

Json spectrum_summary(const Spectrum& spec) {
  return {{"Q", spec.qubits},
          {"mu", spec.ground_multiplicity},
          {"gap", optional_real(spec.gap)},
          {"ground_energy", spec.ground_energy()}};
}

Json to_json(const SampleCounts& counts) {
  Json j = Json::object();
  for (const auto& [bits, n] : counts.counts) j[bits] = n;
  return j;
}

Json to_json(const CompiledEvolution& compiled) {
  Json steps = Json::array();
  for (const auto& s : compiled.steps) {
    Json gens = Json::array();
    for (const auto& g : s.circuit.generators()) gens.push_back(g.to_string());
    steps.push_back({{"layer", s.layer},
                     {"term_index", s.term_index},
                     {"generators", gens},
                     {"angles", std::vector<Real>(s.angles.data(),
                                                  s.angles.data() +
                                                      s.angles.size())},
                     {"step_fidelity", s.step_fidelity},
                     {"newton_iters", s.newton_iters},
                     {"sub_steps", s.sub_steps},
                     {"active", s.active},
                     {"pruned", s.pruned}});
  }
  return {{"total_gates", compiled.total_gates}, {"steps", steps}};
}

Json to_json(const SuccessReport& r) {
  return {{"backend", to_string(r.backend)},
          {"seed", r.seed},
          {"t", r.t},
          {"epsilon", r.epsilon},
          {"minima", r.minima},
          {"minimum_value", r.minimum_value},
          {"mu", r.mu},
          {"gap", optional_real(r.gap)},
          {"p_measured", r.p_measured},
          {"p_bound", r.p_bound},
          {"bound_ok", r.bound_ok},
          {"shots", r.shots},
          {"success_prob_shots", r.success_prob_shots},
          {"repeats", r.repeats},
          {"empirical_success", r.empirical_success},
          {"empirical_within_5_sigma", r.empirical_within_5_sigma},
          {"first_sample", to_json(r.first_sample)},
          {"trace", trace_summary(r.trace)}};
}

}  // namespace qite
