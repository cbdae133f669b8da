// io.hpp — JSON and CSV serialization for parameters, circuits, sweeps, and fits

#pragma once

#include "fluxpair/analysis.hpp"
#include "fluxpair/fitter.hpp"
#include "fluxpair/reduction.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace fluxpair::io {

using nlohmann::json;

// State labels render as digit triplets ("100"); indices past 9 fall back to
// a dotted form ("10.0.0"). Both forms parse.
std::string format_label(const StateLabel& label);
StateLabel parse_label(const std::string& text);

json params_to_json(const SystemParams& p);
SystemParams params_from_json(const json& j);

json circuit_to_json(const CircuitSpec& c);
CircuitSpec circuit_from_json(const json& j);

json reduced_to_json(const ReducedParams& r);
json fit_result_to_json(const FitResult& r);
json sinusoid_fit_to_json(const SinusoidFit& f);

std::string transition_table_csv(const TransitionTable& table);
std::string observations_csv(const std::vector<Observation>& obs);
std::vector<Observation> observations_from_csv(const std::string& text);
std::string coupling_sweep_csv(const std::vector<CouplingSweepRow>& rows);
std::string ramsey_trace_csv(const RamseyTrace& trace);

json load_json(const std::string& path);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

} // namespace fluxpair::io
