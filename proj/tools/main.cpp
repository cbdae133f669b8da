// main.cpp — fluxpair command-line interface

#include "fluxpair/analysis.hpp"
#include "fluxpair/constants.hpp"
#include "fluxpair/errors.hpp"
#include "fluxpair/fitter.hpp"
#include "fluxpair/io.hpp"
#include "fluxpair/reduction.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <complex>
#include <iostream>
#include <string>
#include <vector>

namespace {

using fluxpair::io::json;

constexpr const char* param_names[fluxpair::n_fit_params] = {
    "e_j_a", "e_c_a", "e_l_a", "e_j_b", "e_c_b", "e_l_b",
    "j_c",   "j_l",   "g_a",   "g_b",   "f_lc"};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(n - 1));
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        fluxpair::io::write_text(path, content);
}

std::vector<fluxpair::TransitionRequest> parse_transitions(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("no transitions requested");
    std::vector<fluxpair::TransitionRequest> requests;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(',', start);
        const std::string item = text.substr(start, end == std::string::npos ? end : end - start);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("transition '" + item + "' is not of the form from:to");
        requests.push_back({fluxpair::io::parse_label(item.substr(0, colon)),
                            fluxpair::io::parse_label(item.substr(colon + 1))});
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return requests;
}

int cmd_spectrum(const std::string& params_path, double phi_min, double phi_max, int points,
                 const std::string& transitions, const std::string& output) {
    if (points < 1) throw std::invalid_argument("grid must have at least one point");
    const fluxpair::SystemParams p =
        fluxpair::io::params_from_json(fluxpair::io::load_json(params_path));
    const auto requests = parse_transitions(transitions);
    const auto grid = linspace(phi_min, phi_max, points);
    const fluxpair::TransitionTable table = fluxpair::flux_sweep(p, grid, requests);
    emit(output, fluxpair::io::transition_table_csv(table));
    for (const auto& failure : table.failures)
        std::cerr << "spectrum: phi_ext=" << failure.phi_ext << ": " << failure.message << "\n";
    return table.failures.empty() ? 0 : 2;
}

int cmd_metrics(const std::string& params_path, double phi_ext, bool pure_inductive,
                const std::string& output) {
    fluxpair::SystemParams p =
        fluxpair::io::params_from_json(fluxpair::io::load_json(params_path));
    if (pure_inductive) p.j_c = p.g_a = p.g_b = 0.0;

    const fluxpair::LabeledSpectrum spec = fluxpair::solve_labeled(p, phi_ext);
    const auto f = [&](int k0, int l0, int m0, int k1, int l1, int m1) {
        return fluxpair::transition_frequency(spec, {k0, l0, m0}, {k1, l1, m1});
    };
    // Reported values are -i<kl|n|k'l'>; with the sweet-spot phase convention the
    // matrix elements are purely imaginary, so report the imaginary parts.
    const auto elem = [&](char qubit, int k, int l, int k2, int l2) {
        return fluxpair::two_qubit_matrix_element(spec, qubit, k, l, k2, l2).imag();
    };
    const json elements{{"a_0010", elem('A', 0, 0, 1, 0)}, {"a_0111", elem('A', 0, 1, 1, 1)},
                      {"a_0001", elem('A', 0, 0, 0, 1)}, {"a_1011", elem('A', 1, 0, 1, 1)},
                      {"b_0010", elem('B', 0, 0, 1, 0)}, {"b_0111", elem('B', 0, 1, 1, 1)},
                      {"b_0001", elem('B', 0, 0, 0, 1)}, {"b_1011", elem('B', 1, 0, 1, 1)}};

    json out{{"phi_ext", phi_ext},
             {"f01_a", f(0, 0, 0, 1, 0, 0)},
             {"f01_b", f(0, 0, 0, 0, 1, 0)},
             {"f12_a", f(1, 0, 0, 2, 0, 0)},
             {"f12_b", f(0, 1, 0, 0, 2, 0)},
             {"anharmonicity_a", f(1, 0, 0, 2, 0, 0) - f(0, 0, 0, 1, 0, 0)},
             {"anharmonicity_b", f(0, 1, 0, 0, 2, 0) - f(0, 0, 0, 0, 1, 0)},
             {"f_lc_dressed", f(0, 0, 0, 0, 0, 1)},
             {"static_zz_khz", fluxpair::static_zz_khz(spec)},
             {"zx", fluxpair::zx_magnitude(spec)},
             {"charge_matrix_elements", elements}};
    emit(output, out.dump(2) + "\n");
    return 0;
}

int cmd_reduce(const std::string& circuit_path, bool oracle, const std::string& output) {
    const fluxpair::CircuitSpec circuit =
        fluxpair::io::circuit_from_json(fluxpair::io::load_json(circuit_path));
    const fluxpair::ReducedParams closed = fluxpair::reduce_closed_form(circuit);
    json out = fluxpair::io::reduced_to_json(closed);
    if (oracle) {
        const fluxpair::ReducedParams numeric = fluxpair::reduce_numeric(circuit);
        const auto rel = [](double a, double b) {
            const double scale = std::max(std::abs(a), std::abs(b));
            return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        };
        double max_rel = 0.0;
        for (auto [a, b] : {std::pair{closed.c_a_eff, numeric.c_a_eff},
                            {closed.c_b_eff, numeric.c_b_eff},
                            {closed.c_lc, numeric.c_lc},
                            {closed.l_lc, numeric.l_lc},
                            {closed.j_c_coeff, numeric.j_c_coeff},
                            {closed.g_a_coeff, numeric.g_a_coeff},
                            {closed.g_b_coeff, numeric.g_b_coeff},
                            {closed.j_l, numeric.j_l}})
            max_rel = std::max(max_rel, rel(a, b));
        out["oracle"] = {{"numeric", fluxpair::io::reduced_to_json(numeric)},
                         {"max_rel_diff", max_rel}};
    }
    emit(output, out.dump(2) + "\n");
    return 0;
}

int cmd_jl_sweep(const std::string& params_path, const std::vector<double>& jl_values,
                 const std::string& mode, double phi_ext, const std::string& output) {
    if (jl_values.empty()) throw std::invalid_argument("no J_L values requested");
    const fluxpair::SystemParams p =
        fluxpair::io::params_from_json(fluxpair::io::load_json(params_path));
    fluxpair::CouplingMode coupling_mode;
    if (mode == "pure")
        coupling_mode = fluxpair::CouplingMode::pure_inductive;
    else if (mode == "full")
        coupling_mode = fluxpair::CouplingMode::full_capacitive;
    else
        throw std::invalid_argument("mode must be 'pure' or 'full'");
    const auto rows = fluxpair::coupling_sweep(p, jl_values, coupling_mode, phi_ext);
    emit(output, fluxpair::io::coupling_sweep_csv(rows));
    return 0;
}

int cmd_ramsey(double frequency_khz, double decay_us, double t_max_us, int points, double noise,
               std::uint64_t seed, const std::string& trace_output,
               const std::string& fit_output) {
    if (points < 2) throw std::invalid_argument("trace needs at least two points");
    const auto grid = linspace(0.0, t_max_us, points);
    const fluxpair::RamseyTrace trace =
        fluxpair::synthesize_ramsey(frequency_khz, decay_us, grid, noise, seed);
    const fluxpair::SinusoidFit fitted =
        fluxpair::fit_decaying_sinusoid(trace.time_us, trace.signal);
    emit(trace_output, fluxpair::io::ramsey_trace_csv(trace));
    emit(fit_output, fluxpair::io::sinusoid_fit_to_json(fitted).dump(2) + "\n");
    return 0;
}

int cmd_fit(const std::string& observations_path, const std::string& initial_path,
            const std::string& bounds_path, int restarts, std::uint64_t seed, int max_evals,
            const std::string& output) {
    const auto obs =
        fluxpair::io::observations_from_csv(fluxpair::io::read_text(observations_path));
    const fluxpair::SystemParams initial =
        fluxpair::io::params_from_json(fluxpair::io::load_json(initial_path));
    fluxpair::FitOptions options;
    options.restarts = restarts;
    options.seed = seed;
    options.max_evals_per_restart = max_evals;
    if (!bounds_path.empty()) {
        const json j = fluxpair::io::load_json(bounds_path);
        for (int i = 0; i < fluxpair::n_fit_params; ++i) {
            if (j.contains("lo") && j.at("lo").contains(param_names[i]))
                options.bounds.lo[i] = j.at("lo").at(param_names[i]).get<double>();
            if (j.contains("hi") && j.at("hi").contains(param_names[i]))
                options.bounds.hi[i] = j.at("hi").at(param_names[i]).get<double>();
            if (j.contains("frozen"))
                for (const auto& name : j.at("frozen"))
                    if (name.get<std::string>() == param_names[i]) options.frozen[i] = true;
        }
    }
    const fluxpair::FitResult result = fluxpair::fit(obs, initial, options);
    emit(output, fluxpair::io::fit_result_to_json(result).dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-fluxonium spectrum, coupling-metric, and fitting toolkit"};
    app.require_subcommand(1);

    std::string params_path, circuit_path, output, transitions = "000:100,000:010";
    std::string observations_path, initial_path, bounds_path, fit_output, mode = "pure";
    double phi_min = 2.4, phi_max = 3.9, phi_ext = fluxpair::constants::pi;
    double frequency_khz = 2.0, decay_us = 100.0, t_max_us = 500.0, noise = 0.0;
    int points = 151, restarts = 5, max_evals = 2500;
    std::uint64_t seed = 0;
    std::vector<double> jl_values;
    bool oracle = false, pure_inductive = false;

    auto* spectrum = app.add_subcommand("spectrum", "Transition frequencies over a flux sweep");
    spectrum->add_option("--params", params_path, "system parameters JSON")->required();
    spectrum->add_option("--phi-min", phi_min, "sweep start, radians");
    spectrum->add_option("--phi-max", phi_max, "sweep end, radians");
    spectrum->add_option("--points", points, "grid size");
    spectrum->add_option("--transitions", transitions, "comma list of from:to labels");
    spectrum->add_option("-o,--output", output, "CSV path, '-' for stdout");

    auto* metrics = app.add_subcommand("metrics", "Single-flux frequencies and coupling metrics");
    metrics->add_option("--params", params_path, "system parameters JSON")->required();
    metrics->add_option("--phi", phi_ext, "flux bias, radians");
    metrics->add_flag("--pure-inductive", pure_inductive, "zero J_C, g_A, g_B first");
    metrics->add_option("-o,--output", output, "JSON path, '-' for stdout");

    auto* reduce = app.add_subcommand("reduce", "Circuit elements to Hamiltonian parameters");
    reduce->add_option("--circuit", circuit_path, "circuit elements JSON")->required();
    reduce->add_flag("--oracle", oracle, "also run the numeric route and report the diff");
    reduce->add_option("-o,--output", output, "JSON path, '-' for stdout");

    auto* jl_sweep = app.add_subcommand("jl-sweep", "ZX and ZZ metrics over J_L values");
    jl_sweep->add_option("--params", params_path, "system parameters JSON")->required();
    jl_sweep->add_option("--jl-ghz", jl_values, "J_L values in GHz")->required();
    jl_sweep->add_option("--mode", mode, "'pure' (inductive only) or 'full'");
    jl_sweep->add_option("--phi", phi_ext, "flux bias, radians");
    jl_sweep->add_option("-o,--output", output, "CSV path, '-' for stdout");

    auto* ramsey = app.add_subcommand("ramsey", "Synthesize and fit a decaying fringe");
    ramsey->add_option("--frequency-khz", frequency_khz, "fringe frequency");
    ramsey->add_option("--decay-us", decay_us, "decay constant");
    ramsey->add_option("--t-max-us", t_max_us, "trace length");
    ramsey->add_option("--points", points, "trace samples");
    ramsey->add_option("--noise", noise, "Gaussian noise amplitude");
    ramsey->add_option("--seed", seed, "noise seed");
    ramsey->add_option("-o,--output", output, "trace CSV path, '-' for stdout");
    ramsey->add_option("--fit-output", fit_output, "fit JSON path, '-' for stdout");

    auto* fit_cmd = app.add_subcommand("fit", "Recover parameters from observations");
    fit_cmd->add_option("--observations", observations_path, "observations CSV")->required();
    fit_cmd->add_option("--initial", initial_path, "starting parameters JSON")->required();
    fit_cmd->add_option("--bounds", bounds_path, "bounds/frozen JSON");
    fit_cmd->add_option("--restarts", restarts, "simplex restarts");
    fit_cmd->add_option("--seed", seed, "restart seed");
    fit_cmd->add_option("--max-evals", max_evals, "objective evaluations per restart");
    fit_cmd->add_option("-o,--output", output, "result JSON path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed())
            return cmd_spectrum(params_path, phi_min, phi_max, points, transitions, output);
        if (metrics->parsed()) return cmd_metrics(params_path, phi_ext, pure_inductive, output);
        if (reduce->parsed()) return cmd_reduce(circuit_path, oracle, output);
        if (jl_sweep->parsed()) return cmd_jl_sweep(params_path, jl_values, mode, phi_ext, output);
        if (ramsey->parsed())
            return cmd_ramsey(frequency_khz, decay_us, t_max_us, points, noise, seed, output,
                              fit_output);
        if (fit_cmd->parsed())
            return cmd_fit(observations_path, initial_path, bounds_path, restarts, seed,
                           max_evals, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
