// io.cpp — serialization between domain types and JSON/CSV documents

#include "fluxpair/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace fluxpair::io {

namespace {

std::string fmt(double x) {
    std::ostringstream out;
    out << std::setprecision(15) << x;
    return out.str();
}

double require_number(const json& j, const std::string& key, const std::string& doc) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument(doc + ": missing or non-numeric field '" + key + "'");
    return j.at(key).get<double>();
}

int require_int(const json& j, const std::string& key, const std::string& doc) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(doc + ": missing or non-integer field '" + key + "'");
    return j.at(key).get<int>();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument(what + ": not a number: '" + text + "'");
    return v;
}

} // namespace

std::string format_label(const StateLabel& label) {
    if (label.k < 0 || label.l < 0 || label.m < 0)
        throw std::invalid_argument("format_label: negative index");
    std::ostringstream out;
    if (label.k < 10 && label.l < 10 && label.m < 10)
        out << label.k << label.l << label.m;
    else
        out << label.k << "." << label.l << "." << label.m;
    return out.str();
}

StateLabel parse_label(const std::string& text) {
    const auto bad = [&]() {
        return std::invalid_argument("parse_label: bad state label '" + text + "'");
    };
    if (text.find('.') != std::string::npos) {
        const auto parts = split(text, '.');
        if (parts.size() != 3) throw bad();
        StateLabel label;
        int* slots[3] = {&label.k, &label.l, &label.m};
        for (int i = 0; i < 3; ++i) {
            if (parts[i].empty()) throw bad();
            for (char ch : parts[i])
                if (std::isdigit(static_cast<unsigned char>(ch)) == 0) throw bad();
            *slots[i] = std::stoi(parts[i]);
        }
        return label;
    }
    if (text.size() != 3) throw bad();
    for (char ch : text)
        if (std::isdigit(static_cast<unsigned char>(ch)) == 0) throw bad();
    return {text[0] - '0', text[1] - '0', text[2] - '0'};
}

json params_to_json(const SystemParams& p) {
    return json{{"e_j_a", p.qubit_a.e_j}, {"e_c_a", p.qubit_a.e_c}, {"e_l_a", p.qubit_a.e_l},
                {"e_j_b", p.qubit_b.e_j}, {"e_c_b", p.qubit_b.e_c}, {"e_l_b", p.qubit_b.e_l},
                {"j_c", p.j_c},           {"j_l", p.j_l},           {"g_a", p.g_a},
                {"g_b", p.g_b},           {"f_lc", p.f_lc},
                {"trunc",
                 {{"fluxonium_basis_dim", p.trunc.fluxonium_basis_dim},
                  {"fluxonium_keep", p.trunc.fluxonium_keep},
                  {"lc_fock_dim", p.trunc.lc_fock_dim}}}};
}

SystemParams params_from_json(const json& j) {
    const std::string doc = "params";
    SystemParams p;
    p.qubit_a = {require_number(j, "e_j_a", doc), require_number(j, "e_c_a", doc),
                 require_number(j, "e_l_a", doc), 'A'};
    p.qubit_b = {require_number(j, "e_j_b", doc), require_number(j, "e_c_b", doc),
                 require_number(j, "e_l_b", doc), 'B'};
    p.j_c = require_number(j, "j_c", doc);
    p.j_l = require_number(j, "j_l", doc);
    p.g_a = require_number(j, "g_a", doc);
    p.g_b = require_number(j, "g_b", doc);
    p.f_lc = require_number(j, "f_lc", doc);
    if (j.contains("trunc")) {
        const json& t = j.at("trunc");
        p.trunc.fluxonium_basis_dim = require_int(t, "fluxonium_basis_dim", doc + ".trunc");
        p.trunc.fluxonium_keep = require_int(t, "fluxonium_keep", doc + ".trunc");
        p.trunc.lc_fock_dim = require_int(t, "lc_fock_dim", doc + ".trunc");
    }
    return p;
}

json circuit_to_json(const CircuitSpec& c) {
    return json{{"L_A", c.l_a},   {"L_B", c.l_b},   {"L_M", c.l_m},  {"C_a", c.c_a},
                {"C_b", c.c_b},   {"C_1", c.c_1},   {"C_2", c.c_2},  {"C_3", c.c_3},
                {"C_4", c.c_4},   {"C_ga", c.c_ga}, {"C_gb", c.c_gb},
                {"E_JA", c.e_ja}, {"E_JB", c.e_jb}};
}

CircuitSpec circuit_from_json(const json& j) {
    const std::string doc = "circuit";
    CircuitSpec c;
    c.l_a = require_number(j, "L_A", doc);
    c.l_b = require_number(j, "L_B", doc);
    c.l_m = require_number(j, "L_M", doc);
    c.c_a = require_number(j, "C_a", doc);
    c.c_b = require_number(j, "C_b", doc);
    c.c_1 = require_number(j, "C_1", doc);
    c.c_2 = require_number(j, "C_2", doc);
    c.c_3 = require_number(j, "C_3", doc);
    c.c_4 = require_number(j, "C_4", doc);
    c.c_ga = require_number(j, "C_ga", doc);
    c.c_gb = require_number(j, "C_gb", doc);
    c.e_ja = require_number(j, "E_JA", doc);
    c.e_jb = require_number(j, "E_JB", doc);
    return c;
}

json reduced_to_json(const ReducedParams& r) {
    return json{{"c_a_eff", r.c_a_eff},
                {"c_b_eff", r.c_b_eff},
                {"c_lc", r.c_lc},
                {"l_lc", r.l_lc},
                {"j_c_coeff", r.j_c_coeff},
                {"g_a_coeff", r.g_a_coeff},
                {"g_b_coeff", r.g_b_coeff},
                {"j_l", r.j_l},
                {"f_lc", lc_mode_frequency(r)},
                {"lm_regime_warning", r.lm_regime_warning},
                {"system", params_to_json(r.system)}};
}

json fit_result_to_json(const FitResult& r) {
    return json{{"params", params_to_json(r.params)},
                {"residual_rms", r.residual_rms},
                {"residuals", r.residuals},
                {"iterations", r.iterations},
                {"converged", r.converged}};
}

json sinusoid_fit_to_json(const SinusoidFit& f) {
    return json{{"frequency_khz", f.frequency_khz}, {"decay_us", f.decay_us},
                {"amplitude", f.amplitude},         {"phase", f.phase},
                {"offset", f.offset},               {"residual_rms", f.residual_rms},
                {"iterations", f.iterations}};
}

std::string transition_table_csv(const TransitionTable& table) {
    std::ostringstream out;
    out << "phi_ext,from,to,freq_ghz,flag\n";
    for (const auto& row : table.rows)
        out << fmt(row.phi_ext) << "," << format_label(row.from) << "," << format_label(row.to)
            << "," << fmt(row.freq_ghz) << "," << (row.low_overlap ? 1 : 0) << "\n";
    return out.str();
}

std::string observations_csv(const std::vector<Observation>& obs) {
    std::ostringstream out;
    out << "phi_ext,from,to,freq_ghz,weight\n";
    for (const auto& o : obs)
        out << fmt(o.phi_ext) << "," << format_label(o.from) << "," << format_label(o.to) << ","
            << fmt(o.freq_ghz) << "," << fmt(o.weight) << "\n";
    return out.str();
}

std::vector<Observation> observations_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != split("phi_ext,from,to,freq_ghz,weight", ','))
        throw std::invalid_argument("observations: expected header phi_ext,from,to,freq_ghz,weight");
    std::vector<Observation> obs;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        const std::string where = "observations line " + std::to_string(line_no);
        if (fields.size() != 5)
            throw std::invalid_argument(where + ": expected 5 fields, got " +
                                        std::to_string(fields.size()));
        Observation o;
        o.phi_ext = parse_double(fields[0], where);
        o.from = parse_label(fields[1]);
        o.to = parse_label(fields[2]);
        o.freq_ghz = parse_double(fields[3], where);
        o.weight = parse_double(fields[4], where);
        obs.push_back(o);
    }
    return obs;
}

std::string coupling_sweep_csv(const std::vector<CouplingSweepRow>& rows) {
    std::ostringstream out;
    out << "j_l,zx,zz_khz\n";
    for (const auto& row : rows)
        out << fmt(row.j_l) << "," << fmt(row.zx) << "," << fmt(row.zz_khz) << "\n";
    return out.str();
}

std::string ramsey_trace_csv(const RamseyTrace& trace) {
    std::ostringstream out;
    out << "time_us,signal\n";
    for (std::size_t i = 0; i < trace.time_us.size(); ++i)
        out << fmt(trace.time_us[i]) << "," << fmt(trace.signal[i]) << "\n";
    return out.str();
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_json: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("load_json: " + path + ": " + e.what());
    }
    return j;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("read_text: cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("write_text: cannot open " + path);
    out << content;
    if (!out) throw std::runtime_error("write_text: failed writing " + path);
}

} // namespace fluxpair::io
