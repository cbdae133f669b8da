// support.hpp — shared test fixtures: reference device parameters and a
// consistent raw-circuit realization of them

#pragma once

#include "fluxpair/coupled.hpp"
#include "fluxpair/reduction.hpp"

#include <cmath>
#include <cstdint>

namespace fluxpair::testing {

// Published parameter set of the reference device (GHz).
inline SystemParams reference_device() {
    SystemParams p;
    p.qubit_a = {5.59, 0.98, 0.76, 'A'};
    p.qubit_b = {6.27, 0.99, 1.16, 'B'};
    p.j_c = -0.038;
    p.j_l = 0.004;
    p.g_a = 0.18;
    p.g_b = -0.21;
    p.f_lc = 3.22;
    return p;
}

// Circuit element values (fF, nH, GHz) that reproduce the reference device
// parameters through the exact numeric reduction.  The capacitor network is
// underdetermined by the six targets; this is one positive solution.
inline CircuitSpec reference_circuit() {
    CircuitSpec c;
    c.l_a = 107.540469;
    c.l_b = 70.457549;
    c.l_m = 0.741658;
    c.c_a = 12.912557;
    c.c_b = 12.729942;
    c.c_1 = 7.032796;
    c.c_2 = 6.847959;
    c.c_3 = 8.140500;
    c.c_4 = 1.714740;
    c.c_ga = 7.426552;
    c.c_gb = 8.123364;
    c.e_ja = 5.59;
    c.e_jb = 6.27;
    return c;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Portable uniform draw from raw engine output, so seeded test circuits do not
// depend on the standard library's distribution implementation.
template <class Engine>
double uniform(Engine& eng, double lo, double hi) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

template <class Engine>
double log_uniform(Engine& eng, double lo_exp10, double hi_exp10) {
    return std::pow(10.0, uniform(eng, lo_exp10, hi_exp10));
}

// Random physically sensible circuit with L_M/min(L_A, L_B) drawn log-uniform
// between the given decade exponents.
template <class Engine>
CircuitSpec random_circuit(Engine& eng, double lm_exp_lo, double lm_exp_hi) {
    CircuitSpec c;
    c.l_a = log_uniform(eng, 1.5, 2.5);
    c.l_b = log_uniform(eng, 1.5, 2.5);
    c.l_m = log_uniform(eng, lm_exp_lo, lm_exp_hi) * std::min(c.l_a, c.l_b);
    c.c_a = log_uniform(eng, 0.5, 1.5);
    c.c_b = log_uniform(eng, 0.5, 1.5);
    c.c_1 = log_uniform(eng, -1.0, 1.0);
    c.c_2 = log_uniform(eng, -1.0, 1.0);
    c.c_3 = log_uniform(eng, -1.0, 1.0);
    c.c_4 = log_uniform(eng, -1.0, 1.0);
    c.c_ga = log_uniform(eng, 0.3, 1.0);
    c.c_gb = log_uniform(eng, 0.3, 1.0);
    c.e_ja = 5.0;
    c.e_jb = 6.0;
    return c;
}

// Largest relative disagreement across every reduced quantity the two
// reduction routes both produce.
inline double worst_field_deviation(const ReducedParams& a, const ReducedParams& b) {
    double worst = 0.0;
    for (auto [x, y] : {std::pair{a.c_a_eff, b.c_a_eff},
                        {a.c_b_eff, b.c_b_eff},
                        {a.c_lc, b.c_lc},
                        {a.l_lc, b.l_lc},
                        {a.j_c_coeff, b.j_c_coeff},
                        {a.g_a_coeff, b.g_a_coeff},
                        {a.g_b_coeff, b.g_b_coeff},
                        {a.j_l, b.j_l},
                        {a.system.qubit_a.e_l, b.system.qubit_a.e_l},
                        {a.system.qubit_b.e_l, b.system.qubit_b.e_l},
                        {a.system.f_lc, b.system.f_lc}})
        worst = std::max(worst, rel_diff(x, y));
    return worst;
}

} // namespace fluxpair::testing
