// reduction.hpp — raw circuit elements -> Hamiltonian parameters, two independent routes

#pragma once

#include "fluxpair/coupled.hpp"

#include <vector>

namespace fluxpair {

// Raw circuit element values: inductances in nH, capacitances in fF,
// junction energies in GHz.
struct CircuitSpec {
    double l_a = 0.0, l_b = 0.0, l_m = 0.0;
    double c_a = 0.0, c_b = 0.0;
    double c_1 = 0.0, c_2 = 0.0, c_3 = 0.0, c_4 = 0.0;
    double c_ga = 0.0, c_gb = 0.0;
    double e_ja = 0.0, e_jb = 0.0;
};

// Reduced mode-level quantities plus the assembled SystemParams.
// The charge-coupling coefficients are the rational expressions multiplying
// q_i q_j / 4e^2, i.e. inverse-capacitance-matrix entries in 1/fF.
struct ReducedParams {
    double c_a_eff = 0.0, c_b_eff = 0.0, c_lc = 0.0;  // fF
    double l_lc = 0.0;                                 // nH, 2(L_A + L_B)
    double j_c_coeff = 0.0, g_a_coeff = 0.0, g_b_coeff = 0.0;  // 1/fF
    double j_l = 0.0;                                  // GHz
    bool lm_regime_warning = false;  // L_M not small against L_A, L_B
    SystemParams system;
};

// Closed-form route: the explicit rational expressions for C_A, C_B, C_LC,
// J_C, g_A, g_B (all sharing one denominator) plus the leading-order
// J_L = (hbar/2e)^2 L_M / ((2L_A)(2L_B)) and L_LC = 2(L_A + L_B).
ReducedParams reduce_closed_form(const CircuitSpec& c);

// Independent numerical route: assemble the full quadratic forms in the mode
// coordinates (phi_A, phi_B, phi_LC, phi_S), Legendre-transform by inverting
// the capacitance matrix, and eliminate the internal inductor nodes exactly
// by Schur complement. No small-L_M approximation.
ReducedParams reduce_numeric(const CircuitSpec& c);

// f_LC = 1/(2 pi sqrt(L_LC * C_LC)) in GHz from nH and fF.
double lc_mode_frequency(const ReducedParams& r);

// The exact quadratic forms behind reduce_numeric, exposed for the direct
// three-mode diagonalization: inverse capacitance matrix (1/fF) and inductive
// potential matrix (1/nH), both 3x3 over (A, B, LC).
struct CircuitForms {
    Eigen::Matrix3d cap_inverse;
    Eigen::Matrix3d inductive;
};

CircuitForms exact_circuit_forms(const CircuitSpec& c);

// Same circuit solved two ways: directly in the three-mode product basis from
// the exact quadratic forms, and through the reduced SystemParams pipeline.
// Ground-referenced transition lists are compared elementwise.
struct RoundtripReport {
    std::vector<double> direct_ghz;
    std::vector<double> reduced_ghz;
    std::vector<double> diff_ghz;
    double computational_max_diff_ghz = 0.0;  // first three transitions
    double max_diff_ghz = 0.0;
};

RoundtripReport roundtrip_spectrum_check(const CircuitSpec& c, double phi_ext,
                                         int direct_fluxonium_dim = 22,
                                         int direct_lc_dim = 6, int n_transitions = 6);

} // namespace fluxpair
