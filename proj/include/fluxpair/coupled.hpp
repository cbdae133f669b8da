// coupled.hpp — two fluxoniums + stray LC mode: Hamiltonian, labeling, matrix elements

#pragma once

#include "fluxpair/fluxonium.hpp"

#include <array>
#include <compare>
#include <vector>

namespace fluxpair {

struct TruncationConfig {
    int fluxonium_basis_dim = 40;  // harmonic basis per qubit for the bare solve
    int fluxonium_keep = 8;        // bare eigenstates kept per qubit
    int lc_fock_dim = 6;           // Fock levels for the LC mode
};

// Full device parameter set, all couplings in GHz.
struct SystemParams {
    FluxoniumParams qubit_a{0.0, 0.0, 0.0, 'A'};
    FluxoniumParams qubit_b{0.0, 0.0, 0.0, 'B'};
    double j_c = 0.0;   // charge-charge coupling
    double j_l = 0.0;   // flux-flux coupling, always >= 0
    double g_a = 0.0;   // qubit A to LC mode
    double g_b = 0.0;   // qubit B to LC mode
    double f_lc = 0.0;  // stray mode frequency
    TruncationConfig trunc{};
};

// Product label |k l m>: qubit A level, qubit B level, LC photon number.
struct StateLabel {
    int k = 0, l = 0, m = 0;
    auto operator<=>(const StateLabel&) const = default;
};

struct LabeledState {
    StateLabel label;
    double energy = 0.0;        // GHz, relative to the bare product ground
    double overlap = 0.0;       // |<bare label|dressed>|^2
    bool low_overlap = false;   // overlap <= 0.5: label is only nominal
    Eigen::VectorXcd state;
};

// Assembled Hamiltonian in the kept bare-product basis, plus the operators and
// bare energies needed downstream.
struct CoupledModel {
    OperatorMatrix h;
    std::array<int, 3> dims{};         // keep_A, keep_B, lc_fock
    OperatorMatrix n_a, n_b;           // qubit charge operators on the product space
    Eigen::VectorXd bare_a, bare_b;    // kept bare energies, ground-referenced
};

struct LabeledSpectrum {
    std::vector<LabeledState> entries;  // ascending energy
    std::array<int, 3> dims{};
    OperatorMatrix n_a, n_b;

    const LabeledState& at(const StateLabel& label) const;   // throws LabelingError
    const LabeledState* find(const StateLabel& label) const; // nullptr when absent
};

// Two-stage construction: solve each fluxonium in its own harmonic basis,
// rotate n and phi into the kept eigenbasis, then couple the two qubits and
// the LC mode on the tensor product:
//   H = H_A + H_B + f_lc a^dag a + J_C n_A n_B + J_L phi_A phi_B
//       - i g_A n_A (a - a^dag) - i g_B n_B (a - a^dag).
CoupledModel build_coupled_h(const SystemParams& p, double phi_ext);

// Greedy adiabatic labeling: walk eigenstates in ascending energy, assign each
// the unclaimed bare product state it overlaps most. Eigenvector phases are
// fixed so the claimed bare component is real positive.
LabeledSpectrum label_states(const Eigen::VectorXd& energies, const Eigen::MatrixXcd& states,
                             const std::array<int, 3>& dims);

// build + eigensolve + label, keeping the charge operators for matrix elements.
LabeledSpectrum solve_labeled(const SystemParams& p, double phi_ext);

// E(to) - E(from), signed, GHz.
double transition_frequency(const LabeledSpectrum& spectrum, const StateLabel& from,
                            const StateLabel& to);

// <k l 0| n_qubit |k' l' 0> between dressed computational-ladder states.
std::complex<double> two_qubit_matrix_element(const LabeledSpectrum& spectrum, char qubit,
                                              int k, int l, int k2, int l2);

} // namespace fluxpair
