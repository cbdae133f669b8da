// fluxonium.hpp — single-fluxonium Hamiltonian, spectrum, and matrix elements

#pragma once

#include "fluxpair/operators.hpp"

#include <complex>

namespace fluxpair {

// Energies in GHz (E/h convention throughout).
struct FluxoniumParams {
    double e_j = 0.0;
    double e_c = 0.0;
    double e_l = 0.0;
    char label = 'A';
};

struct EigenSolution {
    Eigen::VectorXd energies;  // ascending, GHz
    Eigen::MatrixXcd states;   // one column per level, phase-fixed
    BasisConfig basis;
    double phi_ext = 0.0;
};

// H/h = 4 E_C n^2 + (1/2) E_L phi^2 - E_J cos(phi - phi_ext) in the harmonic
// basis of (E_C, E_L). The E_J = 0 harmonic limit is refused unless explicitly
// allowed (it is only meaningful as a test limit).
OperatorMatrix build_fluxonium_h(const FluxoniumParams& p, double phi_ext, int dim,
                                 bool allow_zero_ej = false);

// k lowest eigenpairs of a Hermitian matrix. Columns are phase-fixed so the
// largest-magnitude component is real and positive. Real-symmetric input is
// detected and solved in real arithmetic.
EigenSolution eigensolve(const OperatorMatrix& h, int k);

EigenSolution solve_fluxonium(const FluxoniumParams& p, double phi_ext, int dim, int k,
                              bool allow_zero_ej = false);

std::complex<double> matrix_element(const EigenSolution& sol, const OperatorMatrix& op,
                                    int i, int j);

// f12 - f01 in GHz; requires at least three levels.
double anharmonicity(const EigenSolution& sol);

} // namespace fluxpair
