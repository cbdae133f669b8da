// operators.hpp — harmonic-basis operators (ladder, phase, charge, cosine) and tensor products

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace fluxpair {

using OperatorMatrix = Eigen::MatrixXcd;

// Truncated harmonic-oscillator basis for one mode, with its zero-point amplitudes.
// phi_zpf * n_zpf = 1/2 for any (E_C, E_L), which is what makes [n, phi] = i.
struct BasisConfig {
    int dim = 0;
    double phi_zpf = 0.0;
    double n_zpf = 0.0;
};

// Basis sized for a mode with charging energy e_c and inductive energy e_l (GHz).
BasisConfig oscillator_basis(double e_c, double e_l, int dim);

// Annihilation operator a, a|n> = sqrt(n)|n-1>.
OperatorMatrix ladder(int dim);

OperatorMatrix identity(int dim);

// phi = phi_zpf (a + a^dag); real symmetric tridiagonal.
OperatorMatrix phase_operator(const BasisConfig& basis);

// n = i n_zpf (a - a^dag); purely imaginary antisymmetric.
OperatorMatrix charge_operator(const BasisConfig& basis);

// cos(phi - phi_ext) evaluated spectrally: diagonalize phi, apply cos to the
// eigenvalues, rotate back. Exact for the truncated phi, and stays real
// symmetric at every flux.
OperatorMatrix cosine_operator(const BasisConfig& basis, double phi_ext);

inline constexpr long product_dim_cap = 1L << 14;

// Kronecker product of all factors, left to right (slot order A, B, LC).
OperatorMatrix tensor(std::span<const OperatorMatrix> factors, long dim_cap = product_dim_cap);

// op acting on one slot of a product space, identity on the others.
OperatorMatrix embed(const OperatorMatrix& op, int slot, std::span<const int> dims,
                     long dim_cap = product_dim_cap);

bool is_hermitian(const OperatorMatrix& m, double tol = 1e-10);

} // namespace fluxpair
