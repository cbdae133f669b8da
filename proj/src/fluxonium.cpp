// fluxonium.cpp — fluxonium diagonalization in the harmonic basis

#include "fluxpair/fluxonium.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace fluxpair {

namespace {

// Rotate each column's global phase so its largest-magnitude entry is real
// positive; ties in magnitude resolve to the lowest index. Keeps matrix
// elements reproducible across solver backends.
void phase_fix_columns(Eigen::MatrixXcd& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            const double mag = std::abs(v(i, j));
            if (mag > best + 1e-14) { best = mag; imax = i; }
        }
        const std::complex<double> s = v(imax, j);
        if (std::abs(s) > 0.0) v.col(j) *= std::conj(s) / std::abs(s);
    }
}

} // namespace

OperatorMatrix build_fluxonium_h(const FluxoniumParams& p, double phi_ext, int dim,
                                 bool allow_zero_ej) {
    if (p.e_c <= 0.0 || p.e_l <= 0.0)
        throw std::invalid_argument("build_fluxonium_h: E_C and E_L must be positive");
    if (p.e_j < 0.0 || (p.e_j == 0.0 && !allow_zero_ej))
        throw std::invalid_argument("build_fluxonium_h: E_J must be positive");
    const BasisConfig basis = oscillator_basis(p.e_c, p.e_l, dim);
    const OperatorMatrix n = charge_operator(basis);
    const OperatorMatrix phi = phase_operator(basis);
    OperatorMatrix h = 4.0 * p.e_c * (n * n) + 0.5 * p.e_l * (phi * phi);
    if (p.e_j != 0.0) h -= p.e_j * cosine_operator(basis, phi_ext);
    return h;
}

EigenSolution eigensolve(const OperatorMatrix& h, int k) {
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("eigensolve: matrix is not Hermitian");
    if (k < 1 || k > h.rows())
        throw std::invalid_argument("eigensolve: level count out of range");

    EigenSolution sol;
    const bool real_case = h.imag().cwiseAbs().maxCoeff() <= 1e-12;
    if (real_case) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolve: real solver did not converge");
        sol.energies = es.eigenvalues().head(k);
        sol.states = es.eigenvectors().leftCols(k).cast<std::complex<double>>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolve: complex solver did not converge");
        sol.energies = es.eigenvalues().head(k);
        sol.states = es.eigenvectors().leftCols(k);
    }
    phase_fix_columns(sol.states);
    return sol;
}

EigenSolution solve_fluxonium(const FluxoniumParams& p, double phi_ext, int dim, int k,
                              bool allow_zero_ej) {
    EigenSolution sol = eigensolve(build_fluxonium_h(p, phi_ext, dim, allow_zero_ej), k);
    sol.basis = oscillator_basis(p.e_c, p.e_l, dim);
    sol.phi_ext = phi_ext;
    return sol;
}

std::complex<double> matrix_element(const EigenSolution& sol, const OperatorMatrix& op,
                                    int i, int j) {
    if (i < 0 || j < 0 || i >= sol.states.cols() || j >= sol.states.cols())
        throw std::invalid_argument("matrix_element: level index out of range");
    if (op.rows() != sol.states.rows())
        throw std::invalid_argument("matrix_element: operator dimension mismatch");
    return sol.states.col(i).dot(op * sol.states.col(j));
}

double anharmonicity(const EigenSolution& sol) {
    if (sol.energies.size() < 3)
        throw std::invalid_argument("anharmonicity: needs at least three levels");
    return (sol.energies[2] - sol.energies[1]) - (sol.energies[1] - sol.energies[0]);
}

} // namespace fluxpair
