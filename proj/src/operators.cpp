// operators.cpp — harmonic-basis operator construction

#include "fluxpair/operators.hpp"

#include "fluxpair/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fluxpair {

BasisConfig oscillator_basis(double e_c, double e_l, int dim) {
    if (e_c <= 0.0 || e_l <= 0.0)
        throw std::invalid_argument("oscillator_basis: E_C and E_L must be positive");
    if (dim < 2)
        throw std::invalid_argument("oscillator_basis: dim must be at least 2");
    const double ratio = std::pow(8.0 * e_c / e_l, 0.25);
    return BasisConfig{dim, ratio / std::sqrt(2.0), 1.0 / (ratio * std::sqrt(2.0))};
}

OperatorMatrix ladder(int dim) {
    if (dim < 1) throw std::invalid_argument("ladder: dim must be positive");
    OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

OperatorMatrix identity(int dim) {
    if (dim < 1) throw std::invalid_argument("identity: dim must be positive");
    return OperatorMatrix::Identity(dim, dim);
}

OperatorMatrix phase_operator(const BasisConfig& basis) {
    const OperatorMatrix a = ladder(basis.dim);
    return basis.phi_zpf * (a + a.adjoint());
}

OperatorMatrix charge_operator(const BasisConfig& basis) {
    const OperatorMatrix a = ladder(basis.dim);
    return std::complex<double>(0.0, basis.n_zpf) * (a - a.adjoint());
}

OperatorMatrix cosine_operator(const BasisConfig& basis, double phi_ext) {
    // phi is real symmetric, so work in real arithmetic and complexify at the end.
    const Eigen::MatrixXd phi = phase_operator(basis).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("cosine_operator: eigensolve of phase operator failed");
    const Eigen::VectorXd c = (es.eigenvalues().array() - phi_ext).cos();
    const Eigen::MatrixXd out =
        es.eigenvectors() * c.asDiagonal() * es.eigenvectors().transpose();
    return out.cast<std::complex<double>>();
}

OperatorMatrix tensor(std::span<const OperatorMatrix> factors, long dim_cap) {
    if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
    long total = 1;
    for (const auto& f : factors) {
        if (f.rows() != f.cols() || f.rows() == 0)
            throw std::invalid_argument("tensor: factors must be square and non-empty");
        total *= f.rows();
        if (total > dim_cap)
            throw ResourceLimitError("tensor: product dimension " + std::to_string(total) +
                                     " exceeds cap " + std::to_string(dim_cap));
    }
    OperatorMatrix out = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) {
        const OperatorMatrix& f = factors[k];
        OperatorMatrix next(out.rows() * f.rows(), out.cols() * f.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
        out = std::move(next);
    }
    return out;
}

OperatorMatrix embed(const OperatorMatrix& op, int slot, std::span<const int> dims,
                     long dim_cap) {
    if (slot < 0 || static_cast<std::size_t>(slot) >= dims.size())
        throw std::invalid_argument("embed: slot out of range");
    if (op.rows() != dims[static_cast<std::size_t>(slot)])
        throw std::invalid_argument("embed: operator dimension does not match slot");
    std::vector<OperatorMatrix> factors;
    factors.reserve(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k)
        factors.push_back(static_cast<int>(k) == slot ? op : identity(dims[k]));
    return tensor(factors, dim_cap);
}

bool is_hermitian(const OperatorMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

} // namespace fluxpair
