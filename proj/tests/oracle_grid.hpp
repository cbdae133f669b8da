// oracle_grid.hpp — independent single-fluxonium reference solver on a dense
// phase grid, used to cross-check the oscillator-basis construction

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fluxpair::testing {

// H/h = 4 E_C n^2 + (1/2) E_L phi^2 - E_J cos(phi - phi_ext) discretized on a
// uniform periodic grid over [-half_width, half_width).  The kinetic matrix is
// the exact plane-wave momentum-squared sum, so convergence is spectral in the
// point count; the box only needs to be wide enough that the eigenstates of
// interest have negligible amplitude at the edges.  Nothing here shares code
// or basis choices with the library under test.
class GridFluxonium {
  public:
    GridFluxonium(double e_j, double e_c, double e_l, double phi_ext, int n_points = 201,
                  double half_width = 14.0) {
        if (n_points < 3 || n_points % 2 == 0)
            throw std::invalid_argument("grid oracle: point count must be odd and >= 3");
        const int n = n_points;
        const int m_max = (n - 1) / 2;
        const double box = 2.0 * half_width;
        const double pi = 3.141592653589793238462643383279502884;

        Eigen::VectorXd phi(n);
        for (int j = 0; j < n; ++j) phi(j) = -half_width + box * j / n;

        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        deriv_ = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double t = 0.0, d = 0.0;
                for (int m = 1; m <= m_max; ++m) {
                    const double k = 2.0 * pi * m / box;
                    const double arg = 2.0 * pi * m * (i - j) / n;
                    t += k * k * std::cos(arg);
                    d -= k * std::sin(arg);
                }
                h(i, j) = 4.0 * e_c * 2.0 * t / n;
                deriv_(i, j) = 2.0 * d / n;
            }
        for (int j = 0; j < n; ++j)
            h(j, j) += 0.5 * e_l * phi(j) * phi(j) - e_j * std::cos(phi(j) - phi_ext);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
        energies_ = solver.eigenvalues();
        states_ = solver.eigenvectors();
        phi_grid_ = phi;
    }

    double transition(int i, int j) const { return energies_(j) - energies_(i); }
    const Eigen::VectorXd& energies() const { return energies_; }

    // |<i| n |j>| with n = i d/dphi; the derivative matrix is real
    // antisymmetric, so the element is purely imaginary for real eigenstates.
    double charge_element_magnitude(int i, int j) const {
        return std::abs(states_.col(i).dot(deriv_ * states_.col(j)));
    }

    double phase_element_magnitude(int i, int j) const {
        return std::abs(states_.col(i).dot(phi_grid_.cwiseProduct(states_.col(j))));
    }

  private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXd states_;
    Eigen::MatrixXd deriv_;
    Eigen::VectorXd phi_grid_;
};

} // namespace fluxpair::testing
