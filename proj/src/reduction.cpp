// reduction.cpp — circuit elements to Hamiltonian parameters, closed-form and numeric

#include "fluxpair/reduction.hpp"

#include "fluxpair/constants.hpp"
#include "fluxpair/errors.hpp"
#include "fluxpair/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fluxpair {

namespace {

void validate_circuit(const CircuitSpec& c) {
    if (!(c.l_a > 0.0) || !(c.l_b > 0.0))
        throw std::invalid_argument("reduce: qubit inductances must be positive");
    if (c.l_m < 0.0)
        throw std::invalid_argument("reduce: shared inductance must be non-negative");
    for (double cap : {c.c_a, c.c_b, c.c_1, c.c_2, c.c_3, c.c_4, c.c_ga, c.c_gb})
        if (cap < 0.0 || !std::isfinite(cap))
            throw std::invalid_argument("reduce: capacitances must be finite and non-negative");
    if (!(c.e_ja > 0.0) || !(c.e_jb > 0.0))
        throw std::invalid_argument("reduce: junction energies must be positive");
}

// Mode-level quantities -> SystemParams, shared by both routes.  The charge
// couplings scale as 8 * charging * (inverse-capacitance entry); the coupling
// to the LC mode additionally absorbs that mode's charge zero-point factor so
// the Hamiltonian term reads -i g n (a - a^dag).
ReducedParams assemble(const CircuitSpec& c, double c_a_eff, double c_b_eff, double c_lc,
                       double l_lc, double jc_coeff, double ga_coeff, double gb_coeff,
                       double e_l_a, double e_l_b, double j_l) {
    ReducedParams r;
    r.c_a_eff = c_a_eff;
    r.c_b_eff = c_b_eff;
    r.c_lc = c_lc;
    r.l_lc = l_lc;
    r.j_c_coeff = jc_coeff;
    r.g_a_coeff = ga_coeff;
    r.g_b_coeff = gb_coeff;
    r.j_l = j_l;
    r.lm_regime_warning = c.l_m > 0.1 * std::min(c.l_a, c.l_b);

    const double e_c_lc = constants::charging_ghz_ff / c_lc;
    const double e_l_lc = constants::inductive_ghz_nh / l_lc;
    const double n_zpf_lc = std::pow(e_l_lc / (8.0 * e_c_lc), 0.25) / std::sqrt(2.0);

    r.system.qubit_a = {c.e_ja, constants::charging_ghz_ff / c_a_eff, e_l_a, 'A'};
    r.system.qubit_b = {c.e_jb, constants::charging_ghz_ff / c_b_eff, e_l_b, 'B'};
    r.system.j_c = 8.0 * constants::charging_ghz_ff * jc_coeff;
    r.system.j_l = j_l;
    r.system.g_a = -8.0 * constants::charging_ghz_ff * ga_coeff * n_zpf_lc;
    r.system.g_b = -8.0 * constants::charging_ghz_ff * gb_coeff * n_zpf_lc;
    r.system.f_lc = 1e3 / (2.0 * constants::pi * std::sqrt(l_lc * c_lc));
    return r;
}

Eigen::MatrixXd real_ladder(int dim) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

Eigen::MatrixXd real_cosine(const Eigen::MatrixXd& phi, double phi_ext) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
    return es.eigenvectors() *
           (es.eigenvalues().array() - phi_ext).cos().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

// h += coeff * kron(x, y, z) without forming the product matrix.
void add_kron3(Eigen::MatrixXd& h, double coeff, const Eigen::MatrixXd& x,
               const Eigen::MatrixXd& y, const Eigen::MatrixXd& z) {
    if (coeff == 0.0) return;
    const long dy = y.rows(), dz = z.rows();
    for (long i = 0; i < x.rows(); ++i)
        for (long j = 0; j < x.cols(); ++j) {
            if (x(i, j) == 0.0) continue;
            for (long k = 0; k < dy; ++k)
                for (long l = 0; l < dy; ++l) {
                    if (y(k, l) == 0.0) continue;
                    h.block((i * dy + k) * dz, (j * dy + l) * dz, dz, dz) +=
                        coeff * x(i, j) * y(k, l) * z;
                }
        }
}

} // namespace

ReducedParams reduce_closed_form(const CircuitSpec& c) {
    validate_circuit(c);
    const double ca = c.c_a, cb = c.c_b, c1 = c.c_1, c2 = c.c_2, c3 = c.c_3, c4 = c.c_4;
    const double ga = c.c_ga, gb = c.c_gb;

    const double p = c3 * c4 * ca + c2 * c3 * (c4 + ca) + (c2 + c3) * c4 * cb +
                     (c2 + c3 + c4) * ca * cb + c1 * (c3 + ca) * (c4 + cb) +
                     c1 * c2 * (c3 + c4 + ca + cb);
    const double q = c3 * c4 * ca + c3 * c4 * cb + c3 * ca * cb + c4 * ca * cb +
                     c3 * ca * ga + c3 * cb * ga + ca * cb * ga +
                     c2 * (c3 + cb) * (c4 + ca + ga) + c1 * (c3 + ca) * (c4 + cb + ga) +
                     c1 * c2 * (c3 + c4 + ca + cb + ga);
    const double d = p * ga + q * gb;

    const double den_a = c4 * cb * ga + c3 * (c4 + cb) * ga + c1 * (c2 + c4 + cb) * ga +
                         cb * (c4 + ga) * gb + c3 * (c4 + cb + ga) * gb +
                         c1 * (c2 + c4 + cb + ga) * gb + c2 * (c3 + cb) * (ga + gb);
    const double den_b = (c2 + c3) * c4 * ga + (c2 + c3 + c4) * ca * ga +
                         ca * (c4 + ga) * gb + c2 * (c4 + ca + ga) * gb +
                         c3 * (c4 + ca + ga) * gb + c1 * (c2 + c3 + ca) * (ga + gb);
    const double den_lc =
        ((c3 + c4) * ca + (c3 + c4 + 4.0 * ca) * cb + c1 * (c3 + c4 + ca + cb) +
         c2 * (c3 + c4 + ca + cb)) * ga +
        (c3 * ca + c4 * ca + c3 * cb + c4 * cb + 4.0 * ca * cb + (ca + cb) * ga +
         c1 * (c3 + c4 + ca + cb + ga) + c2 * (c3 + c4 + ca + cb + ga)) * gb;

    if (!(d > 0.0) || !(den_a > 0.0) || !(den_b > 0.0) || !(den_lc > 0.0))
        throw DegenerateCircuitError("reduce_closed_form: capacitance network is degenerate");

    const double jc_coeff = (c3 * ga * gb - (ga + gb) * (c1 * c2 - c3 * c4)) / d;
    const double ga_coeff = (c1 * c4 * ga + (c1 - c3 + c4) * cb * ga +
                             cb * (-c3 + c4 + ga) * gb + c1 * (c4 + cb + ga) * gb -
                             c2 * (c3 + cb) * (ga + gb)) / d;
    const double gb_coeff = (-((c2 * c4 + (c2 - c3 + c4) * ca) * ga) -
                             (ca * (-c3 + c4 + ga) + c2 * (c4 + ca + ga)) * gb +
                             c1 * (c3 + ca) * (ga + gb)) / d;

    return assemble(c, d / den_a, d / den_b, d / den_lc, 2.0 * (c.l_a + c.l_b), jc_coeff,
                    ga_coeff, gb_coeff, constants::inductive_ghz_nh / (2.0 * c.l_a),
                    constants::inductive_ghz_nh / (2.0 * c.l_b),
                    constants::inductive_ghz_nh * c.l_m / (4.0 * c.l_a * c.l_b));
}

CircuitForms exact_circuit_forms(const CircuitSpec& c) {
    validate_circuit(c);

    // Capacitive quadratic form over (phi_A, phi_B, phi_LC, phi_sigma): one
    // rank-one stamp per element, coefficients and weight vectors as the
    // mode-coordinate rewrite of the node network fixes them.
    using V4 = Eigen::Vector4d;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    const std::pair<double, V4> cap_stamps[] = {
        {c.c_a, V4(1, 0, 0, 0)},          {c.c_b, V4(0, 1, 0, 0)},
        {c.c_1 / 4.0, V4(1, 1, -1, 0)},   {c.c_2 / 4.0, V4(1, 1, 1, 0)},
        {c.c_3 / 4.0, V4(1, -1, 1, 0)},   {c.c_4 / 4.0, V4(-1, 1, 1, 0)},
        {c.c_gb / 16.0, V4(0, 2, 1, -1)}, {c.c_ga / 16.0, V4(-2, 0, 1, 1)},
    };
    for (const auto& [coef, v] : cap_stamps) m += coef * v * v.transpose();

    Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
    if (!lu.isInvertible())
        throw DegenerateCircuitError("exact_circuit_forms: capacitance matrix is singular");
    const Eigen::Matrix4d m_inv = lu.inverse();

    // Inductive form over (phi_A, phi_B, phi_LC, phi_sigma) plus two internal
    // nodes that carry no charge and are eliminated by Schur complement.  The
    // internal pair is expressed in its sum/difference combination so that the
    // stiff 1/L_M term lands on a single diagonal entry; in the raw node basis
    // it contaminates every entry of the internal block and the elimination
    // loses ~L/L_M in relative accuracy once L_M is far below L_A, L_B.
    using V6 = Eigen::Matrix<double, 6, 1>;
    Eigen::Matrix<double, 6, 6> b6 = Eigen::Matrix<double, 6, 6>::Zero();
    auto branch = [&b6](double inv_l, const V6& v) { b6 += inv_l * v * v.transpose(); };
    const double s = 1.0 / std::sqrt(2.0);
    branch(1.0 / c.l_a, (V6() << -0.5, 0, 0.25, 0.25, -s, -s).finished());
    branch(1.0 / c.l_a, (V6() << 0.5, 0, 0.25, 0.25, -s, s).finished());
    branch(1.0 / c.l_b, (V6() << 0, 0.5, -0.25, 0.25, -s, -s).finished());
    branch(1.0 / c.l_b, (V6() << 0, -0.5, -0.25, 0.25, -s, s).finished());
    if (c.l_m > 0.0) branch(1.0 / c.l_m, (V6() << 0, 0, 0, 0, 0, 2.0 * s).finished());

    Eigen::Matrix4d b4;
    if (c.l_m > 0.0) {
        const Eigen::Matrix2d internal = b6.bottomRightCorner<2, 2>();
        if (!(internal.determinant() > 0.0))
            throw DegenerateCircuitError(
                "exact_circuit_forms: internal inductive nodes are singular");
        b4 = b6.topLeftCorner<4, 4>() -
             b6.topRightCorner<4, 2>() * internal.inverse() * b6.bottomLeftCorner<2, 4>();
    } else {
        // A zero shared inductance is a short: the difference combination is
        // pinned at zero rather than free, so only the sum coordinate is
        // eliminated.
        if (!(b6(4, 4) > 0.0))
            throw DegenerateCircuitError(
                "exact_circuit_forms: internal inductive nodes are singular");
        b4 = b6.topLeftCorner<4, 4>() -
             b6.block<4, 1>(0, 4) * b6.block<1, 4>(4, 0) / b6(4, 4);
    }

    const double scale = b6.cwiseAbs().maxCoeff();
    if (b4.row(3).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::logic_error("exact_circuit_forms: sigma mode failed to decouple");

    return {m_inv.topLeftCorner<3, 3>(), b4.topLeftCorner<3, 3>()};
}

ReducedParams reduce_numeric(const CircuitSpec& c) {
    const auto [m_inv, b] = exact_circuit_forms(c);
    for (int i = 0; i < 3; ++i)
        if (!(m_inv(i, i) > 0.0) || !(b(i, i) > 0.0))
            throw DegenerateCircuitError("reduce_numeric: a mode lost its kinetic or potential term");
    return assemble(c, 1.0 / m_inv(0, 0), 1.0 / m_inv(1, 1), 1.0 / m_inv(2, 2), 1.0 / b(2, 2),
                    m_inv(0, 1), m_inv(0, 2), m_inv(1, 2),
                    constants::inductive_ghz_nh * b(0, 0), constants::inductive_ghz_nh * b(1, 1),
                    constants::inductive_ghz_nh * b(0, 1));
}

double lc_mode_frequency(const ReducedParams& r) {
    if (!(r.l_lc > 0.0) || !(r.c_lc > 0.0))
        throw std::invalid_argument("lc_mode_frequency: L_LC and C_LC must be positive");
    return 1e3 / (2.0 * constants::pi * std::sqrt(r.l_lc * r.c_lc));
}

RoundtripReport roundtrip_spectrum_check(const CircuitSpec& c, double phi_ext,
                                         int direct_fluxonium_dim, int direct_lc_dim,
                                         int n_transitions) {
    if (direct_fluxonium_dim < 2 || direct_lc_dim < 2)
        throw std::invalid_argument("roundtrip_spectrum_check: mode dimensions must be at least 2");
    const long total = static_cast<long>(direct_fluxonium_dim) * direct_fluxonium_dim * direct_lc_dim;
    if (total > product_dim_cap)
        throw ResourceLimitError("roundtrip_spectrum_check: direct product dimension exceeds cap");
    if (n_transitions < 1 || n_transitions >= total)
        throw std::invalid_argument("roundtrip_spectrum_check: bad transition count");

    const ReducedParams red = reduce_numeric(c);
    const LabeledSpectrum spec = solve_labeled(red.system, phi_ext);

    // Direct route: the exact quadratic forms plus the two junction cosines in
    // a real three-mode product oscillator basis.
    const auto [m_inv, b] = exact_circuit_forms(c);
    const int dims[3] = {direct_fluxonium_dim, direct_fluxonium_dim, direct_lc_dim};
    const double e_j[2] = {c.e_ja, c.e_jb};

    // Real assembly: with n = i nt for real antisymmetric nt, every charge
    // product n_i n_j becomes -nt_i nt_j.
    Eigen::MatrixXd phi[3], nt[3], h_mode[3], ident[3];
    for (int i = 0; i < 3; ++i) {
        const double e_c = constants::charging_ghz_ff * m_inv(i, i);
        const double e_l = constants::inductive_ghz_nh * b(i, i);
        const BasisConfig basis = oscillator_basis(e_c, e_l, dims[i]);
        const Eigen::MatrixXd a = real_ladder(dims[i]);
        phi[i] = basis.phi_zpf * (a + a.transpose());
        nt[i] = basis.n_zpf * (a - a.transpose());
        h_mode[i] = -4.0 * e_c * nt[i] * nt[i] + 0.5 * e_l * phi[i] * phi[i];
        ident[i] = Eigen::MatrixXd::Identity(dims[i], dims[i]);
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(total, total);
    add_kron3(h, 1.0, h_mode[0], ident[1], ident[2]);
    add_kron3(h, 1.0, ident[0], h_mode[1], ident[2]);
    add_kron3(h, 1.0, ident[0], ident[1], h_mode[2]);
    const double chg8 = 8.0 * constants::charging_ghz_ff;
    add_kron3(h, -chg8 * m_inv(0, 1), nt[0], nt[1], ident[2]);
    add_kron3(h, -chg8 * m_inv(0, 2), nt[0], ident[1], nt[2]);
    add_kron3(h, -chg8 * m_inv(1, 2), ident[0], nt[1], nt[2]);
    add_kron3(h, constants::inductive_ghz_nh * b(0, 1), phi[0], phi[1], ident[2]);
    add_kron3(h, constants::inductive_ghz_nh * b(0, 2), phi[0], ident[1], phi[2]);
    add_kron3(h, constants::inductive_ghz_nh * b(1, 2), ident[0], phi[1], phi[2]);
    add_kron3(h, -e_j[0], real_cosine(phi[0], phi_ext), ident[1], ident[2]);
    add_kron3(h, -e_j[1], ident[0], real_cosine(phi[1], phi_ext), ident[2]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd w = es.eigenvalues();

    RoundtripReport report;
    for (int k = 1; k <= n_transitions; ++k) {
        report.direct_ghz.push_back(w(k) - w(0));
        report.reduced_ghz.push_back(spec.entries[static_cast<std::size_t>(k)].energy -
                                     spec.entries[0].energy);
        const double diff = std::abs(report.direct_ghz.back() - report.reduced_ghz.back());
        report.diff_ghz.push_back(diff);
        if (k <= 3) report.computational_max_diff_ghz = std::max(report.computational_max_diff_ghz, diff);
        report.max_diff_ghz = std::max(report.max_diff_ghz, diff);
    }
    return report;
}

} // namespace fluxpair
