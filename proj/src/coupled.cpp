// coupled.cpp — coupled-system assembly and adiabatic labeling

#include "fluxpair/coupled.hpp"

#include "fluxpair/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fluxpair {

namespace {

std::string label_text(const StateLabel& s) {
    return std::to_string(s.k) + std::to_string(s.l) + std::to_string(s.m);
}

void validate(const SystemParams& p) {
    if (p.f_lc <= 0.0)
        throw std::invalid_argument("build_coupled_h: f_lc must be positive");
    if (p.j_l < 0.0)
        throw std::invalid_argument("build_coupled_h: J_L must be non-negative");
    const auto& t = p.trunc;
    if (t.fluxonium_keep < 2 || t.lc_fock_dim < 2)
        throw std::invalid_argument("build_coupled_h: keep and lc_fock_dim must be at least 2");
    if (t.fluxonium_keep > t.fluxonium_basis_dim)
        throw std::invalid_argument("build_coupled_h: keep exceeds basis dimension");
}

} // namespace

CoupledModel build_coupled_h(const SystemParams& p, double phi_ext) {
    validate(p);
    const auto& t = p.trunc;

    // Stage 1: bare qubits in their own harmonic bases.
    struct Bare {
        Eigen::VectorXd e;
        OperatorMatrix n, phi;
    };
    auto stage1 = [&](const FluxoniumParams& q) {
        const BasisConfig basis = oscillator_basis(q.e_c, q.e_l, t.fluxonium_basis_dim);
        EigenSolution sol = solve_fluxonium(q, phi_ext, t.fluxonium_basis_dim, t.fluxonium_keep);
        const auto& v = sol.states;
        Bare b;
        b.e = sol.energies.array() - sol.energies[0];
        b.n = v.adjoint() * charge_operator(basis) * v;
        b.phi = v.adjoint() * phase_operator(basis) * v;
        return b;
    };
    const Bare a = stage1(p.qubit_a);
    const Bare b = stage1(p.qubit_b);

    // Stage 2: couple on the kept product space.
    const std::array<int, 3> dims{t.fluxonium_keep, t.fluxonium_keep, t.lc_fock_dim};
    const std::span<const int> dspan(dims);
    const OperatorMatrix lc_a = ladder(t.lc_fock_dim);
    const OperatorMatrix drive = lc_a - lc_a.adjoint();

    CoupledModel model;
    model.dims = dims;
    model.bare_a = a.e;
    model.bare_b = b.e;
    model.n_a = embed(a.n, 0, dspan);
    model.n_b = embed(b.n, 1, dspan);

    const OperatorMatrix h_a = embed(a.e.cast<std::complex<double>>().asDiagonal(), 0, dspan);
    const OperatorMatrix h_b = embed(b.e.cast<std::complex<double>>().asDiagonal(), 1, dspan);
    const OperatorMatrix h_lc = embed(p.f_lc * (lc_a.adjoint() * lc_a), 2, dspan);
    const OperatorMatrix phi_a = embed(a.phi, 0, dspan);
    const OperatorMatrix phi_b = embed(b.phi, 1, dspan);
    const OperatorMatrix drive_lc = embed(drive, 2, dspan);

    model.h = h_a + h_b + h_lc + p.j_c * (model.n_a * model.n_b) +
              p.j_l * (phi_a * phi_b) -
              std::complex<double>(0.0, 1.0) *
                  (p.g_a * (model.n_a * drive_lc) + p.g_b * (model.n_b * drive_lc));
    return model;
}

LabeledSpectrum label_states(const Eigen::VectorXd& energies, const Eigen::MatrixXcd& states,
                             const std::array<int, 3>& dims) {
    const Eigen::Index n = states.cols();
    const long expected = static_cast<long>(dims[0]) * dims[1] * dims[2];
    if (states.rows() != expected)
        throw std::invalid_argument("label_states: state dimension does not match dims");
    if (energies.size() != n)
        throw std::invalid_argument("label_states: energy/state count mismatch");

    LabeledSpectrum spectrum;
    spectrum.dims = dims;
    spectrum.entries.reserve(static_cast<std::size_t>(n));

    std::vector<bool> claimed(static_cast<std::size_t>(states.rows()), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        // Highest unclaimed bare weight wins; ties fall to the lower bare index.
        Eigen::Index best = -1;
        double best_w = -1.0;
        for (Eigen::Index i = 0; i < states.rows(); ++i) {
            if (claimed[static_cast<std::size_t>(i)]) continue;
            const double w = std::norm(states(i, j));
            if (w > best_w + 1e-15) { best_w = w; best = i; }
        }
        claimed[static_cast<std::size_t>(best)] = true;

        LabeledState entry;
        const int rem = static_cast<int>(best) % (dims[1] * dims[2]);
        entry.label = StateLabel{static_cast<int>(best) / (dims[1] * dims[2]),
                                 rem / dims[2], rem % dims[2]};
        entry.energy = energies[j];
        entry.overlap = best_w;
        entry.low_overlap = best_w <= 0.5;
        entry.state = states.col(j);
        const std::complex<double> s = states(best, j);
        if (std::abs(s) > 0.0) entry.state *= std::conj(s) / std::abs(s);
        spectrum.entries.push_back(std::move(entry));
    }
    return spectrum;
}

LabeledSpectrum solve_labeled(const SystemParams& p, double phi_ext) {
    CoupledModel model = build_coupled_h(p, phi_ext);
    EigenSolution sol = eigensolve(model.h, static_cast<int>(model.h.rows()));
    LabeledSpectrum spectrum = label_states(sol.energies, sol.states, model.dims);
    spectrum.n_a = std::move(model.n_a);
    spectrum.n_b = std::move(model.n_b);
    return spectrum;
}

const LabeledState* LabeledSpectrum::find(const StateLabel& label) const {
    for (const auto& e : entries)
        if (e.label == label) return &e;
    return nullptr;
}

const LabeledState& LabeledSpectrum::at(const StateLabel& label) const {
    const LabeledState* e = find(label);
    if (!e)
        throw LabelingError("label |" + label_text(label) + "> not present in spectrum");
    return *e;
}

double transition_frequency(const LabeledSpectrum& spectrum, const StateLabel& from,
                            const StateLabel& to) {
    return spectrum.at(to).energy - spectrum.at(from).energy;
}

std::complex<double> two_qubit_matrix_element(const LabeledSpectrum& spectrum, char qubit,
                                              int k, int l, int k2, int l2) {
    if (qubit != 'A' && qubit != 'B')
        throw std::invalid_argument("two_qubit_matrix_element: qubit must be 'A' or 'B'");
    if (spectrum.n_a.rows() == 0)
        throw std::invalid_argument("two_qubit_matrix_element: spectrum lacks charge operators");
    const OperatorMatrix& n_op = (qubit == 'A') ? spectrum.n_a : spectrum.n_b;
    const auto& from = spectrum.at(StateLabel{k, l, 0});
    const auto& to = spectrum.at(StateLabel{k2, l2, 0});
    return from.state.dot(n_op * to.state);
}

} // namespace fluxpair
