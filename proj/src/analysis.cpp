// analysis.cpp — spectral sweeps, two-qubit metrics, Ramsey synthesis and fitting

#include "fluxpair/analysis.hpp"

#include "fluxpair/constants.hpp"
#include "fluxpair/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace fluxpair {

namespace {

std::string label_text(const StateLabel& s) {
    return std::to_string(s.k) + std::to_string(s.l) + std::to_string(s.m);
}

} // namespace

TransitionTable flux_sweep(const SystemParams& p, std::span<const double> phi_grid,
                           std::span<const TransitionRequest> requests) {
    if (phi_grid.empty())
        throw std::invalid_argument("flux_sweep: empty flux grid");
    if (requests.empty())
        throw std::invalid_argument("flux_sweep: no transitions requested");

    TransitionTable table;
    for (const double phi : phi_grid) {
        LabeledSpectrum spectrum;
        try {
            spectrum = solve_labeled(p, phi);
        } catch (const std::exception& e) {
            table.failures.push_back({phi, e.what()});
            continue;
        }
        for (const auto& req : requests) {
            const LabeledState* from = spectrum.find(req.from);
            const LabeledState* to = spectrum.find(req.to);
            if (!from || !to) {
                table.failures.push_back(
                    {phi, "label |" + label_text(!from ? req.from : req.to) +
                              "> not present at this flux"});
                continue;
            }
            table.rows.push_back({phi, req.from, req.to, to->energy - from->energy,
                                  from->low_overlap || to->low_overlap});
        }
    }
    return table;
}

double static_zz_khz(const LabeledSpectrum& spectrum) {
    const double f_a0 = transition_frequency(spectrum, {0, 0, 0}, {0, 1, 0});
    const double f_a1 = transition_frequency(spectrum, {1, 0, 0}, {1, 1, 0});
    return (f_a0 - f_a1) * 1e6;
}

double static_zz_khz(const SystemParams& p, double phi_ext) {
    return static_zz_khz(solve_labeled(p, phi_ext));
}

double zz_energy_combination_khz(const LabeledSpectrum& spectrum) {
    const double e00 = spectrum.at({0, 0, 0}).energy;
    const double e01 = spectrum.at({0, 1, 0}).energy;
    const double e10 = spectrum.at({1, 0, 0}).energy;
    const double e11 = spectrum.at({1, 1, 0}).energy;
    return ((e01 - e00) - (e11 - e10)) * 1e6;
}

DriveCoefficients drive_coefficients(const LabeledSpectrum& spectrum, double eps_a,
                                     double eps_b) {
    auto drive_element = [&](int k, int l, int k2, int l2) {
        return eps_a * two_qubit_matrix_element(spectrum, 'A', k, l, k2, l2) +
               eps_b * two_qubit_matrix_element(spectrum, 'B', k, l, k2, l2);
    };
    // i xi = <00|..|10> +/- <01|..|11>  (A row), <00|..|01> +/- <10|..|11>  (B row);
    // dividing by i keeps xi real for the purely imaginary sweet-spot elements.
    const std::complex<double> a0 = drive_element(0, 0, 1, 0);
    const std::complex<double> a1 = drive_element(0, 1, 1, 1);
    const std::complex<double> b0 = drive_element(0, 0, 0, 1);
    const std::complex<double> b1 = drive_element(1, 0, 1, 1);
    return DriveCoefficients{std::imag(a0 + a1), std::imag(a0 - a1),
                             std::imag(b0 + b1), std::imag(b0 - b1)};
}

double zx_magnitude(const LabeledSpectrum& spectrum) {
    const std::complex<double> num = two_qubit_matrix_element(spectrum, 'A', 0, 0, 0, 1) -
                                     two_qubit_matrix_element(spectrum, 'A', 1, 0, 1, 1);
    const std::complex<double> den = two_qubit_matrix_element(spectrum, 'B', 0, 0, 0, 1) +
                                     two_qubit_matrix_element(spectrum, 'B', 1, 0, 1, 1);
    if (std::abs(den) == 0.0)
        throw std::runtime_error("zx_magnitude: direct-drive denominator vanished");
    return std::abs(num / den);
}

double zx_magnitude(const SystemParams& p, double phi_ext) {
    return zx_magnitude(solve_labeled(p, phi_ext));
}

std::vector<CouplingSweepRow> coupling_sweep(const SystemParams& base,
                                             std::span<const double> j_l_values,
                                             CouplingMode mode, double phi_ext) {
    if (j_l_values.empty())
        throw std::invalid_argument("coupling_sweep: empty J_L list");
    std::vector<CouplingSweepRow> rows;
    rows.reserve(j_l_values.size());
    SystemParams p = base;
    if (mode == CouplingMode::pure_inductive) {
        p.j_c = 0.0;
        p.g_a = 0.0;
        p.g_b = 0.0;
    }
    for (const double jl : j_l_values) {
        if (jl < 0.0)
            throw std::invalid_argument("coupling_sweep: J_L must be non-negative");
        p.j_l = jl;
        const LabeledSpectrum spectrum = solve_labeled(p, phi_ext);
        rows.push_back({jl, zx_magnitude(spectrum), static_zz_khz(spectrum)});
    }
    return rows;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("log_log_slope: need two or more paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] == 0.0)
            throw std::invalid_argument("log_log_slope: needs positive x and nonzero y");
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(x.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ------------------------------- Ramsey -------------------------------------

RamseyTrace synthesize_ramsey(double frequency_khz, double decay_us,
                              std::span<const double> time_grid_us,
                              double noise_amplitude, std::uint64_t seed) {
    if (decay_us <= 0.0)
        throw std::invalid_argument("synthesize_ramsey: decay time must be positive");
    if (noise_amplitude < 0.0)
        throw std::invalid_argument("synthesize_ramsey: noise amplitude must be non-negative");
    if (time_grid_us.empty())
        throw std::invalid_argument("synthesize_ramsey: empty time grid");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    RamseyTrace trace;
    trace.frequency_khz = frequency_khz;
    trace.decay_us = decay_us;
    trace.time_us.assign(time_grid_us.begin(), time_grid_us.end());
    trace.signal.reserve(time_grid_us.size());
    const double f_per_us = frequency_khz * 1e-3;  // kHz * us = 1e-3 cycles
    for (const double t : time_grid_us) {
        double s = std::cos(2.0 * constants::pi * f_per_us * t) * std::exp(-t / decay_us);
        if (noise_amplitude > 0.0) s += noise_amplitude * noise(rng);
        trace.signal.push_back(s);
    }
    return trace;
}

namespace {

constexpr int n_sinusoid_params = 5;  // A, f, theta, tau, c

double sinusoid_model(const double* p, double t) {
    return p[0] * std::cos(2.0 * constants::pi * p[1] * t + p[2]) * std::exp(-t / p[3]) +
           p[4];
}

void sinusoid_jacobian(const double* p, double t, double* row) {
    const double phase = 2.0 * constants::pi * p[1] * t + p[2];
    const double damp = std::exp(-t / p[3]);
    row[0] = std::cos(phase) * damp;
    row[1] = -p[0] * std::sin(phase) * damp * 2.0 * constants::pi * t;
    row[2] = -p[0] * std::sin(phase) * damp;
    row[3] = p[0] * std::cos(phase) * damp * t / (p[3] * p[3]);
    row[4] = 1.0;
}

// Best (A cos theta, -A sin theta, c) for a fixed frequency and decay: the
// model is linear in those three, so they follow from a 3x3 normal-equation
// solve. Returns the summed squared residual at the optimum.
double profiled_cost(std::span<const double> t, std::span<const double> s, double s_dot_s,
                     double f, double tau, Eigen::Vector3d* coeffs) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double damp = std::exp(-t[i] / tau);
        const double angle = 2.0 * constants::pi * f * t[i];
        const Eigen::Vector3d basis(std::cos(angle) * damp, std::sin(angle) * damp, 1.0);
        m.noalias() += basis * basis.transpose();
        v.noalias() += basis * s[i];
    }
    const double ridge = 1e-12 * (1.0 + m.trace());
    for (int d = 0; d < 3; ++d) m(d, d) += ridge;
    *coeffs = m.ldlt().solve(v);
    return s_dot_s - 2.0 * coeffs->dot(v) + coeffs->dot(m * *coeffs);
}

} // namespace

SinusoidFit fit_decaying_sinusoid(std::span<const double> time_us,
                                  std::span<const double> signal) {
    const std::size_t n = time_us.size();
    if (n != signal.size() || n < 8)
        throw std::invalid_argument("fit_decaying_sinusoid: need at least 8 paired samples");

    double lo = signal[0], hi = signal[0];
    double s_dot_s = 0.0;
    for (const double s : signal) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        s_dot_s += s * s;
    }
    if (hi - lo <= 1e-15)
        throw FitError("fit_decaying_sinusoid: signal is constant");

    const double span = *std::max_element(time_us.begin(), time_us.end()) -
                        *std::min_element(time_us.begin(), time_us.end());
    double dt_min = span;
    for (std::size_t i = 1; i < n; ++i)
        dt_min = std::min(dt_min, std::abs(time_us[i] - time_us[i - 1]));
    if (span <= 0.0 || dt_min <= 0.0)
        throw FitError("fit_decaying_sinusoid: degenerate time grid");

    // Global coarse search over (frequency, decay); the other three parameters
    // are profiled out exactly, so the seed lands in the least-squares basin
    // even for heavily damped single-cycle fringes where a bare spectral peak
    // is ambiguous.
    const double f_lo = 0.25 / span;
    const double f_hi = 0.5 / dt_min;
    const int n_scan = std::clamp(static_cast<int>(4 * n), 512, 4096);
    const std::array<double, 4> tau_seeds{span / 20.0, span / 6.0, span / 2.0, 2.0 * span};
    double best_cost = std::numeric_limits<double>::infinity();
    double best_f = f_lo, best_tau = tau_seeds[1];
    Eigen::Vector3d best_coeffs = Eigen::Vector3d::Zero();
    for (int k = 0; k <= n_scan; ++k) {
        const double f = f_lo + (f_hi - f_lo) * k / n_scan;
        for (const double tau : tau_seeds) {
            Eigen::Vector3d coeffs;
            const double seed_cost = profiled_cost(time_us, signal, s_dot_s, f, tau, &coeffs);
            if (seed_cost < best_cost) {
                best_cost = seed_cost;
                best_f = f;
                best_tau = tau;
                best_coeffs = coeffs;
            }
        }
    }
    double p[n_sinusoid_params] = {std::hypot(best_coeffs[0], best_coeffs[1]), best_f,
                                   std::atan2(-best_coeffs[1], best_coeffs[0]), best_tau,
                                   best_coeffs[2]};

    // Levenberg-Marquardt with additive damping.
    Eigen::MatrixXd jac(n, n_sinusoid_params);
    Eigen::VectorXd resid(n);
    auto fill = [&](const double* q) {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid[static_cast<Eigen::Index>(i)] = sinusoid_model(q, time_us[i]) - signal[i];
            cost += resid[static_cast<Eigen::Index>(i)] * resid[static_cast<Eigen::Index>(i)];
        }
        return cost;
    };

    double lambda = 1e-3;
    double cost = fill(p);
    int iter = 0;
    for (; iter < 200; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double row[n_sinusoid_params];
            sinusoid_jacobian(p, time_us[i], row);
            for (int d = 0; d < n_sinusoid_params; ++d)
                jac(static_cast<Eigen::Index>(i), d) = row[d];
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * resid;
        bool stepped = false;
        for (int tries = 0; tries < 12; ++tries) {
            Eigen::MatrixXd damped = jtj;
            for (int d = 0; d < n_sinusoid_params; ++d) damped(d, d) += lambda * jtj(d, d) + 1e-30;
            const Eigen::VectorXd step = damped.ldlt().solve(jtr);
            double trial[n_sinusoid_params];
            for (int d = 0; d < n_sinusoid_params; ++d) trial[d] = p[d] - step[d];
            trial[3] = std::clamp(trial[3], 1e-3 * span, 1e3 * span);  // keep decay sane
            const double trial_cost = fill(trial);
            if (trial_cost < cost) {
                std::copy(trial, trial + n_sinusoid_params, p);
                const double gain = cost - trial_cost;
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (gain <= 1e-15 * (cost + 1e-30)) iter = 200;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
        if (!stepped) break;
        cost = fill(p);
    }

    // Normalize: positive amplitude, frequency reported as a magnitude.
    if (p[0] < 0.0) { p[0] = -p[0]; p[2] += constants::pi; }
    p[1] = std::abs(p[1]);
    p[2] = std::remainder(p[2], 2.0 * constants::pi);

    SinusoidFit fit;
    fit.amplitude = p[0];
    fit.frequency_khz = p[1] * 1e3;  // cycles/us -> kHz
    fit.phase = p[2];
    fit.decay_us = p[3];
    fit.offset = p[4];
    fit.residual_rms = std::sqrt(fill(p) / static_cast<double>(n));
    fit.iterations = iter;
    return fit;
}

} // namespace fluxpair
