// analysis.hpp — flux sweeps, ZZ/ZX metrics, drive coefficients, Ramsey synthesis + fit

#pragma once

#include "fluxpair/coupled.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fluxpair {

struct TransitionRequest {
    StateLabel from, to;
};

struct TransitionRow {
    double phi_ext = 0.0;
    StateLabel from, to;
    double freq_ghz = 0.0;
    bool low_overlap = false;  // either endpoint was a nominal label
};

struct SweepFailure {
    double phi_ext = 0.0;
    std::string message;
};

struct TransitionTable {
    std::vector<TransitionRow> rows;
    std::vector<SweepFailure> failures;  // flux points that could not be labeled
};

// Requested transitions at every flux point; a failing point is recorded and
// skipped rather than aborting the sweep.
TransitionTable flux_sweep(const SystemParams& p, std::span<const double> phi_grid,
                           std::span<const TransitionRequest> requests);

// Static ZZ from the Ramsey-pair definition f(00->01) - f(10->11), in kHz.
double static_zz_khz(const LabeledSpectrum& spectrum);
double static_zz_khz(const SystemParams& p, double phi_ext);

// Same quantity assembled from the four computational energies directly;
// equals the transition-difference form identically.
double zz_energy_combination_khz(const LabeledSpectrum& spectrum);

// The four drive coefficients i*xi = <00|eps_A n_A + eps_B n_B|..> +/- <..|..|11>.
// xi values are the real numbers multiplying i; linear in (eps_a, eps_b).
struct DriveCoefficients {
    double xi_a_plus = 0.0, xi_a_minus = 0.0;
    double xi_b_plus = 0.0, xi_b_minus = 0.0;
};

DriveCoefficients drive_coefficients(const LabeledSpectrum& spectrum, double eps_a,
                                     double eps_b);

// |ZX| = |(<00|n_A|01> - <10|n_A|11>) / (<00|n_B|01> + <10|n_B|11>)|.
double zx_magnitude(const LabeledSpectrum& spectrum);
double zx_magnitude(const SystemParams& p, double phi_ext);

enum class CouplingMode { pure_inductive, full_capacitive };

struct CouplingSweepRow {
    double j_l = 0.0;
    double zx = 0.0;
    double zz_khz = 0.0;
};

// Both metrics at each J_L value; pure_inductive zeroes J_C, g_a, g_b.
std::vector<CouplingSweepRow> coupling_sweep(const SystemParams& base,
                                             std::span<const double> j_l_values,
                                             CouplingMode mode, double phi_ext);

// Least-squares slope of log|y| vs log(x); the scaling-law diagnostic.
double log_log_slope(std::span<const double> x, std::span<const double> y);

// ------------------------------- Ramsey -------------------------------------

struct RamseyTrace {
    std::vector<double> time_us;
    std::vector<double> signal;
    double frequency_khz = 0.0;  // injected truth
    double decay_us = 0.0;
};

// signal(t) = cos(2 pi f t) exp(-t/tau) + Gaussian noise, seeded.
RamseyTrace synthesize_ramsey(double frequency_khz, double decay_us,
                              std::span<const double> time_grid_us,
                              double noise_amplitude, std::uint64_t seed);

struct SinusoidFit {
    double frequency_khz = 0.0;
    double decay_us = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    double offset = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;
};

// Decaying-sinusoid fit A cos(2 pi f t + theta) exp(-t/tau) + c via
// Levenberg-Marquardt, frequency seeded from the dominant DFT bin.
SinusoidFit fit_decaying_sinusoid(std::span<const double> time_us,
                                  std::span<const double> signal);

} // namespace fluxpair
