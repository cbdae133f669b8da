// fitter.hpp — recover Hamiltonian parameters from transition observations

#pragma once

#include "fluxpair/coupled.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace fluxpair {

// One measured line position: a labeled transition at a flux bias.
struct Observation {
    double phi_ext = 0.0;
    StateLabel from;
    StateLabel to;
    double freq_ghz = 0.0;
    double weight = 1.0;
};

// The eleven fit coordinates in packing order:
// E_JA, E_CA, E_LA, E_JB, E_CB, E_LB, J_C, J_L, g_A, g_B, f_LC.
inline constexpr int n_fit_params = 11;
using ParamVector = std::array<double, n_fit_params>;

ParamVector pack_params(const SystemParams& p);
SystemParams unpack_params(const ParamVector& v, const TruncationConfig& trunc);

struct FitBounds {
    ParamVector lo;
    ParamVector hi;
    // Wide physical box: positive energies, couplings allowed either sign.
    static FitBounds wide();
};

struct FitOptions {
    FitBounds bounds = FitBounds::wide();
    std::array<bool, n_fit_params> frozen{};  // true pins a coordinate at its initial value
    int restarts = 5;
    int max_evals_per_restart = 2500;
    std::uint64_t seed = 0;
    double stagnation_tol = 1e-11;  // objective spread triggering termination
    double simplex_tol = 1e-9;      // relative simplex extent triggering termination
    double goal_rms = 1e-10;        // stop restarting once the objective is this small
};

struct FitResult {
    SystemParams params;
    double residual_rms = 0.0;
    std::vector<double> residuals;  // weighted, one per observation
    long iterations = 0;            // objective evaluations consumed
    bool converged = false;
};

// Weighted model-minus-observation residuals, one per observation, grouping
// the eigensolves by flux point.  Throws LabelingError naming the first
// observation whose labels cannot be resolved.
std::vector<double> residuals(const SystemParams& params, const std::vector<Observation>& obs);

// Derivative-free simplex minimization of the weighted residual RMS with
// bound clamping and seeded restarts.  Labeling failures during a trial step
// cost a large finite penalty instead of aborting the fit.  Non-convergence
// is reported through the flag; the best point found is always returned.
FitResult fit(const std::vector<Observation>& obs, const SystemParams& initial,
              const FitOptions& options = {});

} // namespace fluxpair
