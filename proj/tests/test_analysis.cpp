#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fluxpair/analysis.hpp"
#include "support.hpp"

#include <array>
#include <cmath>
#include <vector>

using namespace fluxpair;

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;

const LabeledSpectrum& sweet_spot_spectrum() {
    static const LabeledSpectrum spec = solve_labeled(testing::reference_device(), pi);
    return spec;
}
} // namespace

TEST_CASE("static ZZ: transition-pair and energy-combination forms coincide") {
    const LabeledSpectrum& spec = sweet_spot_spectrum();
    const double from_pairs = static_zz_khz(spec);
    const double from_energies = zz_energy_combination_khz(spec);
    CHECK(std::abs(from_pairs - from_energies) < 1e-9);
    CHECK(from_pairs == doctest::Approx(2.6832298849).epsilon(1e-6));
}

TEST_CASE("ZX magnitude at the reference device") {
    CHECK(zx_magnitude(sweet_spot_spectrum()) == doctest::Approx(0.3165045378).epsilon(1e-6));
}

TEST_CASE("flux sweep covers the grid and records failures per request") {
    const SystemParams p = testing::reference_device();
    const std::array<double, 3> grid{pi - 0.4, pi, pi + 0.4};
    const std::array<TransitionRequest, 2> requests{
        TransitionRequest{{0, 0, 0}, {1, 0, 0}}, TransitionRequest{{0, 0, 0}, {0, 1, 0}}};

    const TransitionTable table = flux_sweep(p, grid, requests);
    REQUIRE(table.rows.size() == 6);
    CHECK(table.failures.empty());
    for (size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(table.rows[i].phi_ext == grid[i / 2]);
        CHECK(table.rows[i].freq_ghz > 0.0);
        CHECK(!table.rows[i].low_overlap);
    }

    // A label beyond the kept space fails point-by-point without aborting the
    // co-requested valid transition.
    const std::array<TransitionRequest, 2> mixed{
        TransitionRequest{{0, 0, 0}, {1, 0, 0}}, TransitionRequest{{0, 0, 0}, {8, 0, 0}}};
    const TransitionTable partial = flux_sweep(p, grid, mixed);
    CHECK(partial.rows.size() == 3);
    CHECK(partial.failures.size() == 3);

    CHECK_THROWS_AS(flux_sweep(p, std::array<double, 0>{}, requests), std::invalid_argument);
    CHECK_THROWS_AS(flux_sweep(p, grid, std::array<TransitionRequest, 0>{}),
                    std::invalid_argument);
}

TEST_CASE("drive coefficients are linear in the drive amplitudes") {
    const LabeledSpectrum& spec = sweet_spot_spectrum();
    const DriveCoefficients base = drive_coefficients(spec, 0.3, 0.7);
    const DriveCoefficients doubled = drive_coefficients(spec, 0.6, 1.4);
    CHECK(doubled.xi_a_plus == 2.0 * base.xi_a_plus);
    CHECK(doubled.xi_a_minus == 2.0 * base.xi_a_minus);
    CHECK(doubled.xi_b_plus == 2.0 * base.xi_b_plus);
    CHECK(doubled.xi_b_minus == 2.0 * base.xi_b_minus);

    const DriveCoefficients a_only = drive_coefficients(spec, 0.3, 0.0);
    const DriveCoefficients b_only = drive_coefficients(spec, 0.0, 0.7);
    CHECK(base.xi_a_plus == a_only.xi_a_plus + b_only.xi_a_plus);
    CHECK(base.xi_a_minus == a_only.xi_a_minus + b_only.xi_a_minus);
    CHECK(base.xi_b_plus == a_only.xi_b_plus + b_only.xi_b_plus);
    CHECK(base.xi_b_minus == a_only.xi_b_minus + b_only.xi_b_minus);
}

TEST_CASE("ZX equals the drive-coefficient ratio and is scale invariant") {
    const LabeledSpectrum& spec = sweet_spot_spectrum();
    // Cross numerator: qubit-A operator over the B transitions; direct
    // denominator: qubit-B operator over the same transitions.
    const DriveCoefficients cross = drive_coefficients(spec, 1.0, 0.0);
    const DriveCoefficients direct = drive_coefficients(spec, 0.0, 1.0);
    const double from_ratio = std::abs(cross.xi_b_minus / direct.xi_b_plus);
    CHECK(zx_magnitude(spec) == doctest::Approx(from_ratio).epsilon(1e-9));

    const DriveCoefficients cross2 = drive_coefficients(spec, 2.0, 0.0);
    const DriveCoefficients direct2 = drive_coefficients(spec, 0.0, 2.0);
    CHECK(std::abs(cross2.xi_b_minus / direct2.xi_b_plus) == from_ratio);
}

TEST_CASE("coupling sweep against pinned metric values") {
    const SystemParams base = testing::reference_device();
    const std::array<double, 4> jl{0.001, 0.002, 0.004, 0.008};

    const auto pure = coupling_sweep(base, jl, CouplingMode::pure_inductive, pi);
    REQUIRE(pure.size() == 4);
    const double zx_expect[] = {0.08963, 0.17410, 0.31581, 0.49382};
    const double zz_expect[] = {0.2175, 0.8701, 3.4807, 13.9257};
    for (int i = 0; i < 4; ++i) {
        CHECK(pure[i].j_l == jl[i]);
        CHECK(pure[i].zx == doctest::Approx(zx_expect[i]).epsilon(3e-4));
        CHECK(std::abs(pure[i].zz_khz) == doctest::Approx(zz_expect[i]).epsilon(3e-4));
    }

    const std::array<double, 2> jl_full{0.004, 0.008};
    const auto full = coupling_sweep(base, jl_full, CouplingMode::full_capacitive, pi);
    CHECK(full[0].zx == doctest::Approx(0.31650).epsilon(3e-4));
    CHECK(std::abs(full[0].zz_khz) == doctest::Approx(2.6832).epsilon(3e-4));
    CHECK(full[1].zx == doctest::Approx(0.49478).epsilon(3e-4));
    CHECK(std::abs(full[1].zz_khz) == doctest::Approx(11.2183).epsilon(3e-4));

    CHECK_THROWS_AS(coupling_sweep(base, std::array<double, 0>{}, CouplingMode::pure_inductive, pi),
                    std::invalid_argument);
    CHECK_THROWS_AS(coupling_sweep(base, std::array<double, 1>{-0.001},
                                   CouplingMode::pure_inductive, pi),
                    std::invalid_argument);
}

TEST_CASE("log-log slope recovers exact power laws") {
    std::vector<double> x, y2, y1;
    for (double v : {1.0, 2.0, 4.0, 8.0}) {
        x.push_back(v);
        y2.push_back(3.0 * v * v);
        y1.push_back(-0.5 * v); // slope uses |y|
    }
    CHECK(log_log_slope(x, y2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(log_log_slope(x, y1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ramsey synthesis is deterministic and exact when noiseless") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(5.0 * i);

    const RamseyTrace clean = synthesize_ramsey(2.0, 100.0, grid, 0.0, 3);
    REQUIRE(clean.signal.size() == grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double expect = std::cos(2.0 * pi * 2.0 * 1e-3 * t) * std::exp(-t / 100.0);
        CHECK(clean.signal[i] == doctest::Approx(expect).epsilon(1e-12));
    }

    const RamseyTrace n1 = synthesize_ramsey(2.0, 100.0, grid, 0.05, 17);
    const RamseyTrace n2 = synthesize_ramsey(2.0, 100.0, grid, 0.05, 17);
    const RamseyTrace n3 = synthesize_ramsey(2.0, 100.0, grid, 0.05, 18);
    CHECK(n1.signal == n2.signal);
    CHECK(n1.signal != n3.signal);
}

TEST_CASE("decaying-sinusoid fit round trips") {
    std::vector<double> grid;
    for (int i = 0; i <= 250; ++i) grid.push_back(2.0 * i);

    const RamseyTrace clean = synthesize_ramsey(2.0, 100.0, grid, 0.0, 0);
    const SinusoidFit noiseless = fit_decaying_sinusoid(clean.time_us, clean.signal);
    CHECK(noiseless.frequency_khz == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(noiseless.decay_us == doctest::Approx(100.0).epsilon(1e-2));
    CHECK(noiseless.amplitude == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(noiseless.residual_rms < 1e-6);

    // With 5% noise and only a fifth of a cycle per decay time the frequency
    // is weakly determined; the estimate stays within a few sigma.
    const RamseyTrace noisy = synthesize_ramsey(2.0, 100.0, grid, 0.05, 29);
    const SinusoidFit fitted = fit_decaying_sinusoid(noisy.time_us, noisy.signal);
    CHECK(fitted.frequency_khz == doctest::Approx(2.0).epsilon(0.1));

    // Many oscillations pin the frequency tightly even at the same noise.
    const RamseyTrace fast = synthesize_ramsey(40.0, 150.0, grid, 0.05, 31);
    const SinusoidFit fast_fit = fit_decaying_sinusoid(fast.time_us, fast.signal);
    CHECK(fast_fit.frequency_khz == doctest::Approx(40.0).epsilon(0.01));
    CHECK(fast_fit.decay_us == doctest::Approx(150.0).epsilon(0.1));

    CHECK_THROWS_AS(fit_decaying_sinusoid(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
                    std::invalid_argument);
}
