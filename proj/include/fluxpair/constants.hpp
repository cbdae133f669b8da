// constants.hpp — SI constants and the two nH/fF/GHz conversion factors used everywhere

#pragma once

namespace fluxpair::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// 2019 SI exact definitions.
inline constexpr double planck_h = 6.62607015e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double hbar = planck_h / (2.0 * pi);

// E_C [GHz] = charging_ghz_ff / C [fF], from E_C = e^2 / (2 C h).
// The fF -> F and Hz -> GHz powers of ten combine into a single factor 1e6.
inline constexpr double charging_ghz_ff =
    elementary_charge * elementary_charge / (2.0 * planck_h) * 1e6;

// E_L [GHz] = inductive_ghz_nh / L [nH], from E_L = (hbar/2e)^2 / (L h).
// nH -> H and Hz -> GHz cancel exactly, so the SI value is used as-is.
inline constexpr double inductive_ghz_nh =
    (hbar / (2.0 * elementary_charge)) * (hbar / (2.0 * elementary_charge)) / planck_h;

} // namespace fluxpair::constants
