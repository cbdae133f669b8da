// errors.hpp — exception types for the distinct failure modes the library reports

#pragma once

#include <stdexcept>
#include <string>

namespace fluxpair {

// Requested Hilbert-space product would exceed the configured dimension cap.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Circuit element values produce a singular / near-singular capacitance matrix.
struct DegenerateCircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested adiabatic product label is absent from a labeled spectrum.
struct LabelingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An optimizer or curve fit could not produce a usable result.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fluxpair
