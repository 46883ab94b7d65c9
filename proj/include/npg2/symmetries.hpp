#pragma once

// Discrete symmetries of the coefficient system: the S3 permutations of the
// su(2) factors act linearly on (f0,...,f4); tau_o additionally reflects time.
// All actions have integer matrices, so compositions are exact.

#include <array>
#include <optional>
#include <string>

#include "npg2/g2_algebra.hpp"

namespace npg2 {

enum class Tau { identity, o, t12, t13, t23, t123, t132 };

using TauMatrix = std::array<std::array<int, 5>, 5>;

// Linear part plus the time-reflection flag; paths transform as
// f~(t) = M f(reflect ? -t : t).
struct TauAction {
    TauMatrix m{};
    bool reflect_time = false;
};

TauAction tau_action(Tau tau);

// Pointwise linear action on coefficients (time reflection is a path
// operation and is handled by the caller).
FCoeffs apply_tau(Tau tau, const FCoeffs& f);

// Composition in the full group generated by the seven elements: matrix
// product and XOR of the reflection flags.
TauAction compose(const TauAction& first_applied_last, const TauAction& applied_first);

// Recovers the tag when the action equals one of the seven named elements.
std::optional<Tau> identify(const TauAction& action);

const char* tau_name(Tau tau);
std::optional<Tau> tau_from_name(const std::string& name); // "o", "12", "13", "23", "123", "132"

} // namespace npg2
