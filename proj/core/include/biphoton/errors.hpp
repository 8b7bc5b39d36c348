#pragma once

#include <stdexcept>

namespace biphoton {

// Subsystem label collides with an existing one or names no subsystem.
struct LabelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dimension mismatch between operators, states or targeted subsystems.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Physical model parameter out of range (non-unitary matrix, |overlap| > 1,
// density matrix violating hermiticity/trace/positivity).
struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// State that must be unit-norm is not.
struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Invalid plain input: empty grid, zero trial count, non-finite number.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace biphoton
