#pragma once

#include <stdexcept>
#include <string>

namespace hausmet {

// Exit-code mapping used by the CLI: input/parameter/format -> 2,
// incompatible -> 3, internal -> 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : InputError {
    using InputError::InputError;
};

struct FormatError : InputError {
    using InputError::InputError;
};

struct IncompatibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Invariant check that survives NDEBUG builds.
inline void invariant(bool cond, const char* msg) {
    if (!cond) throw InternalError(std::string("invariant violated: ") + msg);
}

}  // namespace hausmet
