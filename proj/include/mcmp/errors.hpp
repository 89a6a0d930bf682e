#pragma once

#include <stdexcept>

namespace mcmp {

// A solver-internal contract was violated; maps to exit code 2 in the CLI.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace mcmp
