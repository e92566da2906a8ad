#pragma once

#include <stdexcept>
#include <string>

namespace pfopt::cli {

// Exit codes: 2 config/schema, 3 data, 4 solver escalation.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverEscalation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pfopt::cli
