#pragma once

#include <stdexcept>
#include <string>

namespace topstat {

// Error taxonomy mirrored by the CLI exit codes: config/parameter errors
// exit 2, input-data errors exit 3, numeric/integration failures exit 4.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace topstat
