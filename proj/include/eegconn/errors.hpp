#pragma once

#include <stdexcept>
#include <string>

namespace eegconn {

/// File could not be opened, read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file exists but its contents do not match the expected schema
/// (bad JSON, wrong column count, non-finite value, unknown token, ...).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented range.
struct ValueError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace eegconn
