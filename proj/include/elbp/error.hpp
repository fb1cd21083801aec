#pragma once

#include <stdexcept>
#include <string>

namespace elbp {

enum class ErrorCode {
    Format,              // unrecognized magic or malformed container
    Corrupt,             // recognized container with truncated/inconsistent payload
    UnsupportedDepth,    // sample depth outside the 8-bit range
    VersionMismatch,     // model file written by an incompatible format version
    Argument,            // invalid argument value
    Bounds,              // coordinate outside the valid sampling domain
    ImageTooSmall,       // image cannot accommodate the operator margins
    DegenerateGeometry,  // eye pair does not define a similarity transform
    IncompatibleModels,  // model fingerprints differ
    Parse,               // manifest syntax error
    Validation,          // manifest semantic error
    Dataset,             // cross-file dataset inconsistency
    Io,                  // filesystem read/write failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace elbp
