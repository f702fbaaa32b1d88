#pragma once

#include <stdexcept>
#include <string>

namespace lane_emden {

enum class ErrorKind {
    InvalidInput,
    BlowUp,
    BracketFailure,
    NoConvergence,
    InvalidPlacement,
    NullTestFunction,
    ClusteredSpectrum,
    InconsistentSpectrum,
    Fold,
    DegenerateExponent,
    DegenerateLinearization,
};

const char* to_string(ErrorKind kind) noexcept;

// All numerical and validation failures surface as this type; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorKind::InvalidInput, what);
}

}  // namespace lane_emden
