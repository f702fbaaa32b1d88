#include "lane_emden/annulus.hpp"

#include <cmath>
#include <sstream>

namespace lane_emden {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid input";
        case ErrorKind::BlowUp: return "blow-up";
        case ErrorKind::BracketFailure: return "bracket failure";
        case ErrorKind::NoConvergence: return "no convergence";
        case ErrorKind::InvalidPlacement: return "invalid placement";
        case ErrorKind::NullTestFunction: return "null test function";
        case ErrorKind::ClusteredSpectrum: return "clustered spectrum";
        case ErrorKind::InconsistentSpectrum: return "inconsistent spectrum";
        case ErrorKind::Fold: return "fold";
        case ErrorKind::DegenerateExponent: return "degenerate exponent suspected";
        case ErrorKind::DegenerateLinearization: return "degenerate linearization";
    }
    return "unknown";
}

void AnnulusSpec::validate() const {
    std::ostringstream os;
    if (!(std::isfinite(a) && a > 0.0)) {
        os << "inner radius a must be > 0 (got " << a << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
    if (!(std::isfinite(b) && b > a)) {
        os << "outer radius b must be > a (got a=" << a << ", b=" << b << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
    if (N < 2) {
        os << "dimension N must be >= 2 (got " << N << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
}

void validate_exponent(double p) {
    if (!(std::isfinite(p) && p > 1.0)) {
        std::ostringstream os;
        os << "exponent p must be > 1 (got " << p << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
}

}  // namespace lane_emden
