#pragma once

#include "lane_emden/error.hpp"

namespace lane_emden {

/// Annulus A(a, b) = {a < |x| < b} in R^N.
struct AnnulusSpec {
    double a = 1.0;
    double b = 2.0;
    int N = 2;

    void validate() const;

    double width() const { return b - a; }

    /// The same annulus dilated by mu > 0.
    AnnulusSpec scaled(double mu) const { return {mu * a, mu * b, N}; }
};

void validate_exponent(double p);

}  // namespace lane_emden
