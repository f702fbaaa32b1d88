#pragma once

#include "lane_emden/radial.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace lane_emden::spectrum {

/// Symmetric tridiagonal pencil (A, B) on the interior nodes of a uniform grid of
/// [a, b]. A discretizes -(r^{N-1} phi')' - r^{N-1} q phi in flux form, B is the
/// diagonal weight r^{weight_exponent}.
struct SLPencil {
    AnnulusSpec spec;
    double h = 0.0;
    std::vector<double> radii;     // interior nodes r_1 .. r_{K-1}
    std::vector<double> diagonal;  // A_ii
    std::vector<double> offdiag;   // A_{i,i+1}, size K-2
    std::vector<double> weight;    // B_ii > 0
    std::vector<double> potential; // q at the interior nodes
    double weight_exponent = 0.0;

    std::size_t size() const { return radii.size(); }
    std::size_t intervals() const { return radii.size() + 1; }
    /// Full grid a = r_0 < ... < r_K = b.
    std::vector<double> full_grid() const;
};

/// Pencil for an arbitrary potential q(r) and weight r^{weight_exponent}.
SLPencil assemble_pencil(const AnnulusSpec& spec, const std::function<double(double)>& q,
                         double weight_exponent, std::size_t intervals);

/// Linearization at a radial solution: q = p|v|^{p-1}, weight r^{N-3}.
SLPencil assemble_pencil(const radial::RadialProfile& profile, std::size_t intervals = 4096);

struct SpectrumSlice {
    double p = 0.0;
    std::vector<double> grid;                      // a .. b, K+1 nodes
    std::vector<double> eigenvalues;               // increasing
    std::vector<std::vector<double>> eigenfunctions;  // on grid, sup norm 1, phi'(a) > 0

    int negative_count() const;
};

struct EigenOptions {
    double rel_tol = 1e-10;  // bisection width relative to max(1, |nu|)
    int inverse_iterations = 3;
};

/// L algebraically smallest eigenpairs of A phi = nu B phi.
SpectrumSlice eigen_smallest(const SLPencil& pencil, int L, const EigenOptions& options = {});

/// Convenience: assemble at the profile and solve.
SpectrumSlice compute_spectrum(const radial::RadialProfile& profile, int L,
                               std::size_t intervals = 4096);

/// Number of eigenvalues of the pencil strictly below x.
int sturm_count(const SLPencil& pencil, double x);

/// Discrete quotient phi^T A phi / phi^T B phi for phi on the full grid (zero ends).
double rayleigh(const SLPencil& pencil, const std::vector<double>& phi);

/// Quotient at the profile, with the pencil built on phi's grid (size K+1).
double rayleigh(const radial::RadialProfile& profile, const std::vector<double>& phi);

struct AuxiliaryZeros {
    std::vector<double> z_zeros;     // r v' + 2/(p-1) v
    std::vector<double> zeta_zeros;  // v'
};

/// Interior sign changes of the auxiliary functions, located by linear interpolation
/// between the profile nodes.
AuxiliaryZeros auxiliary_diagnostics(const radial::RadialProfile& profile);

}  // namespace lane_emden::spectrum
