#pragma once

#include "lane_emden/spectrum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lane_emden::degeneracy {

/// Discretization and solver settings shared by every p sample.
struct SampleOptions {
    radial::ShootingOptions shooting;
    std::size_t intervals = 4096;  // pencil intervals
    int threads = 1;
};

/// nu_1(p) .. nu_L(p) for the m-zone radial solution at each p; rows follow p_grid.
/// Failures are rethrown with the offending p in the message.
std::vector<std::vector<double>> eigen_curves(const AnnulusSpec& spec, int m, int L,
                                              const std::vector<double>& p_grid,
                                              const SampleOptions& options = {});

/// nu_l(p) along p_grid (l is 1-based).
std::vector<double> nu_curve(const AnnulusSpec& spec, int m, int l,
                             const std::vector<double>& p_grid, const SampleOptions& options = {});

/// -j(N-2+j), the eigenvalue of the sphere Laplacian of order j with opposite sign.
double harmonic_level(int N, int j);

/// Admissible (l, j): j >= 2 with any l <= m, or j = 1 with l = m.
bool admissible(int m, int l, int j);

struct DegeneracyPoint {
    double p_k = 0.0;
    int l = 0;
    int j = 0;
    double target = 0.0;
    double residual = 0.0;  // |nu_l(p_k) - target|
    bool near_collision = false;
};

struct ScanOptions {
    SampleOptions sampling;
    int samples = 64;            // geometric in p - 1
    bool refine = false;         // refine until the sign-change count is stable
    int max_refinements = 6;
    double p_tol = 1e-8;
    double collision_tol = 1e-6;
};

struct ScanResult {
    std::vector<DegeneracyPoint> points;  // sorted by p_k
    std::vector<std::string> warnings;
    std::vector<double> p_grid;           // final sampling grid
    std::vector<std::vector<double>> nu;  // nu_1..nu_m at each grid point
    std::vector<int> sign_change_history; // total count at each grid level
    bool stable = false;                  // last two levels agreed
};

/// Geometric-in-(p - 1) sampling of [p_min, p_max].
std::vector<double> geometric_grid(double p_min, double p_max, int samples);

ScanResult find_degeneracies(const AnnulusSpec& spec, int m, double p_min, double p_max,
                             int j_max, const ScanOptions& options = {});

/// Dimension of the spherical harmonics of order j in R^N.
std::uint64_t spherical_multiplicity(int N, int j);

struct MorseReport {
    double p = 0.0;
    std::vector<double> J_values;  // J_1 .. J_m
    std::uint64_t morse_index = 0;
    std::uint64_t lower_bound = 0;  // (m-1)(N+1) + 1
    bool degenerate_boundary = false;
};

/// Counts sum_l sum_{0 <= j < J_l} multiplicity(N, j) over the m negative eigenvalues.
MorseReport morse_index(const spectrum::SpectrumSlice& slice, const AnnulusSpec& spec, int m,
                        double boundary_tol = 1e-9);

/// Solves the radial problem at p and evaluates the report.
MorseReport morse_index_at(const AnnulusSpec& spec, double p, int m,
                           const SampleOptions& options = {});

}  // namespace lane_emden::degeneracy
