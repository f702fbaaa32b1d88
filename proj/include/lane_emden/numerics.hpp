#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lane_emden::numerics {

/// Uniform grid lo = x_0 < ... < x_n = hi. Nodes are computed as lo + i*h so that
/// grids of dilated intervals are exact dilations of each other when the factor is
/// a power of two.
std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals);

/// Composite Simpson rule on uniformly spaced samples. An odd number of intervals
/// closes with the 3/8 rule on the last three.
double simpson(std::span<const double> f, double h);

/// Cubic Hermite interpolant on [x0, x1] from end values and end slopes.
struct Hermite {
    double x0, x1, f0, f1, d0, d1;

    double value(double x) const;
    double derivative(double x) const;
};

/// Five-point Gauss-Legendre rule on [lo, hi].
double gauss_legendre(const std::function<double(double)>& f, double lo, double hi);

/// Bisection for a sign change of f on [lo, hi]; stops when the bracket is below tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter = 200);

/// Gaussian elimination with partial pivoting for a tridiagonal system, in the
/// LAPACK gttrf/gttrs layout. Exactly zero pivots are replaced by `zero_pivot` so that
/// the factorization can serve inverse iteration at a converged shift.
class TridiagonalLU {
public:
    TridiagonalLU(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                  double zero_pivot = 0.0);

    /// Solves in place.
    void solve(std::vector<double>& rhs) const;

private:
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<char> swapped_;
};

/// Number of strict sign changes in a sampled sequence, skipping exact zeros.
int count_sign_changes(std::span<const double> values);

}  // namespace lane_emden::numerics
