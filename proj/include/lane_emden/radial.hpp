#pragma once

#include "lane_emden/annulus.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lane_emden::radial {

struct IvpOptions {
    std::size_t grid_intervals = 2048;
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double zero_tol = 1e-12;  // bisection tolerance for zero refinement, in radius
};

/// Solution of v'' + (N-1)/r v' + |v|^{p-1} v = 0, v(a) = 0, v'(a) = alpha.
struct Trajectory {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> slopes;
    std::vector<double> zeros;  // all sign changes in (a, b]
};

Trajectory integrate_radial_ivp(const AnnulusSpec& spec, double p, double alpha,
                                const IvpOptions& options = {});

struct ShootingOptions {
    IvpOptions ivp;
    // Initial bracketing range for the slope at a. Widened automatically (up to the
    // lambda limits below) when the target solution lies outside.
    double alpha_min = 1e-6;
    double alpha_max = 1e9;
    double log_lambda_floor = -690.0;
    double log_lambda_ceiling = 690.0;
    double residual_tol = 1e-12;  // |v(b)| relative to sup |v|
    int max_iterations = 200;
    std::optional<double> log_lambda_hint;
};

/// Sampled radial nodal solution.
///
/// Values are stored normalized by the sup norm, because the sup norm itself grows
/// like lambda_m^{1/(p-1)} as p -> 1 and leaves double range long before the shape
/// does. `log_sup_norm` carries the scale.
struct RadialProfile {
    AnnulusSpec spec;
    double p = 0.0;
    int m = 0;
    std::vector<double> grid;
    std::vector<double> shape;         // v / sup_norm
    std::vector<double> shape_slopes;  // v' / sup_norm
    std::vector<double> zeros;         // interior zeros, increasing
    double log_sup_norm = 0.0;
    double log_alpha = 0.0;            // log v'(a)

    double sup_norm() const;
    double alpha_star() const;
    /// sup_norm^e without forming sup_norm.
    double sup_norm_pow(double e) const;
    double value(std::size_t i) const;
    double slope(std::size_t i) const;
    std::vector<double> values() const;
    std::vector<double> slopes() const;

    /// Hermite interpolation of v / sup_norm and its derivative at r in [a, b].
    double shape_at(double r) const;
    double shape_slope_at(double r) const;
    /// p |v(r)|^{p-1}, the potential of the linearized operator.
    double potential_at(double r) const;
    double step() const { return grid[1] - grid[0]; }
};

/// Unique radial solution with m nodal zones and v'(a) > 0, by shooting on v'(a).
RadialProfile shoot_nodal(const AnnulusSpec& spec, double p, int m,
                          const ShootingOptions& options = {});

/// max over interior nodes of |v'' + (N-1)/r v' + |v|^{p-1} v| / (1 + sup_norm^p),
/// measured as the local defect of the stored samples over two grid intervals.
double ode_residual(const RadialProfile& profile);

/// sup_i |x(r_i) - y(r_i)| / sup|x| over the nodes of x, y interpolated.
double relative_sup_distance(const RadialProfile& x, const RadialProfile& y);

struct NehariOptions {
    ShootingOptions shooting;
    std::vector<double> initial_zeros;  // empty: equispaced placement
    double coarse_tol = 1e-3;           // relative tolerance of the derivative-free phase
    int coarse_sweeps = 1;
    double stationarity_tol = 1e-11;    // relative slope-squared mismatch at the zeros
    int max_newton = 40;
};

struct NehariResult {
    RadialProfile profile;
    std::vector<double> placement;  // r_1 < ... < r_{m-1}
    std::vector<double> zone_energies;
    double energy = 0.0;            // Lambda(r_1, ..., r_{m-1})
    double max_slope_mismatch = 0.0;  // max | |v'(r_i-)| - |v'(r_i+)| | / |v'(r_i+)|
    int subproblem_solves = 0;
};

/// Minimizes the sum of one-zone Nehari energies over zero placements.
NehariResult nehari_minimize(const AnnulusSpec& spec, double p, int m,
                             const NehariOptions& options = {});

struct NodalZone {
    double lo = 0.0, hi = 0.0;
    double gradient = 0.0;  // int r^{N-1} |u_i'|^2
    double power = 0.0;     // int r^{N-1} |u_i|^{p+1}
    double energy = 0.0;    // (1/2 - 1/(p+1)) * gradient
    double nehari_residual = 0.0;  // |gradient - power| / gradient
    bool flagged = false;
};

struct NodalZoneReport {
    std::vector<NodalZone> zones;
    double total_energy() const;
};

NodalZoneReport nehari_report(const RadialProfile& profile, double tolerance = 1e-5);

/// Integral of f(r, v/S, v'/S) over [lo, hi] using composite Simpson on the grid nodes
/// inside and Gauss-Legendre on the Hermite interpolant over the partial end intervals.
template <class F>
double zone_integral(const RadialProfile& profile, double lo, double hi, F&& f);

}  // namespace lane_emden::radial

#include "lane_emden/detail/zone_integral.hpp"
