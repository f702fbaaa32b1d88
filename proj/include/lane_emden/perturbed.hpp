#pragma once

#include "lane_emden/asymptotics.hpp"
#include "lane_emden/radial.hpp"

#include <Eigen/Dense>

#include <vector>

// Two-dimensional continuation onto deformed annuli. The deformed domain is the image
// of A(a, b) under x -> x + t f(r, theta) x/|x|, with f interpolating linearly in r
// between two trigonometric polynomials given on the boundary circles.
namespace lane_emden::perturbed {

struct TrigMode {
    int k = 0;
    double c = 0.0;  // cos(k theta) coefficient
    double d = 0.0;  // sin(k theta) coefficient
};

struct DeformationSpec {
    std::vector<TrigMode> inner;  // displacement on |x| = a
    std::vector<TrigMode> outer;  // displacement on |x| = b

    void validate() const;

    /// sigma(x) = x, i.e. f(r, theta) = r.
    static DeformationSpec dilation(double a, double b);
    /// Coefficients of the field rotated by theta0.
    DeformationSpec rotated(double theta0) const;
};

struct PolarGrid {
    double a = 1.0;
    double b = 2.0;
    int n_r = 64;      // radial intervals
    int n_theta = 64;  // angular nodes, periodic

    void validate() const;
    double h_r() const { return (b - a) / n_r; }
    double h_theta() const;
    double radius(int i) const { return i == n_r ? b : a + i * h_r(); }
    double angle(int k) const { return k * h_theta(); }
    std::size_t node(int i, int k) const { return static_cast<std::size_t>(i) * n_theta + k; }
    std::size_t node_count() const { return static_cast<std::size_t>(n_r + 1) * n_theta; }
};

/// Map data at one point. The polar variants are expressed in the orthonormal frame
/// (e_r, e_theta) at the point.
struct LocalMap {
    Eigen::Matrix2d J, M;
    Eigen::Matrix2d J_polar, M_polar;
    double det = 1.0;
};

LocalMap local_map(const DeformationSpec& def, double a, double b, double t, double r,
                   double theta);

/// Per-node Jacobian data, indexed like PolarGrid::node.
struct JacobianField {
    std::vector<Eigen::Matrix2d> J;
    std::vector<Eigen::Matrix2d> M;
    std::vector<double> det;
    double min_det = 0.0;
};

/// Throws a fold error when det J <= 0 at any node.
JacobianField build_deformation(const DeformationSpec& def, const PolarGrid& grid, double t);

/// Largest T such that det J >= det_floor for all |t| <= T on a fine probe grid,
/// capped at `cap`.
double safety_bound(const DeformationSpec& def, double a, double b, double det_floor = 0.2,
                    double cap = 100.0);

struct NewtonOptions {
    int steps = 5;
    int max_iterations = 25;
    double tolerance = 1e-8;      // on PerturbedSolution::residual_norm
    int max_halvings = 4;
    double pivot_ratio = 1e-12;   // smaller Schur pivots signal a degenerate exponent
    std::vector<double> known_degeneracies;
    double degeneracy_margin = 1e-4;
    double det_floor = 0.2;       // for the safety bound
    bool enforce_safety_bound = true;
};

struct StepRecord {
    double t = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

/// Solution field on the annulus grid. The unknown is stored scaled by the radial sup
/// norm S (as for RadialProfile), so v = S * w.
struct PerturbedSolution {
    PolarGrid grid;
    DeformationSpec deformation;
    double t = 0.0;
    double p = 0.0;
    int m = 0;
    double log_scale = 0.0;  // log S
    std::vector<double> w;   // v / S on every node, zero on the boundary circles
    JacobianField jacobian;
    double residual_norm = 0.0;  // max |strong residual| / (1 + S^p), in v units
    int newton_iterations = 0;   // maximum over continuation steps
    std::vector<StepRecord> steps;
    double safety_bound = 0.0;

    double value(int i, int k) const;
    double sup_abs_w() const;
};

/// Radial profile sampled on the grid nodes, constant in theta, scaled like w.
std::vector<double> radial_on_grid(const radial::RadialProfile& profile, const PolarGrid& grid);

PerturbedSolution newton_solve(const radial::RadialProfile& profile, const DeformationSpec& def,
                               const PolarGrid& grid, double t_target,
                               const NewtonOptions& options = {});

/// Connected components of {v > 0} and {v < 0} with 4-neighbour connectivity and
/// periodic theta, ignoring |v| below 1e-10 sup|v|.
int nodal_count_2d(const PolarGrid& grid, const std::vector<double>& field);
int nodal_count_2d(const PerturbedSolution& solution);

/// Negative inertia of the discrete second variation, optionally shifted by
/// `shift` times the (positive) lumped mass.
int morse_index_2d(const PerturbedSolution& solution, double shift = 0.0);

/// Sign-resolved sup distance between v/sup|v| and the reference shape, both
/// normalized by their sup over the grid nodes.
double shape_compare(const PerturbedSolution& solution, const asymptotics::LaplaceEigenpair& psi);
double shape_compare(const PerturbedSolution& solution, const radial::RadialProfile& profile);

namespace detail {
/// Circulant maps from nodal values to values and derivatives of the trigonometric
/// interpolant at the staggered angles theta_k + h/2.
Eigen::MatrixXd staggered_interpolation(int n_theta);
Eigen::MatrixXd staggered_derivative(int n_theta);
}  // namespace detail

}  // namespace lane_emden::perturbed
