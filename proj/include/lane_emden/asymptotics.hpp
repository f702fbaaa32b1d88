#pragma once

#include "lane_emden/degeneracy.hpp"

#include <vector>

namespace lane_emden::asymptotics {

/// m-th radial Dirichlet eigenpair of the Laplacian on the annulus.
struct LaplaceEigenpair {
    AnnulusSpec spec;
    int m = 0;
    double lambda_m = 0.0;
    std::vector<double> grid;
    std::vector<double> psi_m;  // sup norm 1, psi'(a) > 0
};

/// Same pencil machinery as the linearization, with zero potential and weight r^{N-1}.
LaplaceEigenpair laplace_radial_eigen(const AnnulusSpec& spec, int m,
                                      std::size_t intervals = 4096);

/// Max over the eigenpair grid of |v/sup|v| - psi_m|, both with positive slope at a.
double profile_distance(const radial::RadialProfile& profile, const LaplaceEigenpair& psi);

struct PToOneRow {
    double p = 0.0;
    double supnorm_pow = 0.0;  // sup|v|^{p-1}
    double lambda_m = 0.0;
    double err_profile = 0.0;
    double nu_m = 0.0;
};

/// Rows in input order; p_list must lie in (1, 2] and decrease toward 1.
std::vector<PToOneRow> p_to_1_diagnostics(const AnnulusSpec& spec, int m,
                                          const std::vector<double>& p_list,
                                          const degeneracy::SampleOptions& options = {});

struct LargePRow {
    double p = 0.0;
    double nu_m = 0.0;
    double bound = 0.0;   // (1 - p) a^2 lambda_1
    double margin = 0.0;  // bound - nu_m, nonnegative when the bound holds
};

std::vector<LargePRow> large_p_bound_check(const AnnulusSpec& spec, int m,
                                           const std::vector<double>& p_list,
                                           const degeneracy::SampleOptions& options = {});

}  // namespace lane_emden::asymptotics
