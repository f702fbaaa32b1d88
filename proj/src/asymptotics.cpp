#include "lane_emden/asymptotics.hpp"

#include "lane_emden/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace lane_emden::asymptotics {

LaplaceEigenpair laplace_radial_eigen(const AnnulusSpec& spec, int m, std::size_t intervals) {
    spec.validate();
    require(m >= 1, "eigenvalue index m must be >= 1");
    const auto pen =
        spectrum::assemble_pencil(spec, [](double) { return 0.0; }, spec.N - 1.0, intervals);
    auto slice = spectrum::eigen_smallest(pen, m);
    LaplaceEigenpair out;
    out.spec = spec;
    out.m = m;
    out.lambda_m = slice.eigenvalues[m - 1];
    out.grid = std::move(slice.grid);
    out.psi_m = std::move(slice.eigenfunctions[m - 1]);
    return out;
}

double profile_distance(const radial::RadialProfile& profile, const LaplaceEigenpair& psi) {
    require(profile.spec.a == psi.spec.a && profile.spec.b == psi.spec.b,
            "profile and eigenfunction live on different annuli");
    double d = 0.0;
    for (std::size_t i = 0; i < psi.grid.size(); ++i)
        d = std::max(d, std::abs(profile.shape_at(psi.grid[i]) - psi.psi_m[i]));
    return d;
}

std::vector<PToOneRow> p_to_1_diagnostics(const AnnulusSpec& spec, int m,
                                          const std::vector<double>& p_list,
                                          const degeneracy::SampleOptions& opt) {
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        validate_exponent(p_list[i]);
        require(p_list[i] <= 2.0, "p values must lie in (1, 2]");
        require(i == 0 || p_list[i] < p_list[i - 1], "p values must decrease toward 1");
    }
    const auto psi = laplace_radial_eigen(spec, m, opt.intervals);
    return ordered_map<PToOneRow>(p_list.size(), opt.threads, [&](std::size_t i) {
        const double p = p_list[i];
        const auto prof = radial::shoot_nodal(spec, p, m, opt.shooting);
        const auto slice = spectrum::compute_spectrum(prof, m, opt.intervals);
        PToOneRow row;
        row.p = p;
        row.supnorm_pow = prof.sup_norm_pow(p - 1.0);
        row.lambda_m = psi.lambda_m;
        row.err_profile = profile_distance(prof, psi);
        row.nu_m = slice.eigenvalues[m - 1];
        return row;
    });
}

std::vector<LargePRow> large_p_bound_check(const AnnulusSpec& spec, int m,
                                           const std::vector<double>& p_list,
                                           const degeneracy::SampleOptions& opt) {
    for (double p : p_list) validate_exponent(p);
    const double lambda_1 = laplace_radial_eigen(spec, 1, opt.intervals).lambda_m;
    return ordered_map<LargePRow>(p_list.size(), opt.threads, [&](std::size_t i) {
        const double p = p_list[i];
        const auto prof = radial::shoot_nodal(spec, p, m, opt.shooting);
        LargePRow row;
        row.p = p;
        row.nu_m = spectrum::compute_spectrum(prof, m, opt.intervals).eigenvalues[m - 1];
        row.bound = (1.0 - p) * spec.a * spec.a * lambda_1;
        row.margin = row.bound - row.nu_m;
        return row;
    });
}

}  // namespace lane_emden::asymptotics
