#include "lane_emden/spectrum.hpp"

#include "lane_emden/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lane_emden::spectrum {

std::vector<double> SLPencil::full_grid() const {
    return numerics::uniform_grid(spec.a, spec.b, intervals());
}

SLPencil assemble_pencil(const AnnulusSpec& spec, const std::function<double(double)>& q,
                         double weight_exponent, std::size_t intervals) {
    spec.validate();
    require(intervals >= 4, "pencil needs at least 4 intervals");
    SLPencil pen;
    pen.spec = spec;
    pen.weight_exponent = weight_exponent;
    const auto grid = numerics::uniform_grid(spec.a, spec.b, intervals);
    pen.h = grid[1] - grid[0];
    const double h2 = pen.h * pen.h;
    const double flux_exp = spec.N - 1;
    const std::size_t n = intervals - 1;
    pen.radii.assign(grid.begin() + 1, grid.end() - 1);
    pen.diagonal.resize(n);
    pen.offdiag.resize(n - 1);
    pen.weight.resize(n);
    pen.potential.resize(n);

    auto flux = [&](std::size_t k) {  // r^{N-1} at the midpoint of [grid[k], grid[k+1]]
        return std::pow(0.5 * (grid[k] + grid[k + 1]), flux_exp);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double r = pen.radii[i];
        pen.potential[i] = q(r);
        pen.diagonal[i] = (flux(i) + flux(i + 1)) / h2 - std::pow(r, flux_exp) * pen.potential[i];
        pen.weight[i] = std::pow(r, weight_exponent);
        if (i + 1 < n) pen.offdiag[i] = -flux(i + 1) / h2;
    }
    return pen;
}

SLPencil assemble_pencil(const radial::RadialProfile& profile, std::size_t intervals) {
    return assemble_pencil(
        profile.spec, [&](double r) { return profile.potential_at(r); }, profile.spec.N - 3.0,
        intervals);
}

int SpectrumSlice::negative_count() const {
    return static_cast<int>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [](double v) { return v < 0; }));
}

int sturm_count(const SLPencil& pen, double x) {
    // inertia of A - xB through its LDL^T pivots
    const std::size_t n = pen.size();
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = pen.diagonal[i] - x * pen.weight[i];
        d = (i == 0) ? c : c - pen.offdiag[i - 1] * pen.offdiag[i - 1] / d;
        if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(c) + 1.0);
        if (d < 0.0) ++count;
    }
    return count;
}

double rayleigh(const SLPencil& pen, const std::vector<double>& phi) {
    const std::size_t K = pen.intervals();
    require(phi.size() == K + 1, "test function must be sampled on the pencil grid");
    double scale = 0.0;
    for (double v : phi) scale = std::max(scale, std::abs(v));
    require(std::abs(phi.front()) <= 1e-12 * scale && std::abs(phi.back()) <= 1e-12 * scale,
            "test function must vanish at both endpoints");
    const auto grid = pen.full_grid();
    const double h2 = pen.h * pen.h;
    const double flux_exp = pen.spec.N - 1;
    double grad = 0.0, pot = 0.0, den = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double dphi = phi[k + 1] - phi[k];
        grad += std::pow(0.5 * (grid[k] + grid[k + 1]), flux_exp) * dphi * dphi / h2;
    }
    for (std::size_t i = 0; i < pen.size(); ++i) {
        const double v = phi[i + 1];
        pot += std::pow(pen.radii[i], flux_exp) * pen.potential[i] * v * v;
        den += pen.weight[i] * v * v;
    }
    if (!(den > 0.0)) throw Error(ErrorKind::NullTestFunction, "denominator of the quotient is zero");
    return (grad - pot) / den;
}

double rayleigh(const radial::RadialProfile& profile, const std::vector<double>& phi) {
    require(phi.size() >= 5, "test function needs at least 5 samples");
    return rayleigh(assemble_pencil(profile, phi.size() - 1), phi);
}

namespace {

// Deterministic, non-degenerate start vector for inverse iteration.
std::vector<double> start_vector(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    return x;
}

void normalize_inf(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::abs(v));
    for (double& v : x) v /= s;
}

}  // namespace

SpectrumSlice eigen_smallest(const SLPencil& pen, int L, const EigenOptions& opt) {
    const std::size_t n = pen.size();
    require(L >= 1, "eigenvalue count L must be >= 1");
    require(static_cast<std::size_t>(L) * 4 <= n, "eigenvalue count L must be much smaller than K");

    // standard form T = B^{-1/2} A B^{-1/2}
    std::vector<double> isq(n), t(n), e(n - 1);
    for (std::size_t i = 0; i < n; ++i) isq[i] = 1.0 / std::sqrt(pen.weight[i]);
    for (std::size_t i = 0; i < n; ++i) t[i] = pen.diagonal[i] * isq[i] * isq[i];
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = pen.offdiag[i] * isq[i] * isq[i + 1];

    double lo_bound = std::numeric_limits<double>::infinity();
    double hi_bound = -lo_bound;
    for (std::size_t i = 0; i < n; ++i) {
        const double rad = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo_bound = std::min(lo_bound, t[i] - rad);
        hi_bound = std::max(hi_bound, t[i] + rad);
    }
    lo_bound -= 1.0;
    hi_bound += 1.0;
    const double norm = std::max(std::abs(lo_bound), std::abs(hi_bound));

    SpectrumSlice out;
    out.p = std::numeric_limits<double>::quiet_NaN();
    out.grid = pen.full_grid();

    double floor = lo_bound;
    for (int k = 1; k <= L; ++k) {
        double lo = floor, hi = hi_bound;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= opt.rel_tol * std::max(1.0, std::abs(mid))) break;
            if (mid == lo || mid == hi) break;
            if (sturm_count(pen, mid) >= k) hi = mid;
            else lo = mid;
        }
        if (sturm_count(pen, hi) - sturm_count(pen, lo) > 1) {
            std::ostringstream os;
            os << "eigenvalue " << k << " not separated near " << hi;
            throw Error(ErrorKind::ClusteredSpectrum, os.str());
        }
        const double nu = 0.5 * (lo + hi);
        floor = hi;

        std::vector<double> lower(e), upper(e), diag(n);
        for (std::size_t i = 0; i < n; ++i) diag[i] = t[i] - nu;
        const numerics::TridiagonalLU lu(lower, diag, upper,
                                         std::numeric_limits<double>::epsilon() * norm);
        auto y = start_vector(n);
        for (int it = 0; it < opt.inverse_iterations; ++it) {
            lu.solve(y);
            normalize_inf(y);
        }
        std::vector<double> phi(n + 2, 0.0);
        for (std::size_t i = 0; i < n; ++i) phi[i + 1] = y[i] * isq[i];
        normalize_inf(phi);
        if (phi[1] < 0) for (double& v : phi) v = -v;

        out.eigenvalues.push_back(nu);
        out.eigenfunctions.push_back(std::move(phi));
    }
    for (int k = 1; k < L; ++k) {
        if (!(out.eigenvalues[k] > out.eigenvalues[k - 1]))
            throw Error(ErrorKind::ClusteredSpectrum, "eigenvalues not strictly increasing");
    }
    return out;
}

SpectrumSlice compute_spectrum(const radial::RadialProfile& profile, int L,
                               std::size_t intervals) {
    auto slice = eigen_smallest(assemble_pencil(profile, intervals), L);
    slice.p = profile.p;
    return slice;
}

namespace {

std::vector<double> crossings(const std::vector<double>& r, const std::vector<double>& f) {
    std::vector<double> out;
    std::size_t last = r.size();
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (f[i] == 0.0) continue;
        if (last != r.size() && (f[i] > 0) != (f[last] > 0)) {
            const double s = f[last] / (f[last] - f[i]);
            out.push_back(r[last] + s * (r[i] - r[last]));
        }
        last = i;
    }
    return out;
}

}  // namespace

AuxiliaryZeros auxiliary_diagnostics(const radial::RadialProfile& profile) {
    const auto& r = profile.grid;
    const double c = 2.0 / (profile.p - 1.0);
    std::vector<double> z(r.size()), zeta(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        z[i] = r[i] * profile.shape_slopes[i] + c * profile.shape[i];
        zeta[i] = profile.shape_slopes[i];
    }
    return {crossings(r, z), crossings(r, zeta)};
}

}  // namespace lane_emden::spectrum
