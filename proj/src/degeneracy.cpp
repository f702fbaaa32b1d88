#include "lane_emden/degeneracy.hpp"

#include "lane_emden/numerics.hpp"
#include "lane_emden/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace lane_emden::degeneracy {

namespace {

std::vector<double> eigenvalues_at(const AnnulusSpec& spec, double p, int m, int L,
                                   const SampleOptions& opt) {
    try {
        const auto prof = radial::shoot_nodal(spec, p, m, opt.shooting);
        return spectrum::compute_spectrum(prof, L, opt.intervals).eigenvalues;
    } catch (const Error& e) {
        std::ostringstream os;
        os.precision(17);
        os << "at p = " << p << ": " << e.detail();
        throw Error(e.kind(), os.str());
    }
}

}  // namespace

std::vector<std::vector<double>> eigen_curves(const AnnulusSpec& spec, int m, int L,
                                              const std::vector<double>& p_grid,
                                              const SampleOptions& opt) {
    spec.validate();
    require(m >= 1, "zone count m must be >= 1");
    require(L >= 1, "eigenvalue count L must be >= 1");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        validate_exponent(p_grid[i]);
        require(i == 0 || p_grid[i] > p_grid[i - 1], "p grid must be strictly increasing");
    }
    return ordered_map<std::vector<double>>(p_grid.size(), opt.threads, [&](std::size_t i) {
        return eigenvalues_at(spec, p_grid[i], m, L, opt);
    });
}

std::vector<double> nu_curve(const AnnulusSpec& spec, int m, int l,
                             const std::vector<double>& p_grid, const SampleOptions& opt) {
    require(l >= 1, "eigenvalue index l must be >= 1");
    const auto rows = eigen_curves(spec, m, l, p_grid, opt);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[l - 1]);
    return out;
}

double harmonic_level(int N, int j) { return -static_cast<double>(j) * (N - 2 + j); }

bool admissible(int m, int l, int j) {
    if (l < 1 || l > m || j < 1) return false;
    return j >= 2 || l == m;
}

std::vector<double> geometric_grid(double p_min, double p_max, int samples) {
    require(p_min > 1.0 && p_max > p_min, "p range must satisfy 1 < p_min < p_max");
    require(samples >= 2, "at least 2 samples are needed");
    std::vector<double> g(samples);
    const double l0 = std::log(p_min - 1.0), l1 = std::log(p_max - 1.0);
    for (int i = 0; i < samples; ++i)
        g[i] = 1.0 + std::exp(l0 + (l1 - l0) * i / (samples - 1));
    g.front() = p_min;
    g.back() = p_max;
    return g;
}

namespace {

struct Pair {
    int l, j;
    double target;
};

int total_sign_changes(const std::vector<std::vector<double>>& nu, const std::vector<Pair>& pairs) {
    int total = 0;
    for (const auto& pr : pairs)
        for (std::size_t i = 1; i < nu.size(); ++i)
            if ((nu[i - 1][pr.l - 1] - pr.target > 0) != (nu[i][pr.l - 1] - pr.target > 0)) ++total;
    return total;
}

}  // namespace

ScanResult find_degeneracies(const AnnulusSpec& spec, int m, double p_min, double p_max,
                             int j_max, const ScanOptions& opt) {
    spec.validate();
    require(m >= 1, "zone count m must be >= 1");
    require(j_max >= 1, "j_max must be >= 1");
    require(p_min > 1.0 && p_max > p_min, "p range must satisfy 1 < p_min < p_max");
    require(opt.samples >= 2, "at least 2 samples are needed");

    std::vector<Pair> pairs;
    for (int l = 1; l <= m; ++l)
        for (int j = 1; j <= j_max; ++j)
            if (admissible(m, l, j)) pairs.push_back({l, j, harmonic_level(spec.N, j)});

    // Nested refinement n -> 2n - 1 keeps every earlier sample, so they are cached.
    std::map<double, std::vector<double>> cache;
    auto sample_grid = [&](const std::vector<double>& grid) {
        std::vector<double> todo;
        for (double p : grid)
            if (!cache.count(p)) todo.push_back(p);
        if (!todo.empty()) {
            const auto rows = eigen_curves(spec, m, m, todo, opt.sampling);
            for (std::size_t i = 0; i < todo.size(); ++i) cache[todo[i]] = rows[i];
        }
        std::vector<std::vector<double>> nu;
        for (double p : grid) nu.push_back(cache.at(p));
        return nu;
    };

    ScanResult res;
    int n = opt.samples;
    res.p_grid = geometric_grid(p_min, p_max, n);
    res.nu = sample_grid(res.p_grid);
    res.sign_change_history.push_back(total_sign_changes(res.nu, pairs));
    if (opt.refine) {
        for (int k = 0; k < opt.max_refinements; ++k) {
            n = 2 * n - 1;
            auto grid = geometric_grid(p_min, p_max, n);
            // reuse the exact coarse nodes so the cache hits
            for (std::size_t i = 0; i < res.p_grid.size(); ++i) grid[2 * i] = res.p_grid[i];
            res.p_grid = std::move(grid);
            res.nu = sample_grid(res.p_grid);
            res.sign_change_history.push_back(total_sign_changes(res.nu, pairs));
            const auto& h = res.sign_change_history;
            if (h[h.size() - 1] == h[h.size() - 2]) {
                res.stable = true;
                break;
            }
        }
    }

    const auto& grid = res.p_grid;
    for (const auto& pr : pairs) {
        auto f = [&](const std::vector<double>& row) { return row[pr.l - 1] - pr.target; };
        bool found = false;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            double flo = f(res.nu[i - 1]), fhi = f(res.nu[i]);
            if ((flo > 0) == (fhi > 0)) continue;
            found = true;
            double lo = grid[i - 1], hi = grid[i];
            auto g = [&](double p) {
                return eigenvalues_at(spec, p, m, pr.l, opt.sampling)[pr.l - 1] - pr.target;
            };
            while (hi - lo > opt.p_tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = g(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    flo = fhi = 0.0;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                    fhi = fm;
                }
            }
            // final secant step inside the bracket
            double pk = (flo == fhi) ? lo : lo - flo * (hi - lo) / (fhi - flo);
            if (!(pk >= lo && pk <= hi)) pk = 0.5 * (lo + hi);
            DegeneracyPoint pt;
            pt.p_k = pk;
            pt.l = pr.l;
            pt.j = pr.j;
            pt.target = pr.target;
            pt.residual = std::abs(g(pk));
            res.points.push_back(pt);
        }
        if (!found && f(res.nu.front()) > 0) {
            std::ostringstream os;
            os << "no crossing of nu_" << pr.l << " with level " << pr.target << " (j = " << pr.j
               << ") inside [" << p_min << ", " << p_max << "]; the range may be too small";
            res.warnings.push_back(os.str());
        }
    }

    std::sort(res.points.begin(), res.points.end(), [](const auto& x, const auto& y) {
        if (x.p_k != y.p_k) return x.p_k < y.p_k;
        return std::tie(x.l, x.j) < std::tie(y.l, y.j);
    });
    res.points.erase(std::unique(res.points.begin(), res.points.end(),
                                 [&](const auto& x, const auto& y) {
                                     return x.l == y.l && x.j == y.j &&
                                            std::abs(x.p_k - y.p_k) <= opt.p_tol;
                                 }),
                     res.points.end());
    for (std::size_t i = 1; i < res.points.size(); ++i) {
        if (res.points[i].p_k - res.points[i - 1].p_k < opt.collision_tol) {
            res.points[i].near_collision = true;
            res.points[i - 1].near_collision = true;
        }
    }
    return res;
}

std::uint64_t spherical_multiplicity(int N, int j) {
    require(N >= 2, "dimension N must be >= 2");
    require(j >= 0, "harmonic order j must be >= 0");
    if (j == 0) return 1;
    if (N == 2) return 2;
    // (N+2j-2)(N+j-3)! / ((N-2)! j!) = (N+2j-2)/(N-2) * C(N+j-3, j)
    unsigned __int128 c = 1;
    const auto limit = static_cast<unsigned __int128>(UINT64_MAX);
    for (int i = 1; i <= j; ++i) {
        c = c * static_cast<unsigned>(N - 3 + i) / static_cast<unsigned>(i);
        require(c <= limit, "spherical multiplicity overflows 64 bits");
    }
    c = c * static_cast<unsigned>(N + 2 * j - 2) / static_cast<unsigned>(N - 2);
    require(c <= limit, "spherical multiplicity overflows 64 bits");
    return static_cast<std::uint64_t>(c);
}

MorseReport morse_index(const spectrum::SpectrumSlice& slice, const AnnulusSpec& spec, int m,
                        double boundary_tol) {
    require(m >= 1, "zone count m must be >= 1");
    int negative = 0;
    for (double v : slice.eigenvalues) negative += v < 0;
    if (negative < m || static_cast<int>(slice.eigenvalues.size()) < m) {
        std::ostringstream os;
        os << "slice has " << negative << " negative eigenvalues, expected at least " << m;
        throw Error(ErrorKind::InconsistentSpectrum, os.str());
    }
    const int N = spec.N;
    MorseReport rep;
    rep.p = slice.p;
    rep.lower_bound = static_cast<std::uint64_t>(m - 1) * (N + 1) + 1;
    for (int l = 0; l < m; ++l) {
        const double nu = slice.eigenvalues[l];
        const double J = 0.5 * (std::sqrt(double(N - 2) * (N - 2) - 4.0 * nu) - N + 2);
        rep.J_values.push_back(J);
        const double nearest = std::round(J);
        if (std::abs(J - nearest) <= boundary_tol) rep.degenerate_boundary = true;
        for (int j = 0; j < J; ++j) {
            if (std::abs(J - j) <= boundary_tol) continue;
            rep.morse_index += spherical_multiplicity(N, j);
        }
    }
    return rep;
}

MorseReport morse_index_at(const AnnulusSpec& spec, double p, int m, const SampleOptions& opt) {
    const auto prof = radial::shoot_nodal(spec, p, m, opt.shooting);
    const auto slice = spectrum::compute_spectrum(prof, m, opt.intervals);
    return morse_index(slice, spec, m);
}

}  // namespace lane_emden::degeneracy
