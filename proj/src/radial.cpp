#include "lane_emden/radial.hpp"

#include "lane_emden/numerics.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace lane_emden::radial {

namespace {

namespace odeint = boost::numeric::odeint;

template <std::size_t Dim>
using State = std::array<double, Dim>;

// Normalized shooting problem: v = alpha * w with w'(a) = 1 turns the power
// nonlinearity into lambda |w|^{p-1} w with lambda = alpha^{p-1}. Dim == 4 carries
// the sensitivity dw/dlambda alongside.
template <std::size_t Dim>
struct ShapeSystem {
    double n1;
    double lambda;
    double p;

    void operator()(const State<Dim>& x, State<Dim>& dx, double r) const {
        const double w = x[0];
        const double aw = std::abs(w);
        const double pw = aw > 0.0 ? std::pow(aw, p - 1.0) : 0.0;
        dx[0] = x[1];
        dx[1] = -n1 / r * x[1] - lambda * pw * w;
        if constexpr (Dim == 4) {
            dx[2] = x[3];
            dx[3] = -n1 / r * x[3] - lambda * p * pw * x[2] - pw * w;
        }
    }
};

template <std::size_t Dim>
struct Integration {
    std::vector<double> w, dw;
    std::vector<double> zeros;
    int zero_count = 0;
    bool truncated = false;
    State<Dim> end{};
    double max_abs = 0.0;
};

constexpr long kMaxSteps = 20'000'000;

template <std::size_t Dim>
Integration<Dim> integrate_shape(const AnnulusSpec& spec, double p, double lambda,
                                 const IvpOptions& opt, int stop_after, bool record) {
    using Stepper = odeint::runge_kutta_dopri5<State<Dim>>;
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, Stepper());
    const ShapeSystem<Dim> sys{double(spec.N - 1), lambda, p};
    const auto grid = numerics::uniform_grid(spec.a, spec.b, opt.grid_intervals);

    Integration<Dim> out;
    State<Dim> x{};
    x[1] = 1.0;
    if (record) {
        out.w.reserve(grid.size());
        out.dw.reserve(grid.size());
        out.w.push_back(0.0);
        out.dw.push_back(1.0);
    }
    double dt = grid[1] - grid[0];
    int sign = 1;
    long steps = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double t = grid[i];
        const double target = grid[i + 1];
        while (t < target) {
            double step = std::min(dt, target - t);
            const bool hits = step >= target - t;
            const State<Dim> x0 = x;
            const double t0 = t;
            if (stepper.try_step(sys, x, t, step) == odeint::success) {
                if (hits) t = target;
                dt = step;
                for (double c : x) {
                    if (!std::isfinite(c)) {
                        std::ostringstream os;
                        os << "non-finite state after r = " << t0 << " (lambda = " << lambda << ")";
                        throw Error(ErrorKind::BlowUp, os.str());
                    }
                }
                out.max_abs = std::max(out.max_abs, std::abs(x[0]));
                const int s = (x[0] > 0) - (x[0] < 0);
                if (s != 0 && s != sign) {
                    ++out.zero_count;
                    sign = s;
                    if (record) {
                        const numerics::Hermite herm{t0, t, x0[0], x[0], x0[1], x[1]};
                        out.zeros.push_back(numerics::bisect(
                            [&](double r) { return herm.value(r); }, t0, t, opt.zero_tol));
                    }
                    if (stop_after >= 0 && out.zero_count >= stop_after) {
                        out.truncated = true;
                        return out;
                    }
                }
            } else {
                dt = step;
            }
            if (++steps > kMaxSteps)
                throw Error(ErrorKind::NoConvergence, "radial integrator exceeded step budget");
        }
        if (record) {
            out.w.push_back(x[0]);
            out.dw.push_back(x[1]);
        }
    }
    out.end = x;
    return out;
}

// Largest |w| over the grid, refined at interior extrema through the Hermite interpolant.
double refined_sup(const std::vector<double>& r, const std::vector<double>& w,
                   const std::vector<double>& dw) {
    double best = 0.0;
    for (double v : w) best = std::max(best, std::abs(v));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (dw[i] == 0.0 || (dw[i] > 0) == (dw[i + 1] > 0)) continue;
        if (dw[i + 1] == 0.0) continue;
        const numerics::Hermite herm{r[i], r[i + 1], w[i], w[i + 1], dw[i], dw[i + 1]};
        const double x = numerics::bisect([&](double s) { return herm.derivative(s); }, r[i],
                                          r[i + 1], 1e-15 * r[i + 1]);
        best = std::max(best, std::abs(herm.value(x)));
    }
    return best;
}

int sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace

Trajectory integrate_radial_ivp(const AnnulusSpec& spec, double p, double alpha,
                                const IvpOptions& options) {
    spec.validate();
    validate_exponent(p);
    require(alpha != 0.0 && std::isfinite(alpha), "initial slope alpha must be nonzero");
    const double lambda = std::pow(std::abs(alpha), p - 1.0);
    auto run = integrate_shape<2>(spec, p, lambda, options, -1, true);
    Trajectory tr;
    tr.grid = numerics::uniform_grid(spec.a, spec.b, options.grid_intervals);
    tr.values.resize(run.w.size());
    tr.slopes.resize(run.dw.size());
    for (std::size_t i = 0; i < run.w.size(); ++i) {
        tr.values[i] = alpha * run.w[i];
        tr.slopes[i] = alpha * run.dw[i];
    }
    tr.zeros = std::move(run.zeros);
    return tr;
}

double RadialProfile::sup_norm() const { return std::exp(log_sup_norm); }
double RadialProfile::alpha_star() const { return std::exp(log_alpha); }
double RadialProfile::sup_norm_pow(double e) const { return std::exp(e * log_sup_norm); }
double RadialProfile::value(std::size_t i) const { return shape[i] * sup_norm(); }
double RadialProfile::slope(std::size_t i) const { return shape_slopes[i] * sup_norm(); }

std::vector<double> RadialProfile::values() const {
    std::vector<double> v(shape.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = value(i);
    return v;
}

std::vector<double> RadialProfile::slopes() const {
    std::vector<double> v(shape.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = slope(i);
    return v;
}

namespace {
numerics::Hermite hermite_at(const RadialProfile& prof, double r) {
    const double h = prof.step();
    const auto last = static_cast<double>(prof.grid.size() - 2);
    const auto i = static_cast<std::size_t>(std::clamp(std::floor((r - prof.grid[0]) / h), 0.0, last));
    return {prof.grid[i], prof.grid[i + 1], prof.shape[i], prof.shape[i + 1],
            prof.shape_slopes[i], prof.shape_slopes[i + 1]};
}
}  // namespace

double RadialProfile::shape_at(double r) const { return hermite_at(*this, r).value(r); }
double RadialProfile::shape_slope_at(double r) const {
    return hermite_at(*this, r).derivative(r);
}

double RadialProfile::potential_at(double r) const {
    const double u = std::abs(shape_at(r));
    if (u == 0.0) return 0.0;
    return p * std::exp((p - 1.0) * (log_sup_norm + std::log(u)));
}

RadialProfile shoot_nodal(const AnnulusSpec& spec, double p, int m,
                          const ShootingOptions& options) {
    spec.validate();
    validate_exponent(p);
    require(m >= 1, "zone count m must be >= 1");
    const auto& ivp = options.ivp;

    auto count = [&](double x) {
        return integrate_shape<2>(spec, p, std::exp(x), ivp, m + 1, false).zero_count;
    };

    const double step = options.log_lambda_hint ? std::log(2.0) : std::log(16.0);
    double x = options.log_lambda_hint
                   ? *options.log_lambda_hint
                   : std::clamp(0.0, (p - 1.0) * std::log(options.alpha_min),
                                (p - 1.0) * std::log(options.alpha_max));
    auto out_of_range = [&](double v) {
        std::ostringstream os;
        os << "no slope bracket for m = " << m << " at p = " << p << " (log lambda reached " << v
           << ")";
        return Error(ErrorKind::BracketFailure, os.str());
    };

    double lo, hi;
    int zlo, zhi;
    int z = count(x);
    if (z >= m) {
        hi = x;
        zhi = z;
        do {
            x -= step;
            if (x < options.log_lambda_floor) throw out_of_range(x);
            z = count(x);
            if (z >= m) {
                hi = x;
                zhi = z;
            }
        } while (z >= m);
        lo = x;
        zlo = z;
    } else {
        lo = x;
        zlo = z;
        do {
            x += step;
            if (x > options.log_lambda_ceiling) throw out_of_range(x);
            z = count(x);
            if (z < m) {
                lo = x;
                zlo = z;
            }
        } while (z < m);
        hi = x;
        zhi = z;
    }

    // Narrow until the m-th zero is the only one crossing b inside the bracket.
    while (!(zlo == m - 1 && zhi == m)) {
        if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi)))
            throw Error(ErrorKind::NoConvergence, "zero-count bracket collapsed");
        const double mid = 0.5 * (lo + hi);
        const int zm = count(mid);
        if (zm >= m) {
            hi = mid;
            zhi = zm;
        } else {
            lo = mid;
            zlo = zm;
        }
    }

    struct Eval {
        double g, dg, scale;
    };
    auto eval = [&](double xx) {
        const double lam = std::exp(xx);
        auto run = integrate_shape<4>(spec, p, lam, ivp, -1, false);
        return Eval{run.end[0], lam * run.end[2], run.max_abs};
    };

    // Safeguarded Newton on w(b) in log(lambda).
    Eval elo = eval(lo), ehi = eval(hi);
    const int sign_lo = sgn(elo.g);
    double xn = lo - elo.g * (hi - lo) / (ehi.g - elo.g);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    bool converged = false;
    Eval e{};
    for (int it = 0; it < options.max_iterations; ++it) {
        x = xn;
        e = eval(x);
        if (std::abs(e.g) <= options.residual_tol * e.scale) {
            converged = true;
            break;
        }
        if (sgn(e.g) == sign_lo) lo = x;
        else hi = x;
        if (hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) break;
        xn = x - e.g / e.dg;
        if (!std::isfinite(xn) || !(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    }
    if (!converged && std::abs(e.g) > 1e3 * options.residual_tol * e.scale) {
        std::ostringstream os;
        os << "shooting residual |v(b)|/sup = " << std::abs(e.g) / e.scale << " at p = " << p
           << ", m = " << m;
        throw Error(ErrorKind::NoConvergence, os.str());
    }

    auto rec = integrate_shape<4>(spec, p, std::exp(x), ivp, -1, true);
    RadialProfile prof;
    prof.spec = spec;
    prof.p = p;
    prof.m = m;
    prof.grid = numerics::uniform_grid(spec.a, spec.b, ivp.grid_intervals);
    const double cut = spec.b - 1e-9 * spec.width();
    for (double zr : rec.zeros)
        if (zr < cut) prof.zeros.push_back(zr);
    if (static_cast<int>(prof.zeros.size()) != m - 1) {
        std::ostringstream os;
        os << "converged trajectory has " << prof.zeros.size() << " interior zeros, expected "
           << m - 1;
        throw Error(ErrorKind::NoConvergence, os.str());
    }
    const double sup = refined_sup(prof.grid, rec.w, rec.dw);
    prof.shape.resize(rec.w.size());
    prof.shape_slopes.resize(rec.dw.size());
    for (std::size_t i = 0; i < rec.w.size(); ++i) {
        prof.shape[i] = rec.w[i] / sup;
        prof.shape_slopes[i] = rec.dw[i] / sup;
    }
    prof.log_alpha = x / (p - 1.0);
    prof.log_sup_norm = prof.log_alpha + std::log(sup);
    return prof;
}

double ode_residual(const RadialProfile& prof) {
    // Local defect: restart the ODE from the stored state at r_{i-1}, integrate to
    // r_{i+1} with a tight tolerance and compare with the stored state there. The
    // mismatch is converted to second-derivative units, like a difference quotient
    // of the stored slopes, but stays meaningful where |v|^{p-1} v is not smooth.
    const double h = prof.step();
    const double kappa = prof.sup_norm_pow(prof.p - 1.0);
    const double scale = std::exp(-prof.log_sup_norm) + kappa;
    using Stepper = odeint::runge_kutta_dopri5<State<2>>;
    const ShapeSystem<2> sys{prof.spec.N - 1.0, kappa, prof.p};
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < prof.grid.size(); ++i) {
        State<2> x{prof.shape[i - 1], prof.shape_slopes[i - 1]};
        odeint::integrate_adaptive(odeint::make_controlled(1e-15, 1e-14, Stepper()), sys, x,
                                   prof.grid[i - 1], prof.grid[i + 1], 0.25 * h);
        const double d_slope = std::abs(x[1] - prof.shape_slopes[i + 1]) / (2.0 * h);
        const double d_value = std::abs(x[0] - prof.shape[i + 1]) / (4.0 * h * h);
        worst = std::max(worst, std::max(d_slope, d_value) / scale);
    }
    return worst;
}

double relative_sup_distance(const RadialProfile& x, const RadialProfile& y) {
    const double ratio = std::exp(y.log_sup_norm - x.log_sup_norm);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.grid.size(); ++i) {
        const double r = std::clamp(x.grid[i], y.grid.front(), y.grid.back());
        worst = std::max(worst, std::abs(x.shape[i] - ratio * y.shape_at(r)));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Nehari construction

namespace {

struct ZoneSolution {
    RadialProfile profile;
    double gradient = 0.0;     // int r^{N-1} |u'|^2 in true units
    double left_slope = 0.0;   // |u'| at the inner end
    double right_slope = 0.0;  // |u'| at the outer end
};

class ZoneSolver {
public:
    ZoneSolver(int N, double p, int zones, const ShootingOptions& base)
        : N_(N), p_(p), base_(base), hints_(static_cast<std::size_t>(zones)) {}

    ZoneSolution solve(std::size_t zone, double lo, double hi) {
        if (!(hi > lo)) throw Error(ErrorKind::InvalidPlacement, "zone with empty interval");
        ShootingOptions opts = base_;
        opts.log_lambda_hint = hints_[zone];
        ZoneSolution out;
        out.profile = shoot_nodal(AnnulusSpec{lo, hi, N_}, p_, 1, opts);
        hints_[zone] = (p_ - 1.0) * out.profile.log_alpha;
        ++solves_;
        const int n1 = N_ - 1;
        const double g = zone_integral(out.profile, lo, hi, [n1](double r, double, double du) {
            return std::pow(r, n1) * du * du;
        });
        out.gradient = std::exp(2.0 * out.profile.log_sup_norm) * g;
        out.left_slope = std::abs(out.profile.slope(0));
        out.right_slope = std::abs(out.profile.slope(out.profile.grid.size() - 1));
        return out;
    }

    int solves() const { return solves_; }

private:
    int N_;
    double p_;
    ShootingOptions base_;
    std::vector<std::optional<double>> hints_;
    int solves_ = 0;
};

}  // namespace

NehariResult nehari_minimize(const AnnulusSpec& spec, double p, int m,
                             const NehariOptions& options) {
    spec.validate();
    validate_exponent(p);
    require(m >= 2, "nehari_minimize requires m >= 2; use shoot_nodal for m = 1");

    const double c_energy = 0.5 - 1.0 / (p + 1.0);
    const std::size_t nz = static_cast<std::size_t>(m);
    std::vector<double> r(nz + 1);
    r.front() = spec.a;
    r.back() = spec.b;
    if (options.initial_zeros.empty()) {
        for (std::size_t i = 1; i < nz; ++i)
            r[i] = spec.a + spec.width() * static_cast<double>(i) / static_cast<double>(m);
    } else {
        require(options.initial_zeros.size() == nz - 1, "initial_zeros must hold m-1 radii");
        std::copy(options.initial_zeros.begin(), options.initial_zeros.end(), r.begin() + 1);
    }
    auto check_order = [&](const std::vector<double>& rr) {
        for (std::size_t i = 0; i < nz; ++i)
            if (!(rr[i + 1] > rr[i]))
                throw Error(ErrorKind::InvalidPlacement, "zero placement left the ordered simplex");
    };
    check_order(r);

    ZoneSolver solver(spec.N, p, m, options.shooting);
    std::vector<ZoneSolution> zones(nz);
    for (std::size_t i = 0; i < nz; ++i) zones[i] = solver.solve(i, r[i], r[i + 1]);

    // Derivative-free coordinate descent on Lambda.
    const int bits = std::max(8, static_cast<int>(std::ceil(-std::log2(options.coarse_tol))));
    for (int sweep = 0; sweep < options.coarse_sweeps; ++sweep) {
        for (std::size_t k = 1; k < nz; ++k) {
            const double lo = r[k - 1], hi = r[k + 1];
            const double pad = 1e-3 * (hi - lo);
            auto pair_energy = [&](double x) {
                auto left = solver.solve(k - 1, lo, x);
                auto right = solver.solve(k, x, hi);
                return left.gradient + right.gradient;
            };
            boost::uintmax_t max_iter = 200;
            const auto best =
                boost::math::tools::brent_find_minima(pair_energy, lo + pad, hi - pad, bits, max_iter);
            r[k] = best.first;
            zones[k - 1] = solver.solve(k - 1, lo, r[k]);
            zones[k] = solver.solve(k, r[k], hi);
        }
    }

    // Newton on the stationarity conditions dLambda/dr_k = 0, which read
    // r_k^{N-1} (|u_{k+1}'(r_k)|^2 - |u_k'(r_k)|^2) / 2 = 0, i.e. C^1 gluing.
    const std::size_t nk = nz - 1;
    auto gradient = [&](const std::vector<ZoneSolution>& zs, const std::vector<double>& rr) {
        Eigen::VectorXd g(static_cast<Eigen::Index>(nk));
        for (std::size_t k = 1; k < nz; ++k) {
            const double lk = zs[k].left_slope, rk = zs[k - 1].right_slope;
            g[static_cast<Eigen::Index>(k - 1)] =
                0.5 * std::pow(rr[k], spec.N - 1) * (lk * lk - rk * rk);
        }
        return g;
    };
    auto mismatch = [&](const std::vector<ZoneSolution>& zs) {
        double worst = 0.0;
        for (std::size_t k = 1; k < nz; ++k)
            worst = std::max(worst, std::abs(zs[k].left_slope - zs[k - 1].right_slope) /
                                        zs[k].left_slope);
        return worst;
    };

    const double delta = 1e-7 * spec.width();
    for (int it = 0; it < options.max_newton; ++it) {
        if (mismatch(zones) <= options.stationarity_tol) break;
        const Eigen::VectorXd g = gradient(zones, r);
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(g.size(), g.size());
        for (std::size_t k = 1; k < nz; ++k) {
            auto rp = r;
            rp[k] += delta;
            auto zp = zones;
            zp[k - 1] = solver.solve(k - 1, rp[k - 1], rp[k]);
            zp[k] = solver.solve(k, rp[k], rp[k + 1]);
            jac.col(static_cast<Eigen::Index>(k - 1)) = (gradient(zp, rp) - g) / delta;
        }
        const Eigen::VectorXd dr = jac.partialPivLu().solve(-g);
        double damp = 1.0;
        std::vector<double> trial;
        for (int halving = 0;; ++halving) {
            trial = r;
            for (std::size_t k = 1; k < nz; ++k)
                trial[k] += damp * dr[static_cast<Eigen::Index>(k - 1)];
            bool ordered = true;
            for (std::size_t i = 0; i < nz; ++i) ordered = ordered && trial[i + 1] > trial[i];
            if (ordered) break;
            if (halving > 30) check_order(trial);
            damp *= 0.5;
        }
        r = trial;
        for (std::size_t i = 0; i < nz; ++i) zones[i] = solver.solve(i, r[i], r[i + 1]);
        if (damp * dr.cwiseAbs().maxCoeff() <= 1e-15 * spec.width()) break;
    }

    NehariResult res;
    res.max_slope_mismatch = mismatch(zones);
    if (res.max_slope_mismatch > 1e-6) {
        std::ostringstream os;
        os << "zero placement did not reach C1 gluing (mismatch " << res.max_slope_mismatch << ")";
        throw Error(ErrorKind::NoConvergence, os.str());
    }
    res.placement.assign(r.begin() + 1, r.end() - 1);
    for (const auto& z : zones) {
        res.zone_energies.push_back(c_energy * z.gradient);
        res.energy += c_energy * z.gradient;
    }
    res.subproblem_solves = solver.solves();

    // Glue the zone solutions with alternating signs onto a uniform grid over [a, b].
    RadialProfile& prof = res.profile;
    prof.spec = spec;
    prof.p = p;
    prof.m = m;
    prof.grid = numerics::uniform_grid(spec.a, spec.b, options.shooting.ivp.grid_intervals);
    prof.zeros = res.placement;
    double log_sup = zones[0].profile.log_sup_norm;
    for (const auto& z : zones) log_sup = std::max(log_sup, z.profile.log_sup_norm);
    prof.log_sup_norm = log_sup;
    prof.log_alpha = zones[0].profile.log_alpha;
    prof.shape.resize(prof.grid.size());
    prof.shape_slopes.resize(prof.grid.size());
    std::size_t zi = 0;
    for (std::size_t j = 0; j < prof.grid.size(); ++j) {
        const double x = prof.grid[j];
        while (zi + 1 < nz && x > r[zi + 1]) ++zi;
        const auto& zp = zones[zi].profile;
        const double factor = ((zi % 2 == 0) ? 1.0 : -1.0) * std::exp(zp.log_sup_norm - log_sup);
        const double xc = std::clamp(x, zp.grid.front(), zp.grid.back());
        prof.shape[j] = factor * zp.shape_at(xc);
        prof.shape_slopes[j] = factor * zp.shape_slope_at(xc);
    }
    prof.shape.front() = 0.0;
    prof.shape.back() = 0.0;
    return res;
}

// ---------------------------------------------------------------------------

double NodalZoneReport::total_energy() const {
    double s = 0.0;
    for (const auto& z : zones) s += z.energy;
    return s;
}

NodalZoneReport nehari_report(const RadialProfile& profile, double tolerance) {
    NodalZoneReport rep;
    std::vector<double> ends{profile.spec.a};
    ends.insert(ends.end(), profile.zeros.begin(), profile.zeros.end());
    ends.push_back(profile.spec.b);
    const int n1 = profile.spec.N - 1;
    const double p = profile.p;
    const double kappa = profile.sup_norm_pow(p - 1.0);
    const double s2 = std::exp(2.0 * profile.log_sup_norm);
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        NodalZone z;
        z.lo = ends[i];
        z.hi = ends[i + 1];
        const double g = zone_integral(profile, z.lo, z.hi, [n1](double r, double, double du) {
            return std::pow(r, n1) * du * du;
        });
        const double pw = kappa * zone_integral(profile, z.lo, z.hi, [n1, p](double r, double u, double) {
            return std::pow(r, n1) * std::pow(std::abs(u), p + 1.0);
        });
        z.gradient = s2 * g;
        z.power = s2 * pw;
        z.energy = (0.5 - 1.0 / (p + 1.0)) * z.gradient;
        z.nehari_residual = std::abs(g - pw) / g;
        z.flagged = z.nehari_residual > tolerance;
        rep.zones.push_back(z);
    }
    return rep;
}

}  // namespace lane_emden::radial
