#include "lane_emden/perturbed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>

namespace lane_emden::perturbed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double trig(const std::vector<TrigMode>& modes, double theta) {
    double s = 0.0;
    for (const auto& md : modes) s += md.c * std::cos(md.k * theta) + md.d * std::sin(md.k * theta);
    return s;
}

double trig_derivative(const std::vector<TrigMode>& modes, double theta) {
    double s = 0.0;
    for (const auto& md : modes)
        s += md.k * (md.d * std::cos(md.k * theta) - md.c * std::sin(md.k * theta));
    return s;
}

struct Displacement {
    double f, f_r, f_theta;
};

Displacement displacement(const DeformationSpec& def, double a, double b, double r, double theta) {
    const double s = (r - a) / (b - a);
    const double gi = trig(def.inner, theta), go = trig(def.outer, theta);
    return {(1.0 - s) * gi + s * go, (go - gi) / (b - a),
            (1.0 - s) * trig_derivative(def.inner, theta) + s * trig_derivative(def.outer, theta)};
}

}  // namespace

void DeformationSpec::validate() const {
    for (const auto* list : {&inner, &outer})
        for (const auto& md : *list) {
            require(md.k >= 0, "deformation mode order k must be >= 0");
            require(std::isfinite(md.c) && std::isfinite(md.d), "deformation coefficients must be finite");
        }
}

DeformationSpec DeformationSpec::dilation(double a, double b) {
    return {{{0, a, 0.0}}, {{0, b, 0.0}}};
}

DeformationSpec DeformationSpec::rotated(double theta0) const {
    auto rot = [&](std::vector<TrigMode> modes) {
        for (auto& md : modes) {
            const double c = md.c, d = md.d, ck = std::cos(md.k * theta0), sk = std::sin(md.k * theta0);
            md.c = c * ck - d * sk;
            md.d = c * sk + d * ck;
        }
        return modes;
    };
    return {rot(inner), rot(outer)};
}

void PolarGrid::validate() const {
    AnnulusSpec{a, b, 2}.validate();
    std::ostringstream os;
    if (n_theta < 8 || n_theta % 2 != 0) {
        os << "n_theta must be even and >= 8 (got " << n_theta << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
    if (n_r < 16) {
        os << "n_r must be >= 16 (got " << n_r << ")";
        throw Error(ErrorKind::InvalidInput, os.str());
    }
}

double PolarGrid::h_theta() const { return kTwoPi / n_theta; }

LocalMap local_map(const DeformationSpec& def, double a, double b, double t, double r,
                   double theta) {
    const auto d = displacement(def, a, b, r, theta);
    LocalMap out;
    const double j11 = 1.0 + t * d.f_r, j12 = t * d.f_theta / r, j22 = 1.0 + t * d.f / r;
    out.J_polar << j11, j12, 0.0, j22;
    out.det = j11 * j22;
    // det * J^{-1} J^{-T} for the upper triangular J
    out.M_polar << (j22 * j22 + j12 * j12) / out.det, -j12 * j11 / out.det, -j12 * j11 / out.det,
        j11 * j11 / out.det;
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    out.J = rot * out.J_polar * rot.transpose();
    out.M = rot * out.M_polar * rot.transpose();
    return out;
}

JacobianField build_deformation(const DeformationSpec& def, const PolarGrid& grid, double t) {
    def.validate();
    grid.validate();
    require(std::isfinite(t), "deformation amplitude t must be finite");
    JacobianField out;
    out.J.resize(grid.node_count());
    out.M.resize(grid.node_count());
    out.det.resize(grid.node_count());
    out.min_det = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid.n_r; ++i)
        for (int k = 0; k < grid.n_theta; ++k) {
            const auto lm = local_map(def, grid.a, grid.b, t, grid.radius(i), grid.angle(k));
            const auto n = grid.node(i, k);
            out.J[n] = lm.J;
            out.M[n] = lm.M;
            out.det[n] = lm.det;
            out.min_det = std::min(out.min_det, lm.det);
            if (!(lm.det > 0.0)) {
                std::ostringstream os;
                os << "det J = " << lm.det << " at r = " << grid.radius(i)
                   << ", theta = " << grid.angle(k) << " for t = " << t;
                throw Error(ErrorKind::Fold, os.str());
            }
        }
    return out;
}

double safety_bound(const DeformationSpec& def, double a, double b, double det_floor, double cap) {
    def.validate();
    require(det_floor > 0.0 && det_floor < 1.0, "det floor must lie in (0, 1)");
    constexpr int probe_r = 256, probe_theta = 1024;
    double bound = cap;
    for (int i = 0; i <= probe_r; ++i) {
        const double r = a + (b - a) * i / probe_r;
        for (int k = 0; k < probe_theta; ++k) {
            const auto d = displacement(def, a, b, r, kTwoPi * k / probe_theta);
            // det(t) = (1 + al t)(1 + be t); first |t| where it reaches the floor
            const double al = d.f_r, be = d.f / r;
            const double qa = al * be, qb = al + be, qc = 1.0 - det_floor;
            auto consider = [&](double root) {
                if (std::isfinite(root)) bound = std::min(bound, std::abs(root));
            };
            if (std::abs(qa) < 1e-300) {
                if (qb != 0.0) consider(-qc / qb);
            } else {
                const double disc = qb * qb - 4.0 * qa * qc;
                if (disc >= 0.0) {
                    const double sq = std::sqrt(disc);
                    const double q = -0.5 * (qb + std::copysign(sq, qb));
                    if (q != 0.0) {
                        consider(q / qa);
                        consider(qc / q);
                    }
                }
            }
        }
    }
    return bound;
}

double PerturbedSolution::value(int i, int k) const {
    return std::exp(log_scale) * w[grid.node(i, k)];
}

double PerturbedSolution::sup_abs_w() const {
    double s = 0.0;
    for (double v : w) s = std::max(s, std::abs(v));
    return s;
}

std::vector<double> radial_on_grid(const radial::RadialProfile& profile, const PolarGrid& grid) {
    grid.validate();
    require(profile.spec.a == grid.a && profile.spec.b == grid.b,
            "radial profile and grid describe different annuli");
    std::vector<double> w(grid.node_count(), 0.0);
    for (int i = 1; i < grid.n_r; ++i) {
        const double v = profile.shape_at(grid.radius(i));
        for (int k = 0; k < grid.n_theta; ++k) w[grid.node(i, k)] = v;
    }
    return w;
}

namespace detail {

Eigen::MatrixXd staggered_interpolation(int n) {
    const double h = kTwoPi / n;
    Eigen::MatrixXd out(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const int m = k - l;
            const double x = (m + 0.5) * h;
            out(k, l) = ((m % 2 == 0) ? 1.0 : -1.0) / (n * std::tan(0.5 * x));
        }
    return out;
}

Eigen::MatrixXd staggered_derivative(int n) {
    const double h = kTwoPi / n;
    Eigen::MatrixXd out(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const int m = k - l;
            const double s = std::sin(0.5 * (m + 0.5) * h);
            out(k, l) = -((m % 2 == 0) ? 1.0 : -1.0) / (2.0 * n * s * s);
        }
    return out;
}

}  // namespace detail

namespace {

// Symmetric block tridiagonal operator, one block per interior ring.
struct RingOperator {
    std::vector<Eigen::MatrixXd> diag;   // ring i = b + 1
    std::vector<Eigen::MatrixXd> upper;  // coupling of blocks b and b + 1
    Eigen::VectorXd weight;              // lumped h_r h_theta r det J at interior nodes
};

// Discrete form of  int (M grad v) . grad v  r dr dtheta: flux differences in r,
// trigonometric interpolation in theta evaluated at staggered angles.
RingOperator assemble(const DeformationSpec& def, const PolarGrid& g, double t) {
    const int n = g.n_theta, rings = g.n_r - 1;
    const double hr = g.h_r(), ht = g.h_theta();
    const Eigen::MatrixXd E = detail::staggered_derivative(n);
    const Eigen::MatrixXd Is = detail::staggered_interpolation(n);

    RingOperator op;
    op.diag.assign(rings, Eigen::MatrixXd::Zero(n, n));
    op.upper.assign(std::max(rings - 1, 0), Eigen::MatrixXd::Zero(n, n));
    op.weight.resize(static_cast<Eigen::Index>(rings) * n);

    auto metric = [&](double r, double theta) {
        auto lm = local_map(def, g.a, g.b, t, r, theta);
        if (!(lm.det > 0.0)) {
            std::ostringstream os;
            os << "det J = " << lm.det << " at r = " << r << ", theta = " << theta << " for t = " << t;
            throw Error(ErrorKind::Fold, os.str());
        }
        return lm;
    };
    auto interior = [&](int ring) { return ring >= 1 && ring <= rings; };

    for (int i = 0; i < g.n_r; ++i) {
        const double rm = g.a + (i + 0.5) * hr;
        Eigen::VectorXd crr(n), cmix(n);
        for (int k = 0; k < n; ++k) {
            crr(k) = ht * rm * metric(rm, g.angle(k)).M_polar(0, 0) / hr;
            cmix(k) = 2.0 * hr * ht * metric(rm, g.angle(k) + 0.5 * ht).M_polar(0, 1);
        }
        if (interior(i)) op.diag[i - 1].diagonal() += crr;
        if (interior(i + 1)) op.diag[i].diagonal() += crr;
        if (interior(i) && interior(i + 1)) op.upper[i - 1].diagonal() -= crr;

        if (cmix.cwiseAbs().maxCoeff() > 0.0) {
            // radial difference P_a and angular derivative R_b of the two rings
            const Eigen::MatrixXd P0 = -Is / hr, P1 = Is / hr, R = 0.5 * E;
            const Eigen::MatrixXd CR = cmix.asDiagonal() * R;
            const Eigen::MatrixXd CP0 = cmix.asDiagonal() * P0, CP1 = cmix.asDiagonal() * P1;
            auto sym = [&](const Eigen::MatrixXd& Pa, const Eigen::MatrixXd& CPb) {
                return Eigen::MatrixXd(0.5 * (Pa.transpose() * CR + R.transpose() * CPb));
            };
            if (interior(i)) op.diag[i - 1] += sym(P0, CP0);
            if (interior(i + 1)) op.diag[i] += sym(P1, CP1);
            if (interior(i) && interior(i + 1)) op.upper[i - 1] += sym(P0, CP1);
        }
    }
    for (int i = 1; i <= rings; ++i) {
        const double r = g.radius(i);
        Eigen::VectorXd ctt(n);
        for (int k = 0; k < n; ++k) {
            ctt(k) = hr * ht * metric(r, g.angle(k) + 0.5 * ht).M_polar(1, 1) / r;
            op.weight((i - 1) * n + k) = hr * ht * r * metric(r, g.angle(k)).det;
        }
        op.diag[i - 1] += E.transpose() * ctt.asDiagonal() * E;
        op.diag[i - 1] = 0.5 * (op.diag[i - 1] + op.diag[i - 1].transpose()).eval();
    }
    return op;
}

Eigen::VectorXd apply(const RingOperator& op, const Eigen::VectorXd& x) {
    const auto n = op.diag.empty() ? 0 : op.diag[0].rows();
    const auto rings = static_cast<Eigen::Index>(op.diag.size());
    Eigen::VectorXd y(x.size());
    for (Eigen::Index b = 0; b < rings; ++b) {
        Eigen::VectorXd yb = op.diag[b] * x.segment(b * n, n);
        if (b > 0) yb += op.upper[b - 1].transpose() * x.segment((b - 1) * n, n);
        if (b + 1 < rings) yb += op.upper[b] * x.segment((b + 1) * n, n);
        y.segment(b * n, n) = yb;
    }
    return y;
}

// Block LDL^T with Schur complements diagonalized by a symmetric eigensolver. The
// negative inertia is the sum over Schur complements.
struct BlockFactor {
    std::vector<Eigen::MatrixXd> V, G;
    std::vector<Eigen::VectorXd> lam;
    int negative = 0;
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;

    BlockFactor(const std::vector<Eigen::MatrixXd>& D, const std::vector<Eigen::MatrixXd>& U) {
        const std::size_t nb = D.size();
        V.resize(nb);
        lam.resize(nb);
        G.resize(nb);
        Eigen::MatrixXd S;
        for (std::size_t b = 0; b < nb; ++b) {
            S = D[b];
            if (b > 0) S -= U[b - 1].transpose() * G[b - 1];
            S = 0.5 * (S + S.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
            V[b] = es.eigenvectors();
            lam[b] = es.eigenvalues();
            for (Eigen::Index k = 0; k < lam[b].size(); ++k) {
                negative += lam[b](k) < 0.0;
                min_abs = std::min(min_abs, std::abs(lam[b](k)));
                max_abs = std::max(max_abs, std::abs(lam[b](k)));
            }
            if (b + 1 < nb) G[b] = inverse_apply(b, U[b]);
        }
    }

    double pivot_ratio() const { return min_abs / max_abs; }

    Eigen::MatrixXd inverse_apply(std::size_t b, const Eigen::MatrixXd& X) const {
        return V[b] * (lam[b].cwiseInverse().asDiagonal() * (V[b].transpose() * X));
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        const std::size_t nb = V.size();
        const auto n = V[0].rows();
        Eigen::VectorXd y = rhs;
        for (std::size_t b = 1; b < nb; ++b)
            y.segment(b * n, n) -= G[b - 1].transpose() * y.segment((b - 1) * n, n);
        Eigen::VectorXd x(rhs.size());
        for (std::size_t b = nb; b-- > 0;) {
            Eigen::VectorXd xb = inverse_apply(b, y.segment(b * n, n));
            if (b + 1 < nb) xb -= G[b] * x.segment((b + 1) * n, n);
            x.segment(b * n, n) = xb;
        }
        return x;
    }
};

Eigen::VectorXd interior_of(const PolarGrid& g, const std::vector<double>& full) {
    Eigen::VectorXd x((g.n_r - 1) * g.n_theta);
    for (int i = 1; i < g.n_r; ++i)
        for (int k = 0; k < g.n_theta; ++k) x((i - 1) * g.n_theta + k) = full[g.node(i, k)];
    return x;
}

std::vector<double> full_of(const PolarGrid& g, const Eigen::VectorXd& x) {
    std::vector<double> full(g.node_count(), 0.0);
    for (int i = 1; i < g.n_r; ++i)
        for (int k = 0; k < g.n_theta; ++k) full[g.node(i, k)] = x((i - 1) * g.n_theta + k);
    return full;
}

struct Problem {
    RingOperator op;
    double p, kappa, norm_scale;

    // gradient of 1/2 w^T K w - kappa sum W |w|^{p+1}/(p+1)
    Eigen::VectorXd residual(const Eigen::VectorXd& w) const {
        Eigen::VectorXd r = apply(op, w);
        for (Eigen::Index i = 0; i < w.size(); ++i)
            r(i) -= kappa * op.weight(i) * std::pow(std::abs(w(i)), p - 1.0) * w(i);
        return r;
    }

    double norm(const Eigen::VectorXd& F) const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < F.size(); ++i) s = std::max(s, std::abs(F(i)) / op.weight(i));
        return s / norm_scale;
    }

    BlockFactor hessian(const Eigen::VectorXd& w, double shift) const {
        auto D = op.diag;
        const auto n = D[0].rows();
        for (std::size_t b = 0; b < D.size(); ++b)
            for (Eigen::Index k = 0; k < n; ++k) {
                const auto i = static_cast<Eigen::Index>(b) * n + k;
                D[b](k, k) += op.weight(i) * (shift - p * kappa * std::pow(std::abs(w(i)), p - 1.0));
            }
        return BlockFactor(D, op.upper);
    }
};

Problem make_problem(const radial::RadialProfile& prof, const DeformationSpec& def,
                     const PolarGrid& g, double t) {
    Problem pr{assemble(def, g, t), prof.p, prof.sup_norm_pow(prof.p - 1.0), 0.0};
    // |strong residual| in v units over (1 + S^p), written without forming S
    pr.norm_scale = std::exp(-prof.log_sup_norm) + pr.kappa;
    return pr;
}

}  // namespace

PerturbedSolution newton_solve(const radial::RadialProfile& profile, const DeformationSpec& def,
                               const PolarGrid& grid, double t_target, const NewtonOptions& opt) {
    grid.validate();
    def.validate();
    require(profile.spec.N == 2, "the perturbed problem is two-dimensional (N = 2)");
    require(std::isfinite(t_target), "deformation amplitude t must be finite");
    require(opt.steps >= 1, "continuation step count must be >= 1");
    for (double pk : opt.known_degeneracies) {
        if (std::abs(profile.p - pk) < opt.degeneracy_margin) {
            std::ostringstream os;
            os << "p = " << profile.p << " lies within " << opt.degeneracy_margin
               << " of the degeneracy exponent " << pk;
            throw Error(ErrorKind::DegenerateExponent, os.str());
        }
    }

    PerturbedSolution sol;
    sol.grid = grid;
    sol.deformation = def;
    sol.t = t_target;
    sol.p = profile.p;
    sol.m = profile.m;
    sol.log_scale = profile.log_sup_norm;
    sol.safety_bound = safety_bound(def, grid.a, grid.b, opt.det_floor);
    if (opt.enforce_safety_bound && std::abs(t_target) > sol.safety_bound) {
        std::ostringstream os;
        os << "|t| = " << std::abs(t_target) << " exceeds the safety bound " << sol.safety_bound;
        throw Error(ErrorKind::InvalidInput, os.str());
    }

    const auto w_rad = radial_on_grid(profile, grid);
    Eigen::VectorXd w = interior_of(grid, w_rad);
    // Defect correction: the radial profile is an exact discrete solution at t = 0.
    const Problem base = make_problem(profile, def, grid, 0.0);
    const Eigen::VectorXd tau = base.residual(w);

    const int steps = t_target == 0.0 ? 0 : opt.steps;
    for (int s = 1; s <= steps; ++s) {
        const double t = t_target * s / steps;
        const Problem pr = make_problem(profile, def, grid, t);
        auto F = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(pr.residual(x) - tau); };
        Eigen::VectorXd Fw = F(w);
        double res = pr.norm(Fw);
        int it = 0;
        while (res > opt.tolerance) {
            if (it >= opt.max_iterations) {
                std::ostringstream os;
                os << "Newton did not converge at t = " << t << " after " << it
                   << " iterations (residual " << res << ")";
                throw Error(ErrorKind::NoConvergence, os.str());
            }
            const BlockFactor H = pr.hessian(w, 0.0);
            if (!(H.pivot_ratio() >= opt.pivot_ratio)) {
                std::ostringstream os;
                os << "Newton matrix pivot ratio " << H.pivot_ratio() << " at t = " << t;
                throw Error(ErrorKind::DegenerateExponent, os.str());
            }
            const Eigen::VectorXd delta = -H.solve(Fw);
            double step = 1.0;
            Eigen::VectorXd trial = w + delta;
            Eigen::VectorXd Ft = F(trial);
            double rt = pr.norm(Ft);
            for (int hv = 0; hv < opt.max_halvings && !(rt < res); ++hv) {
                step *= 0.5;
                trial = w + step * delta;
                Ft = F(trial);
                rt = pr.norm(Ft);
            }
            w = std::move(trial);
            Fw = std::move(Ft);
            res = rt;
            ++it;
        }
        sol.steps.push_back({t, it, res});
        sol.newton_iterations = std::max(sol.newton_iterations, it);
    }

    sol.w = full_of(grid, w);
    sol.jacobian = build_deformation(def, grid, t_target);
    const Problem fin = make_problem(profile, def, grid, t_target);
    sol.residual_norm = fin.norm(Eigen::VectorXd(fin.residual(w) - tau));
    return sol;
}

int nodal_count_2d(const PolarGrid& g, const std::vector<double>& field) {
    require(field.size() == g.node_count(), "field does not match the grid");
    double sup = 0.0;
    for (double v : field) sup = std::max(sup, std::abs(v));
    const double cut = 1e-10 * sup;
    auto sign = [&](std::size_t n) { return field[n] > cut ? 1 : (field[n] < -cut ? -1 : 0); };
    std::vector<char> seen(field.size(), 0);
    int components = 0;
    std::deque<std::pair<int, int>> queue;
    for (int i = 0; i <= g.n_r; ++i)
        for (int k = 0; k < g.n_theta; ++k) {
            const auto n0 = g.node(i, k);
            const int s0 = sign(n0);
            if (s0 == 0 || seen[n0]) continue;
            ++components;
            seen[n0] = 1;
            queue.emplace_back(i, k);
            while (!queue.empty()) {
                const auto [ci, ck] = queue.front();
                queue.pop_front();
                const std::pair<int, int> nb[] = {{ci - 1, ck},
                                                  {ci + 1, ck},
                                                  {ci, (ck + 1) % g.n_theta},
                                                  {ci, (ck + g.n_theta - 1) % g.n_theta}};
                for (const auto& [ni, nk] : nb) {
                    if (ni < 0 || ni > g.n_r) continue;
                    const auto nn = g.node(ni, nk);
                    if (!seen[nn] && sign(nn) == s0) {
                        seen[nn] = 1;
                        queue.emplace_back(ni, nk);
                    }
                }
            }
        }
    return components;
}

int nodal_count_2d(const PerturbedSolution& sol) { return nodal_count_2d(sol.grid, sol.w); }

int morse_index_2d(const PerturbedSolution& sol, double shift) {
    require(shift >= 0.0, "mass shift must be >= 0");
    const auto& g = sol.grid;
    Problem pr{assemble(sol.deformation, g, sol.t), sol.p,
               std::exp((sol.p - 1.0) * sol.log_scale), 1.0};
    const BlockFactor H = pr.hessian(interior_of(g, sol.w), shift);
    const double zero = 64.0 * std::numeric_limits<double>::epsilon() * H.max_abs;
    if (H.min_abs <= zero) {
        std::ostringstream os;
        os << "zero pivot in the second variation (|pivot| = " << H.min_abs << ")";
        throw Error(ErrorKind::DegenerateLinearization, os.str());
    }
    return H.negative;
}

namespace {

// Both sides are normalized by their sup over the grid nodes, so a field that is the
// reference sampled on the grid compares at zero even when the grid misses the peak.
template <class Shape>
double compare_with(const PerturbedSolution& sol, Shape&& shape) {
    const auto& g = sol.grid;
    const double sup = sol.sup_abs_w();
    require(sup > 0.0, "solution field is identically zero");
    std::vector<double> ref(g.n_r + 1);
    double ref_sup = 0.0;
    for (int i = 0; i <= g.n_r; ++i) {
        ref[i] = shape(g.radius(i));
        ref_sup = std::max(ref_sup, std::abs(ref[i]));
    }
    require(ref_sup > 0.0, "reference shape vanishes on the grid");
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i <= g.n_r; ++i) {
        const double r = ref[i] / ref_sup;
        for (int k = 0; k < g.n_theta; ++k) {
            const double v = sol.w[g.node(i, k)] / sup;
            plus = std::max(plus, std::abs(v - r));
            minus = std::max(minus, std::abs(v + r));
        }
    }
    return std::min(plus, minus);
}

}  // namespace

double shape_compare(const PerturbedSolution& sol, const asymptotics::LaplaceEigenpair& psi) {
    require(psi.spec.a == sol.grid.a && psi.spec.b == sol.grid.b,
            "eigenfunction and solution describe different annuli");
    const auto& r = psi.grid;
    const double h = r[1] - r[0];
    return compare_with(sol, [&](double x) {
        const double s = (x - r.front()) / h;
        const auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, double(r.size() - 2)));
        const double f = s - static_cast<double>(i);
        if (f < 1e-9) return psi.psi_m[i];
        if (f > 1.0 - 1e-9) return psi.psi_m[i + 1];
        return (1.0 - f) * psi.psi_m[i] + f * psi.psi_m[i + 1];
    });
}

double shape_compare(const PerturbedSolution& sol, const radial::RadialProfile& profile) {
    require(profile.spec.a == sol.grid.a && profile.spec.b == sol.grid.b,
            "profile and solution describe different annuli");
    return compare_with(sol, [&](double x) { return profile.shape_at(x); });
}

}  // namespace lane_emden::perturbed
