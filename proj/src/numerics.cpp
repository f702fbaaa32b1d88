#include "lane_emden/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lane_emden::numerics {

std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals) {
    std::vector<double> x(intervals + 1);
    const double h = (hi - lo) / static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) x[i] = lo + static_cast<double>(i) * h;
    x[intervals] = hi;
    return x;
}

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;  // intervals
    if (f.size() < 2) return 0.0;
    if (n == 1) return 0.5 * h * (f[0] + f[1]);
    std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    double s = 0.0;
    if (even_end >= 2) {
        double acc = f[0] + f[even_end];
        for (std::size_t i = 1; i < even_end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
        s = acc * h / 3.0;
    }
    if (even_end != n) {
        const std::size_t k = even_end;
        s += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    }
    return s;
}

double Hermite::value(double x) const {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
}

double Hermite::derivative(double x) const {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double dh00 = (6 * s2 - 6 * s) / h;
    const double dh10 = 3 * s2 - 4 * s + 1;
    const double dh01 = (-6 * s2 + 6 * s) / h;
    const double dh11 = 3 * s2 - 2 * s;
    return dh00 * f0 + dh10 * d0 + dh01 * f1 + dh11 * d1;
}

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi) {
    static constexpr std::array<double, 5> nodes = {
        0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<double, 5> weights = {
        0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
        0.2369268850561891};
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    const double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: no sign change");
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TridiagonalLU::TridiagonalLU(std::vector<double> lower, std::vector<double> diag,
                             std::vector<double> upper, double zero_pivot)
    : dl_(std::move(lower)), d_(std::move(diag)), du_(std::move(upper)) {
    const std::size_t n = d_.size();
    if (n == 0 || dl_.size() + 1 != n || du_.size() + 1 != n)
        throw std::invalid_argument("TridiagonalLU: inconsistent band sizes");
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped_.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d_[i]) >= std::abs(dl_[i])) {
            if (d_[i] == 0.0) d_[i] = zero_pivot;
            if (d_[i] != 0.0) {
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            }
        } else {
            const double fact = d_[i] / dl_[i];
            d_[i] = dl_[i];
            dl_[i] = fact;
            const double temp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = temp - fact * d_[i + 1];
            if (i + 2 < n) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -fact * du_[i + 1];
            }
            swapped_[i] = 1;
        }
    }
    if (d_[n - 1] == 0.0) d_[n - 1] = zero_pivot;
}

void TridiagonalLU::solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    if (b.size() != n) throw std::invalid_argument("TridiagonalLU: rhs size mismatch");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped_[i]) {
            const double temp = b[i] - dl_[i] * b[i + 1];
            b[i] = b[i + 1];
            b[i + 1] = temp;
        } else {
            b[i + 1] -= dl_[i] * b[i];
        }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
}

int count_sign_changes(std::span<const double> values) {
    int changes = 0;
    int last = 0;
    for (double v : values) {
        const int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace lane_emden::numerics
