#pragma once

#include "lane_emden/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lane_emden::radial {

template <class F>
double zone_integral(const RadialProfile& profile, double lo, double hi, F&& f) {
    const auto& r = profile.grid;
    const double h = profile.step();
    const double a = r.front();
    const double eps = 1e-12 * h;

    auto piece = [&](double x0, double x1) {
        if (x1 - x0 <= eps) return 0.0;
        const auto i = static_cast<std::size_t>(
            std::clamp(std::floor((0.5 * (x0 + x1) - a) / h), 0.0, double(r.size() - 2)));
        const numerics::Hermite herm{r[i], r[i + 1], profile.shape[i], profile.shape[i + 1],
                                     profile.shape_slopes[i], profile.shape_slopes[i + 1]};
        return numerics::gauss_legendre(
            [&](double x) { return f(x, herm.value(x), herm.derivative(x)); }, x0, x1);
    };

    // first node at or right of lo, last node at or left of hi
    auto first = static_cast<std::size_t>(std::ceil((lo - a) / h - 1e-9));
    auto last = static_cast<std::size_t>(std::floor((hi - a) / h + 1e-9));
    first = std::min(first, r.size() - 1);
    last = std::min(last, r.size() - 1);
    if (first >= last) {
        double s = 0.0;
        for (double x0 = lo; x0 < hi - eps;) {
            const double next = std::min(hi, a + (std::floor((x0 - a) / h + 1e-9) + 1.0) * h);
            s += piece(x0, next);
            x0 = next;
        }
        return s;
    }
    std::vector<double> samples;
    samples.reserve(last - first + 1);
    for (std::size_t i = first; i <= last; ++i)
        samples.push_back(f(r[i], profile.shape[i], profile.shape_slopes[i]));
    double s = numerics::simpson(samples, h);
    s += piece(lo, r[first]);
    s += piece(r[last], hi);
    return s;
}

}  // namespace lane_emden::radial
