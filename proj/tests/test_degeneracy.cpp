#include "lane_emden/degeneracy.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lane_emden;
using namespace lane_emden::degeneracy;

namespace {

const AnnulusSpec kUnit{1.0, 2.0, 2};

std::uint64_t binomial(int n, int k) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

TEST(Multiplicity, KnownValues) {
    for (int j = 0; j <= 5; ++j) EXPECT_EQ(spherical_multiplicity(3, j), 2u * j + 1);
    EXPECT_EQ(spherical_multiplicity(2, 0), 1u);
    EXPECT_EQ(spherical_multiplicity(2, 4), 2u);
    EXPECT_EQ(spherical_multiplicity(4, 2), 9u);
    // Harmonic polynomials of degree j: C(N+j-1, j) - C(N+j-3, j-2).
    for (int N = 3; N <= 9; ++N)
        for (int j = 2; j <= 12; ++j)
            EXPECT_EQ(spherical_multiplicity(N, j), binomial(N + j - 1, j) - binomial(N + j - 3, j - 2))
                << "N = " << N << ", j = " << j;
}

TEST(Multiplicity, OverflowAndDomain) {
    EXPECT_THROW(spherical_multiplicity(1, 2), Error);
    EXPECT_THROW(spherical_multiplicity(3, -1), Error);
    EXPECT_THROW(spherical_multiplicity(200, 200), Error);
}

TEST(Levels, AdmissibilityDichotomy) {
    EXPECT_DOUBLE_EQ(harmonic_level(2, 3), -9.0);
    EXPECT_DOUBLE_EQ(harmonic_level(3, 2), -6.0);
    EXPECT_FALSE(admissible(2, 1, 1));
    EXPECT_TRUE(admissible(2, 2, 1));
    EXPECT_TRUE(admissible(2, 1, 2));
    EXPECT_TRUE(admissible(1, 1, 1));
    EXPECT_FALSE(admissible(3, 2, 1));
}

TEST(Grid, GeometricInPMinusOne) {
    const auto g = geometric_grid(1.01, 11.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g.front(), 1.01);
    EXPECT_DOUBLE_EQ(g.back(), 11.0);
    for (std::size_t i = 2; i < g.size(); ++i)
        EXPECT_NEAR((g[i] - 1) / (g[i - 1] - 1), (g[1] - 1) / (g[0] - 1), 1e-12);
}

TEST(Curves, ContinuousUnderNestedSteps) {
    // The jump shrinks in proportion to the step, as for a differentiable curve.
    std::vector<double> jumps;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const auto nu = nu_curve(kUnit, 2, 1, {3.0, 3.0 + delta});
        jumps.push_back(std::abs(nu[1] - nu[0]));
    }
    for (std::size_t i = 1; i < jumps.size(); ++i) {
        EXPECT_GT(jumps[i - 1] / jumps[i], 8.0);
        EXPECT_LT(jumps[i - 1] / jumps[i], 12.0);
    }
}

TEST(Curves, DecreaseForLargeP) {
    const std::vector<double> ps{2.0, 5.0, 10.0, 20.0};
    const auto rows = eigen_curves(kUnit, 2, 2, ps);
    for (int l = 0; l < 2; ++l)
        for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LT(rows[i][l], rows[i - 1][l]);
}

TEST(Curves, TopNegativeEigenvalueVanishesNearOne) {
    const auto nu = nu_curve(kUnit, 2, 2, {1.001, 1.01, 1.1});
    EXPECT_LT(std::abs(nu[0]), std::abs(nu[1]));
    EXPECT_LT(std::abs(nu[1]), std::abs(nu[2]));
}

TEST(Curves, FailureNamesExponent) {
    SampleOptions o;
    o.shooting.max_iterations = 1;
    try {
        eigen_curves(kUnit, 3, 3, {4.0}, o);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("p = 4"), std::string::npos) << e.what();
    }
}

TEST(Scan, SingleZoneOrderedByHarmonic) {
    ScanOptions o;
    o.refine = true;
    const auto res = find_degeneracies(kUnit, 1, 1.01, 20.0, 3, o);
    ASSERT_EQ(res.points.size(), 3u);
    for (int j = 1; j <= 3; ++j) {
        const auto& pt = res.points[j - 1];
        EXPECT_EQ(pt.j, j);
        EXPECT_EQ(pt.l, 1);
        EXPECT_DOUBLE_EQ(pt.target, harmonic_level(2, j));
        EXPECT_LE(pt.residual, 1e-8);
    }
    EXPECT_TRUE(res.stable);
}

TEST(Scan, TwoZonesAdmissibleSortedIsolated) {
    const auto res = find_degeneracies(kUnit, 2, 1.05, 20.0, 3);
    ASSERT_FALSE(res.points.empty());
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& pt = res.points[i];
        EXPECT_TRUE(admissible(2, pt.l, pt.j));
        EXPECT_LE(pt.residual, 1e-8);
        const double nu = nu_curve(kUnit, 2, pt.l, {pt.p_k})[0];
        EXPECT_NEAR(nu, pt.target, 1e-6);
        if (i > 0) EXPECT_GT(pt.p_k, res.points[i - 1].p_k);
    }
}

TEST(Scan, WarnsWhenLevelsAreNotReached) {
    ScanOptions o;
    o.samples = 8;
    const auto res = find_degeneracies(kUnit, 1, 1.005, 1.02, 3, o);
    EXPECT_TRUE(res.points.empty());
    EXPECT_EQ(res.warnings.size(), 3u);
}

TEST(Morse, UnitJAtLevelMinusNMinusOne) {
    for (int N : {2, 3, 5}) {
        spectrum::SpectrumSlice s;
        s.p = 2.0;
        s.eigenvalues = {-(N - 1.0), 1.0};
        const auto rep = morse_index(s, {1.0, 2.0, N}, 1);
        EXPECT_DOUBLE_EQ(rep.J_values[0], 1.0);
        EXPECT_TRUE(rep.degenerate_boundary);
        EXPECT_EQ(rep.morse_index, 1u);
    }
}

TEST(Morse, InconsistentSliceRejected) {
    spectrum::SpectrumSlice s;
    s.eigenvalues = {-3.0, 0.5};
    try {
        morse_index(s, kUnit, 2);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentSpectrum);
    }
}

TEST(Morse, LowerBoundAndGrowth) {
    for (int N : {2, 3})
        for (int m : {1, 2, 3}) {
            std::uint64_t previous = 0;
            for (double p : {1.5, 2.0, 3.0, 5.0, 10.0, 20.0}) {
                const auto rep = morse_index_at({1.0, 2.0, N}, p, m);
                EXPECT_GE(rep.morse_index, rep.lower_bound);
                EXPECT_EQ(rep.lower_bound, static_cast<std::uint64_t>((m - 1) * (N + 1) + 1));
                EXPECT_GE(rep.morse_index, previous);
                previous = rep.morse_index;
            }
        }
    EXPECT_GT(morse_index_at(kUnit, 20.0, 1).morse_index, 4 * morse_index_at(kUnit, 2.0, 1).morse_index);
}

TEST(Morse, JumpsByMultiplicityAcrossDegeneracy) {
    for (int m : {1, 2}) {
        const auto res = find_degeneracies(kUnit, m, 1.05, 20.0, 3);
        for (const auto& pt : res.points) {
            const auto below = morse_index_at(kUnit, pt.p_k - 1e-4, m);
            const auto above = morse_index_at(kUnit, pt.p_k + 1e-4, m);
            EXPECT_EQ(above.morse_index - below.morse_index, spherical_multiplicity(2, pt.j))
                << "m = " << m << ", p_k = " << pt.p_k;
        }
    }
}

// Near p = 1 the single-zone solution has index 1 only below the j = 1 crossing,
// which sits close to p = 1.0477 on A(1, 2). At p = 1.1 the nodal-piece quotient
// already forces nu_1 below -1, so J_1 > 1 and the index is 3.
TEST(Morse, SingleZoneNearOne) {
    const auto at_11 = morse_index_at(kUnit, 1.1, 1);
    EXPECT_GT(at_11.J_values[0], 1.0);
    EXPECT_EQ(at_11.morse_index, 3u);

    const double p = 1.1;
    const auto prof = radial::shoot_nodal(kUnit, p, 1);
    const double grad = radial::zone_integral(prof, 1.0, 2.0, [](double r, double, double dw) {
        return r * dw * dw;
    });
    const double mass = radial::zone_integral(prof, 1.0, 2.0, [](double r, double w, double) {
        return w * w / r;
    });
    const double nu1 = spectrum::compute_spectrum(prof, 1).eigenvalues[0];
    EXPECT_LE(nu1, -(p - 1.0) * grad / mass);
    EXPECT_LT(-(p - 1.0) * grad / mass, -1.0);

    const auto at_104 = morse_index_at(kUnit, 1.04, 1);
    EXPECT_GT(at_104.J_values[0], 0.0);
    EXPECT_LT(at_104.J_values[0], 1.0);
    EXPECT_EQ(at_104.morse_index, 1u);
}
