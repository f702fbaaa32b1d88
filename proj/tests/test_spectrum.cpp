#include "lane_emden/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lane_emden;
using namespace lane_emden::spectrum;

namespace {

const AnnulusSpec kUnit{1.0, 2.0, 2};

int sign_changes(const std::vector<double>& f) {
    const double tol = 1e-9;
    int count = 0, last = 0;
    for (double v : f) {
        const int s = v > tol ? 1 : (v < -tol ? -1 : 0);
        if (s != 0 && last != 0 && s != last) ++count;
        if (s != 0) last = s;
    }
    return count;
}

}  // namespace

TEST(Pencil, AssembledSymmetric) {
    const auto prof = radial::shoot_nodal(kUnit, 3.0, 2);
    const auto pen = assemble_pencil(prof, 256);
    ASSERT_EQ(pen.size(), 255u);
    ASSERT_EQ(pen.offdiag.size(), 254u);
    // The flux form stores one coupling per edge, so A_{i,i+1} and A_{i+1,i} are the
    // same number; check it against the midpoint weight it was built from.
    for (std::size_t i = 0; i + 1 < pen.size(); ++i) {
        const double mid = 0.5 * (pen.radii[i] + pen.radii[i + 1]);
        EXPECT_DOUBLE_EQ(pen.offdiag[i], -std::pow(mid, 1.0) / (pen.h * pen.h));
    }
    for (double w : pen.weight) EXPECT_GT(w, 0.0);
}

TEST(Pencil, ZeroPotentialIsPositive) {
    for (int N : {2, 3}) {
        const auto pen = assemble_pencil({1.0, 2.0, N}, [](double) { return 0.0; }, N - 3.0, 1024);
        const auto s = eigen_smallest(pen, 1);
        EXPECT_GT(s.eigenvalues[0], 0.0);
        EXPECT_EQ(sturm_count(pen, 0.0), 0);
    }
}

TEST(Pencil, ConstantCoefficientOracle) {
    // On a thin, far annulus the curvature terms are negligible and the Laplace pencil
    // approaches -phi'' = nu phi on an interval of length 1.
    const auto pen = assemble_pencil({100.0, 101.0, 2}, [](double) { return 0.0; }, 1.0, 2048);
    const auto s = eigen_smallest(pen, 2);
    EXPECT_NEAR(s.eigenvalues[0] / (std::numbers::pi * std::numbers::pi), 1.0, 1e-3);
    EXPECT_NEAR(s.eigenvalues[1] / (4 * std::numbers::pi * std::numbers::pi), 1.0, 1e-3);
}

TEST(Eigen, RichardsonRatioIsFour) {
    const auto prof = radial::shoot_nodal(kUnit, 3.0, 2);
    double nu[3];
    const std::size_t K[3] = {1024, 2048, 4096};
    for (int i = 0; i < 3; ++i) nu[i] = compute_spectrum(prof, 1, K[i]).eigenvalues[0];
    const double ratio = (nu[0] - nu[1]) / (nu[1] - nu[2]);
    EXPECT_NEAR(ratio, 4.0, 0.1);
}

TEST(Eigen, StructureAtTwoZones) {
    const auto prof = radial::shoot_nodal(kUnit, 3.0, 2);
    const auto s = compute_spectrum(prof, 3);
    EXPECT_LT(s.eigenvalues[0], -1.0);
    EXPECT_LT(s.eigenvalues[1], 0.0);
    EXPECT_GT(s.eigenvalues[2], 0.0);
    EXPECT_EQ(s.negative_count(), 2);
}

TEST(Eigen, IncreasingOscillatingConsistent) {
    const auto prof = radial::shoot_nodal(kUnit, 5.0, 3);
    const auto pen = assemble_pencil(prof, 2048);
    const auto s = eigen_smallest(pen, 6);
    for (int l = 0; l < 6; ++l) {
        if (l > 0) EXPECT_GT(s.eigenvalues[l], s.eigenvalues[l - 1]);
        EXPECT_EQ(sign_changes(s.eigenfunctions[l]), l);
        const double q = rayleigh(pen, s.eigenfunctions[l]);
        EXPECT_LE(std::abs(q - s.eigenvalues[l]), 1e-8 * std::max(1.0, std::abs(s.eigenvalues[l])));
        EXPECT_GT(s.eigenfunctions[l][1], 0.0);
        double sup = 0.0;
        for (double v : s.eigenfunctions[l]) sup = std::max(sup, std::abs(v));
        EXPECT_NEAR(sup, 1.0, 1e-12);
    }
    EXPECT_EQ(sturm_count(pen, 0.5 * (s.eigenvalues[2] + s.eigenvalues[3])), 3);
}

TEST(Eigen, RejectsBadCount) {
    const auto pen = assemble_pencil(kUnit, [](double) { return 0.0; }, -1.0, 64);
    EXPECT_THROW(eigen_smallest(pen, 0), Error);
    EXPECT_THROW(eigen_smallest(pen, 64), Error);
}

TEST(Rayleigh, NodalPieceFormula) {
    const double p = 3.0;
    const auto prof = radial::shoot_nodal(kUnit, p, 2);
    const double r1 = prof.zeros[0];
    for (int piece = 0; piece < 2; ++piece) {
        const double lo = piece == 0 ? 1.0 : r1, hi = piece == 0 ? r1 : 2.0;
        std::vector<double> phi(prof.grid.size(), 0.0);
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (prof.grid[i] > lo && prof.grid[i] < hi) phi[i] = prof.shape[i];
        const double grad = radial::zone_integral(prof, lo, hi, [](double r, double, double dw) {
            return r * dw * dw;
        });
        const double mass = radial::zone_integral(prof, lo, hi, [](double r, double w, double) {
            return w * w / r;
        });
        const double expected = -(p - 1.0) * grad / mass;
        const double q = rayleigh(prof, phi);
        EXPECT_LT(q, 0.0);
        EXPECT_NEAR(q / expected, 1.0, 2e-3) << "piece " << piece;
    }
}

TEST(Rayleigh, RandomFunctionsBoundedBelow) {
    const auto prof = radial::shoot_nodal(kUnit, 3.0, 2);
    const std::size_t K = 1024;
    const auto pen = assemble_pencil(prof, K);
    const double nu1 = eigen_smallest(pen, 1).eigenvalues[0];
    const auto grid = pen.full_grid();
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> modes(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> phi(K + 1, 0.0);
        const int n = modes(rng);
        for (int k = 1; k <= n; ++k) {
            const double c = gauss(rng) / k;
            for (std::size_t i = 1; i < K; ++i)
                phi[i] += c * std::sin(k * std::numbers::pi * (grid[i] - 1.0));
        }
        if (trial % 4 == 0)
            for (std::size_t i = 1; i < K; ++i) phi[i] += 0.1 * gauss(rng);
        EXPECT_GE(rayleigh(pen, phi), nu1 - 1e-9 * std::abs(nu1));
    }
}

TEST(Rayleigh, NullFunctionRejected) {
    const auto prof = radial::shoot_nodal(kUnit, 3.0, 1);
    const std::vector<double> zero(129, 0.0);
    try {
        rayleigh(prof, zero);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NullTestFunction);
    }
    std::vector<double> open(129, 1.0);
    EXPECT_THROW(rayleigh(prof, open), Error);
}

class Auxiliary : public ::testing::TestWithParam<std::tuple<int, double, int>> {};

TEST_P(Auxiliary, ZeroCounts) {
    const auto [N, p, m] = GetParam();
    const auto prof = radial::shoot_nodal({1.0, 2.0, N}, p, m);
    const auto aux = auxiliary_diagnostics(prof);
    EXPECT_EQ(aux.z_zeros.size(), static_cast<std::size_t>(m));
    EXPECT_GE(aux.zeta_zeros.size(), static_cast<std::size_t>(m));
    if (m == 1) EXPECT_EQ(aux.zeta_zeros.size(), 1u);
    for (double z : aux.z_zeros) {
        EXPECT_GT(z, 1.0);
        EXPECT_LT(z, 2.0);
    }
}

INSTANTIATE_TEST_SUITE_P(Grid, Auxiliary,
                         ::testing::Combine(::testing::Values(2, 3),
                                            ::testing::Values(1.5, 3.0, 5.0),
                                            ::testing::Values(1, 2, 3)));
