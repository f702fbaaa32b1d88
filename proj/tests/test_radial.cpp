#include "lane_emden/radial.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lane_emden;
using namespace lane_emden::radial;

namespace {

const AnnulusSpec kUnit{1.0, 2.0, 2};

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST(RadialIvp, ZeroSlopeIsRejected) {
    EXPECT_EQ(kind_of([] { integrate_radial_ivp(kUnit, 3.0, 0.0); }), ErrorKind::InvalidInput);
}

TEST(RadialIvp, OddInSlope) {
    const auto plus = integrate_radial_ivp(kUnit, 3.0, 7.5);
    const auto minus = integrate_radial_ivp(kUnit, 3.0, -7.5);
    ASSERT_EQ(plus.values.size(), minus.values.size());
    for (std::size_t i = 0; i < plus.values.size(); ++i) {
        EXPECT_EQ(plus.values[i], -minus.values[i]);
        EXPECT_EQ(plus.slopes[i], -minus.slopes[i]);
    }
    EXPECT_EQ(plus.zeros, minus.zeros);
}

TEST(RadialIvp, ZeroCountGrowsWithSlope) {
    const auto small = integrate_radial_ivp(kUnit, 3.0, 0.1);
    EXPECT_TRUE(small.zeros.empty());
    EXPECT_GT(small.values.back(), 0.0);

    std::size_t previous = 0;
    for (double alpha : {0.1, 1.0, 5.0, 20.0, 60.0, 150.0, 400.0}) {
        const auto tr = integrate_radial_ivp(kUnit, 3.0, alpha);
        EXPECT_GE(tr.zeros.size(), previous) << "alpha = " << alpha;
        previous = tr.zeros.size();
    }
    EXPECT_GE(previous, 1u);
}

TEST(RadialIvp, RejectsBadExponent) {
    EXPECT_EQ(kind_of([] { integrate_radial_ivp(kUnit, 1.0, 1.0); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { shoot_nodal(kUnit, 3.0, 0); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { shoot_nodal({2.0, 1.0, 2}, 3.0, 1); }), ErrorKind::InvalidInput);
}

TEST(ShootNodal, PositiveSingleBump) {
    const auto prof = shoot_nodal(kUnit, 3.0, 1);
    EXPECT_TRUE(prof.zeros.empty());
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < prof.shape.size(); ++i) {
        EXPECT_GT(prof.shape[i], 0.0);
        if (prof.shape_slopes[i] > 0 && prof.shape_slopes[i + 1] <= 0) ++maxima;
    }
    EXPECT_EQ(maxima, 1);
}

class ShootCase : public ::testing::TestWithParam<std::tuple<int, double, int>> {};

TEST_P(ShootCase, ZerosAlternationResidual) {
    const auto [N, p, m] = GetParam();
    const auto prof = shoot_nodal({1.0, 2.0, N}, p, m);
    ASSERT_EQ(prof.zeros.size(), static_cast<std::size_t>(m - 1));
    EXPECT_GT(prof.shape_slopes.front(), 0.0);
    EXPECT_LE(std::abs(prof.shape.back()), 1e-10);
    EXPECT_LE(ode_residual(prof), 1e-8);
    // Sign alternates zone by zone and the slope is nonzero at each zero.
    double lo = 1.0;
    for (int z = 0; z < m; ++z) {
        const double hi = z + 1 < m ? prof.zeros[z] : 2.0;
        const double mid = 0.5 * (lo + hi);
        EXPECT_EQ(prof.shape_at(mid) > 0, z % 2 == 0);
        if (z + 1 < m) EXPECT_GT(std::abs(prof.shape_slope_at(hi)), 1e-3);
        lo = hi;
    }
}

INSTANTIATE_TEST_SUITE_P(Grid, ShootCase,
                         ::testing::Combine(::testing::Values(2, 3),
                                            ::testing::Values(1.5, 3.0, 5.0),
                                            ::testing::Values(1, 2, 3)));

// v_mu(s) = mu^{-2/(p-1)} v(s / mu) solves the problem on the dilated annulus.
class Scaling : public ::testing::TestWithParam<double> {};

TEST_P(Scaling, PowerLawRescaling) {
    const double mu = GetParam(), p = 3.0;
    const auto base = shoot_nodal(kUnit, p, 2);
    const auto dil = shoot_nodal(kUnit.scaled(mu), p, 2);
    const double expected_log = base.log_sup_norm - 2.0 / (p - 1.0) * std::log(mu);
    EXPECT_NEAR(dil.log_sup_norm, expected_log, 1e-9);
    double diff = 0.0;
    for (std::size_t i = 0; i < base.grid.size(); ++i) {
        const double v_dil = dil.shape_at(mu * base.grid[i]) * dil.sup_norm();
        const double v_ref = std::pow(mu, -2.0 / (p - 1.0)) * base.value(i);
        diff = std::max(diff, std::abs(v_dil - v_ref));
    }
    EXPECT_LE(diff / dil.sup_norm(), 1e-8);
    EXPECT_NEAR(dil.zeros[0], mu * base.zeros[0], 1e-9 * mu);
}

INSTANTIATE_TEST_SUITE_P(Mu, Scaling, ::testing::Values(2.0, 0.5));

TEST(Nehari, AgreesWithShooting) {
    const auto shot = shoot_nodal(kUnit, 3.0, 2);
    const auto neh = nehari_minimize(kUnit, 3.0, 2);
    EXPECT_LE(relative_sup_distance(shot, neh.profile), 1e-6);
    EXPECT_NEAR(neh.profile.zeros[0], shot.zeros[0], 1e-6);
    EXPECT_NEAR(neh.profile.sup_norm() / shot.sup_norm(), 1.0, 1e-6);
}

TEST(Nehari, GluingIsC1AndZonesPositive) {
    const auto neh = nehari_minimize(kUnit, 3.0, 2);
    EXPECT_LE(neh.max_slope_mismatch, 1e-6);
    for (double e : neh.zone_energies) EXPECT_GT(e, 0.0);
}

TEST(Nehari, IndependentOfInitialPlacement) {
    NehariOptions o1, o2;
    o1.initial_zeros = {1.3};
    o2.initial_zeros = {1.7};
    const auto r1 = nehari_minimize(kUnit, 3.0, 2, o1);
    const auto r2 = nehari_minimize(kUnit, 3.0, 2, o2);
    EXPECT_NEAR(r1.energy / r2.energy, 1.0, 1e-6);
    EXPECT_NEAR(r1.placement[0], r2.placement[0], 1e-6);
}

TEST(Nehari, RequiresTwoZones) {
    EXPECT_EQ(kind_of([] { nehari_minimize(kUnit, 3.0, 1); }), ErrorKind::InvalidInput);
}

TEST(NehariReport, IdentityHoldsPerZone) {
    const auto prof = shoot_nodal(kUnit, 3.0, 3);
    const auto rep = nehari_report(prof);
    ASSERT_EQ(rep.zones.size(), 3u);
    for (const auto& z : rep.zones) {
        EXPECT_LE(z.nehari_residual, 1e-5);
        EXPECT_FALSE(z.flagged);
        EXPECT_GT(z.energy, 0.0);
        EXPECT_NEAR(z.energy, (0.5 - 1.0 / 4.0) * z.gradient, 1e-12 * z.gradient);
    }
}

TEST(NehariReport, EnergyMatchesMinimizer) {
    const auto neh = nehari_minimize(kUnit, 3.0, 2);
    const auto rep = nehari_report(shoot_nodal(kUnit, 3.0, 2));
    EXPECT_NEAR(rep.total_energy() / neh.energy, 1.0, 1e-6);
}
