// SPDX-License-Identifier: Apache-2.0
//
// eemimo - distortion-aware energy-efficiency optimization for massive MIMO OFDM
// Copyright (C) 2026 The eemimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "eemimo/errors.hpp"
#include "eemimo/link_model.hpp"
#include "eemimo/scenario.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace eemimo;
using testing_support::logspace;

namespace
{
    SystemParams perfect()
    {
        SystemParams p;
        p.pa_class = PaClass::Perfect;
        return p;
    }

    double psi_power(double psi, double m, const SystemParams &p) { return m * p.p_max_w / psi; }
}

TEST(LinkModel, RateExamples)
{
    const SystemParams p;
    EXPECT_DOUBLE_EQ(p.bandwidth_hz(), 1.8e7);
    EXPECT_EQ(rate(0.0, p), 0.0);
    EXPECT_NEAR(rate(1.0, p), 18e6, 1e-6);
    EXPECT_NEAR(rate(3.0, p), 36e6, 1e-6);
    EXPECT_THROW(rate(-1.0, p), DomainError);
}

TEST(LinkModel, TotalPowerExamples)
{
    SystemParams p = perfect();
    p.p_max_w = 100.0 * 100.0 / 32.0; // Psi = 100 at P = 100, M = 32
    EXPECT_NEAR(total_power(100.0, 32.0, p), 1184.0, 1e-9);

    SystemParams b;
    EXPECT_NEAR(total_power(160.0, 1.0, b), 523.1417630174924, 1e-9);
    EXPECT_NEAR(total_power(1e-12, 32.0, b), 348.0 + 32.0 * 23.0, 1e-4);
}

TEST(LinkModel, SndrExamples)
{
    const SystemParams p;
    const Scenario sc = testing_support::two_users(100.0, 120.0, p);
    const double m = 32.0;

    Allocation a{psi_power(6.0, m, p), {1.0, 0.0}, m};
    const auto g = sndr(sc, a, p);
    EXPECT_GT(g[0], 0.0);
    EXPECT_EQ(g[1], 0.0);

    // High back-off: no clipping, the plain SNR expression.
    a.total_power_w = psi_power(100.0, m, p);
    a.shares = {0.3, 0.7};
    const auto g_hi = sndr(sc, a, p);
    for (std::size_t k = 0; k < 2; ++k)
    {
        const double snr = (m - 2.0) * a.shares[k] * a.total_power_w * sc[k].beta / sc[k].noise_power_w;
        EXPECT_NEAR(g_hi[k], snr, 1e-6 * snr);
    }

    // Saturated PAs: the SNDR approaches a finite constant.
    a.total_power_w = psi_power(1e-7, m, p);
    const auto g_sat = sndr(sc, a, p);
    for (std::size_t k = 0; k < 2; ++k)
    {
        const double c = sc[k].noise_power_w + p.inband_fraction * sc[k].beta * (1.0 - std::numbers::pi / 4.0) * m * p.p_max_w;
        const double limit = std::numbers::pi * m * (m - 2.0) * a.shares[k] * sc[k].beta * p.p_max_w / (4.0 * c);
        EXPECT_NEAR(g_sat[k], limit, 1e-2 * limit);
    }
}

namespace
{
    double saturated_sndr(const UserLink &u, double share, double m, std::size_t k, const SystemParams &p)
    {
        const double c = u.noise_power_w + p.inband_fraction * u.beta * (1.0 - std::numbers::pi / 4.0) * m * p.p_max_w;
        return std::numbers::pi * m * (m - static_cast<double>(k)) * share * u.beta * p.p_max_w / (4.0 * c);
    }
}

// lambda * P decays to pi M p_max / 4 from above, so the SNDR approaches its
// saturated value from above at any path loss. With distortion dominating the
// overshoot is large.
TEST(LinkModel, SndrApproachesSaturationFromAbove)
{
    const SystemParams p;
    const double m = 20.0;
    for (double pl : {90.0, 190.0})
    {
        const Scenario sc = testing_support::homogeneous(2, pl, p);
        const double limit = saturated_sndr(sc[0], 0.5, m, 2, p);
        double peak = 0.0;
        for (double pw : logspace(1e-3, 1e9, 300))
            peak = std::max(peak, sndr(sc, Allocation{pw, {0.5, 0.5}, m}, p)[0]);
        EXPECT_GT(peak, limit) << pl;
        const double far = sndr(sc, Allocation{1e12, {0.5, 0.5}, m}, p)[0];
        EXPECT_GT(far, limit) << pl;
        EXPECT_NEAR(far, limit, 1e-3 * limit) << pl;
        if (pl < 100.0)
            EXPECT_GT(peak, 100.0 * limit);
    }
}

TEST(LinkModel, SndrGrowsWithoutBoundInAntennas)
{
    const SystemParams p;
    const Scenario sc = testing_support::homogeneous(2, 130.0, p);
    double prev = 0.0;
    for (double m : logspace(3.0, 1e7, 40))
    {
        const double g = sndr(sc, Allocation{100.0, {0.5, 0.5}, m}, p)[0];
        EXPECT_GT(g, prev);
        prev = g;
    }
    EXPECT_GT(prev, 1e8);
}

TEST(LinkModel, LowerNoiseRaisesSndr)
{
    const SystemParams p;
    Scenario sc = testing_support::two_users(90.0, 110.0, p);
    const Allocation a{500.0, {0.4, 0.6}, 40.0};
    const auto before = sndr(sc, a, p);
    for (auto &u : sc)
        u.noise_power_w *= 0.5;
    const auto after = sndr(sc, a, p);
    for (std::size_t k = 0; k < 2; ++k)
        EXPECT_GT(after[k], before[k]);
}

TEST(LinkModel, EvaluateConsistency)
{
    const SystemParams p;
    const Scenario one = testing_support::homogeneous(1, 100.0, p);
    const Evaluation e1 = evaluate(one, Allocation{300.0, {1.0}, 16.0}, p);
    EXPECT_DOUBLE_EQ(e1.ee, e1.rates[0] / e1.p_tot);
    EXPECT_GE(e1.p_tot, p.p_const_w + 16.0 * p.p_sprf_w);

    const Scenario two = testing_support::homogeneous(2, 100.0, p);
    const Evaluation e2 = evaluate(two, Allocation{300.0, {0.5, 0.5}, 16.0}, p);
    EXPECT_EQ(e2.sndr[0], e2.sndr[1]);
    EXPECT_NEAR(e2.ee, e2.sum_rate / e2.p_tot, 1e-12 * e2.ee);
    EXPECT_NEAR(energy_efficiency(two, 300.0, std::vector<double>{0.5, 0.5}, 16.0, p), e2.ee, 1e-13 * e2.ee);
    EXPECT_NEAR(e2.psi, 16.0 * 160.0 / 300.0, 1e-14);
}

TEST(LinkModel, PermutationInvariance)
{
    const SystemParams p;
    const Scenario a = scenario_from_path_loss(std::vector<double>{80.0, 105.0, 130.0}, p);
    const Scenario b{a[2], a[0], a[1]};
    const double ea = evaluate(a, Allocation{700.0, {0.5, 0.3, 0.2}, 24.0}, p).ee;
    const double eb = evaluate(b, Allocation{700.0, {0.2, 0.5, 0.3}, 24.0}, p).ee;
    EXPECT_NEAR(ea, eb, 1e-13 * ea);
}

TEST(LinkModel, RejectsInvalidAllocations)
{
    const SystemParams p;
    const Scenario sc = testing_support::homogeneous(2, 100.0, p);
    EXPECT_THROW(evaluate(sc, Allocation{100.0, {0.5, 0.5}, 2.0}, p), DomainError);
    EXPECT_THROW(evaluate(sc, Allocation{100.0, {1.0}, 8.0}, p), DomainError);
    EXPECT_THROW(evaluate(sc, Allocation{100.0, {1.2, -0.2}, 8.0}, p), DomainError);
    EXPECT_THROW(evaluate(sc, Allocation{100.0, {0.5, 0.6}, 8.0}, p), DomainError);
    EXPECT_THROW(evaluate(sc, Allocation{0.0, {0.5, 0.5}, 8.0}, p), DomainError);
    Scenario bad = sc;
    bad[0].noise_power_w = 0.0;
    EXPECT_THROW(evaluate(bad, Allocation{100.0, {0.5, 0.5}, 8.0}, p), DomainError);
}

TEST(LinkModel, ParamValidation)
{
    SystemParams p;
    EXPECT_NO_THROW(p.validate());
    p.inband_fraction = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = SystemParams{};
    p.tol_ee = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = SystemParams{};
    p.n_subcarriers = 0;
    EXPECT_THROW(p.validate(), DomainError);
}
