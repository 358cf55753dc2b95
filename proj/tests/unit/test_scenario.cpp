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
#include "eemimo/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace eemimo;

TEST(PathLoss, Examples)
{
    EXPECT_NEAR(path_loss_db(1.0, 3.0), 22.7 + 26.0 * std::log10(3.0), 1e-12);
    EXPECT_NEAR(path_loss_db(1.0, 3.0), 35.10, 1e-2);
    EXPECT_NEAR(path_loss_db(1000.0, 3.0), 145.20, 1e-2);
    EXPECT_NEAR(path_loss_db(1000.0, 3.0), 22.7 + 3.0 * 36.7 + 26.0 * std::log10(3.0), 1e-12);
    EXPECT_THROW(path_loss_db(0.0, 3.0), DomainError);
    EXPECT_THROW(path_loss_db(10.0, 0.0), DomainError);
    for (double db : {35.1, 80.0, 145.2, 170.0})
        EXPECT_NEAR(linear_to_db(db_to_linear(-db)), -db, 1e-12);
}

TEST(Noise, ThermalFloor)
{
    SystemParams p;
    const double n = make_noise_power(p);
    EXPECT_NEAR(linear_to_db(n) + 30.0, -101.447, 1e-3);
    EXPECT_NEAR(n, 7.17e-14, 0.01e-14);
    p.n_subcarriers = 1;
    p.subcarrier_spacing_hz = 1.0;
    EXPECT_NEAR(linear_to_db(make_noise_power(p)) + 30.0, -174.0, 1e-12);
    SystemParams wide;
    wide.subcarrier_spacing_hz *= 2.0;
    EXPECT_NEAR(linear_to_db(make_noise_power(wide) / make_noise_power(SystemParams{})), 3.0103, 1e-4);
    EXPECT_NEAR(linear_to_db(make_noise_power(SystemParams{}, 7.0) / make_noise_power(SystemParams{})), 7.0, 1e-12);
}

TEST(Drops, DegenerateAnnulus)
{
    DropConfig cfg;
    cfg.k_users = 8;
    cfg.min_distance_m = cfg.cell_radius_m = 250.0;
    const Scenario sc = generate_drop(cfg, SystemParams{}, 3);
    for (const auto &u : sc)
        EXPECT_NEAR(u.beta, sc.front().beta, 1e-15 * sc.front().beta);
}

TEST(Drops, Deterministic)
{
    DropConfig cfg;
    const Scenario a = generate_drop(cfg, SystemParams{}, 17);
    const Scenario b = generate_drop(cfg, SystemParams{}, 17);
    const Scenario c = generate_drop(cfg, SystemParams{}, 18);
    ASSERT_EQ(a.size(), 60u);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        EXPECT_EQ(a[k].beta, b[k].beta);
        EXPECT_EQ(a[k].noise_power_w, b[k].noise_power_w);
    }
    EXPECT_NE(a[0].beta, c[0].beta);
    cfg.seed = 2;
    EXPECT_NE(generate_drop(cfg, SystemParams{}, 17)[0].beta, a[0].beta);
}

TEST(Drops, RadiiAreAreaUniform)
{
    DropConfig cfg;
    cfg.k_users = 1000;
    cfg.cell_radius_m = 5000.0;
    cfg.min_distance_m = 5.0;
    std::vector<double> u;
    for (std::uint64_t d = 0; d < 100; ++d)
        for (double r : drop_radii(cfg, d))
        {
            EXPECT_GE(r, cfg.min_distance_m);
            EXPECT_LE(r, cfg.cell_radius_m);
            u.push_back((r * r - 25.0) / (5000.0 * 5000.0 - 25.0));
        }
    ASSERT_EQ(u.size(), 100'000u);
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    const double n = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        ks = std::max({ks, std::abs((i + 1) / n - u[i]), std::abs(u[i] - i / n)});
    EXPECT_LT(ks, 0.01);
}

TEST(Drops, Validation)
{
    DropConfig cfg;
    cfg.min_distance_m = 6000.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = DropConfig{};
    cfg.k_users = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = DropConfig{};
    cfg.n_drops = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
}
