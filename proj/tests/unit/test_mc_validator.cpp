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
#include "eemimo/experiment.hpp"
#include "eemimo/mc_validator.hpp"
#include "eemimo/pa_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace eemimo;

TEST(SoftLimit, Behaviour)
{
    const double p_sat = 4.0;
    const std::complex<double> small = std::polar(std::sqrt(p_sat / 2.0), 0.7);
    EXPECT_EQ(soft_limit(small, p_sat), small);
    const std::complex<double> big = std::polar(2.0 * std::sqrt(p_sat), -2.1);
    const auto out = soft_limit(big, p_sat);
    EXPECT_NEAR(std::abs(out), std::sqrt(p_sat), 1e-15);
    EXPECT_NEAR(std::arg(out), -2.1, 1e-15);
    EXPECT_EQ(soft_limit({0.0, 0.0}, p_sat), std::complex<double>(0.0, 0.0));
}

TEST(Bussgang, UnitBackoffMatchesClosedForm)
{
    const McEstimate e = estimate_bussgang(McConfig{1'000'000, 1.0, 1.0, 11});
    EXPECT_NEAR(e.lambda_closed, 0.5952482818617863, 1e-15);
    EXPECT_LE(std::abs(e.lambda_hat - e.lambda_closed), 3.0 * e.lambda_se);
    EXPECT_LE(std::abs(e.distortion_hat - e.distortion_closed), 3.0 * e.distortion_se);
    EXPECT_NEAR(e.distortion_closed, 1.0 - std::exp(-1.0) - e.lambda_closed, 1e-15);
    EXPECT_LE(e.residual, 4.0 / std::sqrt(1e6));
}

TEST(Bussgang, NoClippingAtHighBackoff)
{
    const McEstimate e = estimate_bussgang(McConfig{100'000, 100.0, 2.5, 3});
    EXPECT_NEAR(e.lambda_hat, 1.0, 1e-12);
    EXPECT_NEAR(e.distortion_hat, 0.0, 1e-12);
}

TEST(Bussgang, ScalesWithInputPower)
{
    const McEstimate a = estimate_bussgang(McConfig{50'000, 0.5, 1.0, 5});
    const McEstimate b = estimate_bussgang(McConfig{50'000, 0.5, 8.0, 5});
    EXPECT_NEAR(a.lambda_hat, b.lambda_hat, 1e-12);
    EXPECT_NEAR(8.0 * a.distortion_hat, b.distortion_hat, 1e-10);
}

TEST(Bussgang, OutputPowerSanityBound)
{
    const McConfig cfg{200'000, 0.3, 1.0, 9};
    const McEstimate e = estimate_bussgang(cfg);
    // E|yhat|^2 = lambda E|y|^2 + D for the Bussgang split.
    const double out_power = e.lambda_hat * 1.0 + e.distortion_hat;
    EXPECT_LE(out_power, cfg.psi * cfg.input_power + cfg.input_power);
}

TEST(Bussgang, Deterministic)
{
    const McConfig cfg{40'000, 2.0, 1.0, 1234};
    const McEstimate a = estimate_bussgang(cfg);
    const McEstimate b = estimate_bussgang(cfg);
    EXPECT_EQ(a.lambda_hat, b.lambda_hat);
    EXPECT_EQ(a.distortion_hat, b.distortion_hat);
    EXPECT_EQ(a.residual, b.residual);
    const McEstimate c = estimate_bussgang(McConfig{40'000, 2.0, 1.0, 1235});
    EXPECT_NE(a.lambda_hat, c.lambda_hat);
}

TEST(Bussgang, ErrorShrinksLikeInverseRootN)
{
    // RMS error over independent seeds at n and 2n; expected ratio sqrt(2).
    const int seeds = 200;
    double se_n = 0.0, se_2n = 0.0, sd_n = 0.0, sd_2n = 0.0;
    for (int s = 0; s < seeds; ++s)
    {
        const McEstimate a = estimate_bussgang(McConfig{10'000, 1.0, 1.0, static_cast<std::uint64_t>(1000 + s)});
        const McEstimate b = estimate_bussgang(McConfig{20'000, 1.0, 1.0, static_cast<std::uint64_t>(5000 + s)});
        se_n += std::pow(a.lambda_hat - a.lambda_closed, 2);
        se_2n += std::pow(b.lambda_hat - b.lambda_closed, 2);
        sd_n += std::pow(a.distortion_hat - a.distortion_closed, 2);
        sd_2n += std::pow(b.distortion_hat - b.distortion_closed, 2);
    }
    const double ratio_lambda = std::sqrt(se_n / se_2n);
    const double ratio_d = std::sqrt(sd_n / sd_2n);
    EXPECT_NEAR(ratio_lambda, std::numbers::sqrt2, 0.3 * std::numbers::sqrt2);
    EXPECT_NEAR(ratio_d, std::numbers::sqrt2, 0.3 * std::numbers::sqrt2);
}

TEST(Bussgang, ValidationPointsAcrossBackoffs)
{
    for (double psi : {0.01, 0.1, 3.981, 10.0})
    {
        const ValidationRow v = validate_point(psi, 200'000, 77);
        EXPECT_TRUE(v.pass()) << psi << " " << v.estimate.lambda_hat << " " << v.estimate.lambda_closed;
    }
}

TEST(Bussgang, RejectsBadConfig)
{
    EXPECT_THROW(estimate_bussgang(McConfig{1000, 1.0, 1.0, 1}), DomainError);
    EXPECT_THROW(estimate_bussgang(McConfig{20'000, 0.0, 1.0, 1}), DomainError);
    EXPECT_THROW(estimate_bussgang(McConfig{20'000, 1.0, -1.0, 1}), DomainError);
}
