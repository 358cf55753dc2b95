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

#pragma once

#include "eemimo/errors.hpp"
#include "eemimo/link_model.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

// DEEP-DEAL: alternating maximization of EE over the total power P (stationary
// point of EE(P)), the per-user shares (water-filling) and the relaxed antenna
// count M (stationary point of EE(M)), followed by integer rounding of M.

namespace eemimo
{
    struct RootSearchConfig
    {
        double x_test = 1.0; // first probe, must lie above the domain lower bound
        double tol = 1e-6;   // absolute width of the final bracket
        int max_expand = 200;
        int max_bisect = 200;
    };

    struct RootSearchResult
    {
        double root = 0.0;
        double bracket_lower = 0.0; // bracket found by the starting-point search
        double bracket_upper = 0.0;
        int evaluations = 0;
    };

    /// Root of a function that is positive just above `lower_bound` and negative for
    /// large arguments. Starting from cfg.x_test the upper probe doubles while f > 0 and
    /// the lower probe moves halfway towards `lower_bound` while f < 0; the resulting
    /// bracket is then bisected down to cfg.tol. Throws BracketFailure when either
    /// search exceeds cfg.max_expand steps and DomainError if f returns NaN.
    template <class F>
    RootSearchResult bracketed_bisection(F &&f, double lower_bound, const RootSearchConfig &cfg)
    {
        if (!(cfg.x_test > lower_bound) || !std::isfinite(cfg.x_test))
            throw DomainError("root search start must lie above the domain lower bound");
        if (!(cfg.tol > 0.0) || cfg.max_expand < 1 || cfg.max_bisect < 1)
            throw DomainError("root search needs tol > 0 and iteration caps >= 1");

        RootSearchResult res;
        auto eval = [&](double x)
        {
            ++res.evaluations;
            const double v = f(x);
            if (std::isnan(v))
                throw DomainError("root search function returned NaN");
            return v;
        };

        double x_upper = cfg.x_test;
        double x_lower = cfg.x_test;
        const double f_test = eval(cfg.x_test);

        double f_upper = f_test;
        for (int n = 0; f_upper > 0.0; ++n)
        {
            if (n >= cfg.max_expand || !std::isfinite(x_upper))
                throw BracketFailure("no sign change found above the start probe", x_lower, x_upper);
            x_upper *= 2.0;
            f_upper = eval(x_upper);
        }

        double f_lower = f_test;
        for (int n = 0; f_lower < 0.0; ++n)
        {
            if (n >= cfg.max_expand)
                throw BracketFailure("no sign change found below the start probe", x_lower, x_upper);
            x_lower = lower_bound + 0.5 * (x_lower - lower_bound);
            f_lower = eval(x_lower);
        }

        res.bracket_lower = x_lower;
        res.bracket_upper = x_upper;

        for (int n = 0; n < cfg.max_bisect && std::abs(x_upper - x_lower) > cfg.tol; ++n)
        {
            const double x_mid = 0.5 * x_lower + 0.5 * x_upper;
            if (eval(x_mid) > 0.0)
                x_lower = x_mid;
            else
                x_upper = x_mid;
        }
        res.root = 0.5 * x_lower + 0.5 * x_upper;
        return res;
    }

    /// Number of sign changes of f on `points` log-spaced samples of
    /// lower_bound + [lo - lower_bound, hi - lower_bound]. Zeros are skipped.
    template <class F>
    int count_sign_changes(F &&f, double lower_bound, double lo, double hi, int points = 64)
    {
        const double a = std::log(lo - lower_bound);
        const double b = std::log(hi - lower_bound);
        int changes = 0;
        int prev = 0;
        for (int i = 0; i < points; ++i)
        {
            const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            const double v = f(lower_bound + std::exp(a + t * (b - a)));
            const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
            if (s != 0)
            {
                if (prev != 0 && s != prev)
                    ++changes;
                prev = s;
            }
        }
        return changes;
    }

    // ---------- Stationarity functions ----------

    /// (sum_k dR_k/dP) / (sum_k R_k) - (dP_tot/dP) / P_tot: same sign as dEE/dP.
    /// Returns +inf when the sum rate underflows to zero.
    double f_P(double total_power, std::span<const UserLink> scenario, std::span<const double> shares,
               double antennas, const SystemParams &params);

    /// (sum_k dR_k/dM) / (sum_k R_k) - (dP_tot/dM) / P_tot over the relaxed M > K.
    double f_M(double antennas, std::span<const UserLink> scenario, double total_power, std::span<const double> shares,
               const SystemParams &params);

    // ---------- Water-filling ----------

    struct WaterfillResult
    {
        std::vector<double> shares;
        double water_level = 0.0; // mu, with shares_k = max(0, mu - 1/A_k)
        double nu = 0.0;          // Lagrange multiplier of the sum constraint (scenario overload only)
    };

    /// Maximizes sum_k log(1 + A_k w_k) over the probability simplex for gains A_k > 0.
    WaterfillResult waterfill(std::span<const double> gains);

    /// A_k = (M - K) lambda P beta_k / (sigma_k^2 + beta_k D).
    std::vector<double> waterfill_gains(std::span<const UserLink> scenario, double total_power, double antennas,
                                        const SystemParams &params);

    /// EE-optimal shares for fixed (P, M).
    WaterfillResult waterfill_shares(std::span<const UserLink> scenario, double total_power, double antennas,
                                     const SystemParams &params);

    // ---------- Sub-problem solvers ----------

    /// Default start probes.
    double power_probe(double antennas, const SystemParams &params);
    double antenna_probe(std::size_t n_users);

    RootSearchResult optimize_power(std::span<const UserLink> scenario, std::span<const double> shares,
                                    double antennas, const SystemParams &params,
                                    std::optional<RootSearchConfig> cfg = std::nullopt);

    RootSearchResult optimize_antennas(std::span<const UserLink> scenario, double total_power,
                                       std::span<const double> shares, const SystemParams &params,
                                       std::optional<RootSearchConfig> cfg = std::nullopt);

    /// Best of floor/ceil of the relaxed root, clamped to M >= K + 1. Ties go to the ceiling.
    int finalize_integer_M(std::span<const UserLink> scenario, double total_power, std::span<const double> shares,
                           double relaxed_antennas, const SystemParams &params);

    // ---------- Alternating optimization ----------

    struct AoSettings
    {
        std::optional<RootSearchConfig> power_search;   // x_test defaults to the 6 dB IBO power
        std::optional<RootSearchConfig> antenna_search; // x_test defaults to min(2K, K + 32)
        std::optional<double> initial_antennas;
        std::optional<double> initial_power;
        int max_iterations = 200;
        double relative_stop = 1e-9; // secondary stop on |dEE| / EE
        bool check_unimodality = false;
    };

    struct AoResult
    {
        Allocation allocation; // integer M
        Evaluation evaluation;
        int iterations = 0;
        std::vector<double> ee_trace; // EE at the start point, then after every iteration
        bool converged = false;
        double relaxed_antennas = 0.0;
        int multimodal_detections = 0;
        std::vector<std::string> diagnostics;
    };

    AoResult alternating_optimize(std::span<const UserLink> scenario, const SystemParams &params,
                                  const AoSettings &settings = {});
}
