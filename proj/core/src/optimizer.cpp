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

#include "eemimo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace eemimo
{
    namespace
    {
        constexpr double six_db = 3.9810717055349722; // 10^0.6

        void check_problem(std::span<const UserLink> scenario, std::span<const double> shares, double antennas)
        {
            if (scenario.empty())
                throw DomainError("scenario has no users");
            if (shares.size() != scenario.size())
                throw DomainError("share vector does not match the number of users");
            if (!(antennas > static_cast<double>(scenario.size())))
                throw DomainError("zero-forcing requires M > K");
        }

        double equal_share(std::size_t n) { return 1.0 / static_cast<double>(n); }
    }

    double f_P(double total_power, std::span<const UserLink> scenario, std::span<const double> shares,
               double antennas, const SystemParams &params)
    {
        check_problem(scenario, shares, antennas);
        const double p_max = params.p_max_w;
        const double eta = params.inband_fraction;
        const PaPoint pt = pa_point(total_power, antennas, p_max, eta, params.pa_class);
        const PaSensitivity ds = sensitivity_P(total_power, antennas, p_max, eta, params.pa_class);
        const double dlambda_p = dlambdaP_dP(total_power, antennas, p_max);
        const double gain = antennas - static_cast<double>(scenario.size());

        // The common factor B / ln 2 of R_k and dR_k/dP cancels in the ratio.
        double sum_log = 0.0;
        double sum_dlog = 0.0;
        for (std::size_t k = 0; k < scenario.size(); ++k)
        {
            const double beta = scenario[k].beta;
            const double den = scenario[k].noise_power_w + beta * pt.d_total;
            const double gamma = gain * pt.lambda * shares[k] * total_power * beta / den;
            sum_log += std::log1p(gamma);
            sum_dlog += gain * shares[k] * beta / ((1.0 + gamma) * den * den) *
                        (dlambda_p * den - pt.lambda * total_power * beta * ds.dd);
        }
        if (sum_log == 0.0)
            return std::numeric_limits<double>::infinity();

        const double p_tot = pt.p_pa + params.p_const_w + antennas * params.p_sprf_w;
        return sum_dlog / sum_log - ds.dppa / p_tot;
    }

    double f_M(double antennas, std::span<const UserLink> scenario, double total_power, std::span<const double> shares,
               const SystemParams &params)
    {
        check_problem(scenario, shares, antennas);
        const double p_max = params.p_max_w;
        const double eta = params.inband_fraction;
        const PaPoint pt = pa_point(total_power, antennas, p_max, eta, params.pa_class);
        const PaSensitivity ds = sensitivity_M(total_power, antennas, p_max, eta, params.pa_class);
        const double gain = antennas - static_cast<double>(scenario.size());

        double sum_log = 0.0;
        double sum_dlog = 0.0;
        for (std::size_t k = 0; k < scenario.size(); ++k)
        {
            const double beta = scenario[k].beta;
            const double den = scenario[k].noise_power_w + beta * pt.d_total;
            const double gamma = gain * pt.lambda * shares[k] * total_power * beta / den;
            sum_log += std::log1p(gamma);
            sum_dlog += beta * total_power * shares[k] / ((1.0 + gamma) * den * den) *
                        ((pt.lambda + gain * ds.dlambda) * den - gain * pt.lambda * beta * ds.dd);
        }
        if (sum_log == 0.0)
            return std::numeric_limits<double>::infinity();

        const double p_tot = pt.p_pa + params.p_const_w + antennas * params.p_sprf_w;
        return sum_dlog / sum_log - (ds.dppa + params.p_sprf_w) / p_tot;
    }

    WaterfillResult waterfill(std::span<const double> gains)
    {
        const std::size_t K = gains.size();
        if (K == 0)
            throw DomainError("water-filling needs at least one user");
        for (double a : gains)
            if (!(a > 0.0))
                throw DomainError("water-filling gains must be positive");

        WaterfillResult res;
        res.shares.assign(K, 0.0);
        if (K == 1)
        {
            res.shares[0] = 1.0;
            res.water_level = 1.0 + 1.0 / gains[0];
            return res;
        }

        // Breakpoints b_k = 1/A_k in ascending order; with n users active the level is
        // mu = (1 + sum of the n smallest b) / n, valid once it does not reach b_(n).
        std::vector<double> floor(K);
        for (std::size_t k = 0; k < K; ++k)
            floor[k] = 1.0 / gains[k];
        std::vector<std::size_t> order(K);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j)
                         { return floor[i] < floor[j]; });

        double mu = 0.0;
        std::size_t active = 0;
        double prefix = 0.0;
        for (std::size_t n = 1; n <= K; ++n)
        {
            prefix += floor[order[n - 1]];
            mu = (1.0 + prefix) / static_cast<double>(n);
            active = n;
            if (n == K || mu <= floor[order[n]])
                break;
        }

        // Shares relative to the lowest active floor keep precision when all floors are large.
        const double base = floor[order[0]];
        const double level = mu - base;
        double sum = 0.0;
        for (std::size_t i = 0; i < active; ++i)
        {
            const std::size_t k = order[i];
            res.shares[k] = std::max(0.0, level - (floor[k] - base));
            sum += res.shares[k];
        }

        if (!(std::abs(sum - 1.0) <= 1e-10) || !std::isfinite(mu))
        {
            // Closed form lost precision: bisect on the level directly.
            double lo = 0.0;
            double hi = 1.0 + floor[order[K - 1]] - base;
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                double s = 0.0;
                for (std::size_t k = 0; k < K; ++k)
                    s += std::max(0.0, mid - (floor[k] - base));
                (s > 1.0 ? hi : lo) = mid;
            }
            sum = 0.0;
            for (std::size_t k = 0; k < K; ++k)
            {
                res.shares[k] = std::max(0.0, hi - (floor[k] - base));
                sum += res.shares[k];
            }
            mu = base + hi;
        }

        for (double &w : res.shares)
            w /= sum;
        res.water_level = mu;
        return res;
    }

    std::vector<double> waterfill_gains(std::span<const UserLink> scenario, double total_power, double antennas,
                                        const SystemParams &params)
    {
        const LinkState state = link_state(total_power, antennas, scenario.size(), params);
        std::vector<double> gains(scenario.size());
        for (std::size_t k = 0; k < scenario.size(); ++k)
            gains[k] = sndr(scenario[k], 1.0, state);
        return gains;
    }

    WaterfillResult waterfill_shares(std::span<const UserLink> scenario, double total_power, double antennas,
                                     const SystemParams &params)
    {
        WaterfillResult res = waterfill(waterfill_gains(scenario, total_power, antennas, params));
        res.nu = params.bandwidth_hz() / (res.water_level * eemimo::total_power(total_power, antennas, params));
        return res;
    }

    double power_probe(double antennas, const SystemParams &params)
    {
        return antennas * params.p_max_w / six_db;
    }

    double antenna_probe(std::size_t n_users)
    {
        const double K = static_cast<double>(n_users);
        return std::min(2.0 * K, K + 32.0);
    }

    RootSearchResult optimize_power(std::span<const UserLink> scenario, std::span<const double> shares,
                                    double antennas, const SystemParams &params, std::optional<RootSearchConfig> cfg)
    {
        check_problem(scenario, shares, antennas);
        const RootSearchConfig search = cfg.value_or(RootSearchConfig{power_probe(antennas, params), params.tol_p});
        return bracketed_bisection([&](double p)
                                   { return f_P(p, scenario, shares, antennas, params); },
                                   0.0, search);
    }

    RootSearchResult optimize_antennas(std::span<const UserLink> scenario, double total_power,
                                       std::span<const double> shares, const SystemParams &params,
                                       std::optional<RootSearchConfig> cfg)
    {
        const double K = static_cast<double>(scenario.size());
        const RootSearchConfig search = cfg.value_or(RootSearchConfig{antenna_probe(scenario.size()), params.tol_m});
        return bracketed_bisection([&](double m)
                                   { return f_M(m, scenario, total_power, shares, params); },
                                   K, search);
    }

    int finalize_integer_M(std::span<const UserLink> scenario, double total_power, std::span<const double> shares,
                           double relaxed_antennas, const SystemParams &params)
    {
        const double min_m = static_cast<double>(scenario.size()) + 1.0;
        const double lo = std::max(min_m, std::floor(relaxed_antennas));
        const double hi = std::max(min_m, std::ceil(relaxed_antennas));
        if (lo == hi)
            return static_cast<int>(lo);
        const double ee_lo = energy_efficiency(scenario, total_power, shares, lo, params);
        const double ee_hi = energy_efficiency(scenario, total_power, shares, hi, params);
        return static_cast<int>(ee_lo > ee_hi ? lo : hi);
    }

    AoResult alternating_optimize(std::span<const UserLink> scenario, const SystemParams &params,
                                  const AoSettings &settings)
    {
        params.validate();
        if (scenario.empty())
            throw DomainError("scenario has no users");
        const std::size_t K = scenario.size();

        std::vector<double> shares(K, equal_share(K));
        double antennas = settings.initial_antennas.value_or(antenna_probe(K));
        if (!(antennas > static_cast<double>(K)))
            throw DomainError("initial antenna count must exceed the number of users");
        double power = settings.initial_power.value_or(power_probe(antennas, params));

        AoResult res;
        double ee_prev = energy_efficiency(scenario, power, shares, antennas, params);
        res.ee_trace.push_back(ee_prev);

        struct Iterate
        {
            double power;
            std::vector<double> shares;
            double antennas;
            double ee;
        } best{power, shares, antennas, ee_prev};

        auto note_multimodal = [&](const char *which, int changes, double lo, double hi)
        {
            ++res.multimodal_detections;
            std::ostringstream msg;
            msg << which << " changes sign " << changes << " times in [" << lo << ", " << hi << "]";
            res.diagnostics.push_back(msg.str());
        };

        for (int it = 1; it <= settings.max_iterations; ++it)
        {
            RootSearchConfig cfg_p = settings.power_search.value_or(
                RootSearchConfig{power_probe(antennas, params), params.tol_p});
            const RootSearchResult rp = optimize_power(scenario, shares, antennas, params, cfg_p);
            power = rp.root;
            if (settings.check_unimodality && rp.bracket_upper > rp.bracket_lower)
            {
                const int n = count_sign_changes([&](double p)
                                                 { return f_P(p, scenario, shares, antennas, params); },
                                                 0.0, rp.bracket_lower, rp.bracket_upper);
                if (n > 1)
                    note_multimodal("f_P", n, rp.bracket_lower, rp.bracket_upper);
            }

            shares = waterfill_shares(scenario, power, antennas, params).shares;

            const RootSearchResult rm = optimize_antennas(scenario, power, shares, params, settings.antenna_search);
            antennas = rm.root;
            if (settings.check_unimodality && rm.bracket_upper > rm.bracket_lower)
            {
                const int n = count_sign_changes([&](double m)
                                                 { return f_M(m, scenario, power, shares, params); },
                                                 static_cast<double>(K), rm.bracket_lower, rm.bracket_upper);
                if (n > 1)
                    note_multimodal("f_M", n, rm.bracket_lower, rm.bracket_upper);
            }

            const double ee = energy_efficiency(scenario, power, shares, antennas, params);
            res.ee_trace.push_back(ee);
            res.iterations = it;
            if (ee > best.ee)
                best = {power, shares, antennas, ee};

            const double change = std::abs(ee - ee_prev);
            if (change < params.tol_ee || change < settings.relative_stop * std::abs(ee))
            {
                res.converged = true;
                break;
            }
            ee_prev = ee;
        }

        if (!res.converged)
        {
            power = best.power;
            shares = best.shares;
            antennas = best.antennas;
        }

        res.relaxed_antennas = antennas;
        const int m_star = finalize_integer_M(scenario, power, shares, antennas, params);
        res.allocation = Allocation{power, shares, static_cast<double>(m_star)};
        res.evaluation = evaluate(scenario, res.allocation, params);
        return res;
    }
}
