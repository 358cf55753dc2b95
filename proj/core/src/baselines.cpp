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

#include "eemimo/baselines.hpp"

#include "eemimo/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <thread>

namespace eemimo
{
    std::string to_string(BaselineKind kind)
    {
        return kind == BaselineKind::RefE ? "ref_e" : "deep";
    }

    BaselineKind parse_baseline_kind(std::string_view text)
    {
        std::string s(text);
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c)
                       { return static_cast<char>(std::tolower(c)); });
        if (s == "ref_e" || s == "refe" || s == "ref-e")
            return BaselineKind::RefE;
        if (s == "deep")
            return BaselineKind::DeepFixedM;
        throw DomainError("unknown baseline '" + std::string(text) + "'");
    }

    std::string BaselineSpec::label() const
    {
        return kind == BaselineKind::RefE ? "REF-E" : "DEEP";
    }

    namespace
    {
        void check_spec(std::span<const UserLink> scenario, const BaselineSpec &spec)
        {
            if (scenario.empty())
                throw DomainError("scenario has no users");
            if (spec.fixed_m <= static_cast<int>(scenario.size()))
                throw DomainError("baseline antenna count must exceed the number of users");
            if (!std::isfinite(spec.ref_ibo_db))
                throw DomainError("baseline IBO must be finite");
        }
    }

    BaselineResult ref_e(std::span<const UserLink> scenario, const BaselineSpec &spec, const SystemParams &params)
    {
        check_spec(scenario, spec);
        params.validate();
        const double m = spec.fixed_m;
        BaselineResult res;
        res.allocation.total_power_w = m * params.p_max_w / std::pow(10.0, spec.ref_ibo_db / 10.0);
        res.allocation.shares.assign(scenario.size(), 1.0 / static_cast<double>(scenario.size()));
        res.allocation.antennas = m;
        res.evaluation = evaluate(scenario, res.allocation, params);
        res.ee_trace.push_back(res.evaluation.ee);
        return res;
    }

    BaselineResult deep_fixed_m(std::span<const UserLink> scenario, const BaselineSpec &spec,
                                const SystemParams &params, int max_iterations, double relative_stop)
    {
        check_spec(scenario, spec);
        params.validate();
        const double m = spec.fixed_m;
        const std::size_t K = scenario.size();

        std::vector<double> shares(K, 1.0 / static_cast<double>(K));
        double power = power_probe(m, params);
        double ee_prev = energy_efficiency(scenario, power, shares, m, params);

        BaselineResult res;
        res.converged = false;
        res.ee_trace.push_back(ee_prev);
        double best_ee = ee_prev;
        double best_power = power;
        std::vector<double> best_shares = shares;

        for (int it = 1; it <= max_iterations; ++it)
        {
            power = optimize_power(scenario, shares, m, params).root;
            if (K > 1)
                shares = waterfill_shares(scenario, power, m, params).shares;
            const double ee = energy_efficiency(scenario, power, shares, m, params);
            res.ee_trace.push_back(ee);
            res.iterations = it;
            if (ee > best_ee)
            {
                best_ee = ee;
                best_power = power;
                best_shares = shares;
            }
            const double change = std::abs(ee - ee_prev);
            if (change < params.tol_ee || change < relative_stop * std::abs(ee))
            {
                res.converged = true;
                break;
            }
            ee_prev = ee;
        }
        if (!res.converged)
        {
            power = best_power;
            shares = best_shares;
        }

        res.allocation = Allocation{power, shares, m};
        res.evaluation = evaluate(scenario, res.allocation, params);
        return res;
    }

    BaselineResult run_baseline(std::span<const UserLink> scenario, const BaselineSpec &spec,
                                const SystemParams &params)
    {
        return spec.kind == BaselineKind::RefE ? ref_e(scenario, spec, params)
                                               : deep_fixed_m(scenario, spec, params);
    }

    void GridSpec::validate() const
    {
        if (m_step < 1 || m_max < m_min)
            throw DomainError("antenna grid is empty");
        if (!(p_min > 0.0) || !(p_max >= p_min) || !std::isfinite(p_max))
            throw DomainError("power grid needs 0 < p_min <= p_max");
        if (p_log_points <= 0 && !(p_step > 0.0))
            throw DomainError("power grid needs p_step > 0 or p_log_points > 0");
    }

    std::vector<double> GridSpec::power_values() const
    {
        validate();
        std::vector<double> out;
        if (p_log_points > 0)
        {
            if (p_log_points == 1 || p_min == p_max)
                return {p_min};
            const double a = std::log(p_min);
            const double b = std::log(p_max);
            out.reserve(static_cast<std::size_t>(p_log_points));
            for (int i = 0; i < p_log_points; ++i)
                out.push_back(std::exp(a + (b - a) * i / (p_log_points - 1)));
            out.front() = p_min;
            out.back() = p_max;
            return out;
        }
        const auto n = static_cast<std::size_t>(std::floor((p_max - p_min) / p_step + 1e-9)) + 1;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(p_min + static_cast<double>(i) * p_step);
        return out;
    }

    std::vector<int> GridSpec::antenna_values() const
    {
        validate();
        std::vector<int> out;
        for (int m = m_min; m <= m_max; m += m_step)
            out.push_back(m);
        return out;
    }

    namespace
    {
        struct GridBest
        {
            double ee = -1.0;
            int m = 0;
            double p = 0.0;
            std::size_t visited = 0;
        };

        // Strictly-greater keeps the first maximum in (M, P) scan order.
        GridBest scan(std::span<const UserLink> scenario, std::span<const int> ms, std::span<const double> ps,
                      std::span<const double> shares, const SystemParams &params)
        {
            GridBest best;
            for (int m : ms)
                for (double p : ps)
                {
                    const double ee = energy_efficiency(scenario, p, shares, m, params);
                    ++best.visited;
                    if (ee > best.ee)
                        best = {ee, m, p, best.visited};
                }
            return best;
        }
    }

    GridSearchResult exhaustive_search(std::span<const UserLink> scenario, const GridSpec &grid,
                                       const SystemParams &params, std::optional<std::vector<double>> shares,
                                       unsigned threads)
    {
        params.validate();
        if (scenario.empty())
            throw DomainError("scenario has no users");
        const std::vector<int> ms = grid.antenna_values();
        const std::vector<double> ps = grid.power_values();
        if (ms.front() <= static_cast<int>(scenario.size()))
            throw DomainError("antenna grid must start above the number of users");

        const std::vector<double> w =
            shares.value_or(std::vector<double>(scenario.size(), 1.0 / static_cast<double>(scenario.size())));
        check_allocation(scenario, Allocation{ps.front(), w, static_cast<double>(ms.front())});

        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, static_cast<unsigned>(ms.size()));

        // Contiguous M blocks, merged in block order with the same strict comparison.
        std::vector<GridBest> partial(threads);
        std::vector<std::thread> pool;
        const std::size_t block = (ms.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t)
        {
            const std::size_t lo = std::min(ms.size(), t * block);
            const std::size_t hi = std::min(ms.size(), lo + block);
            auto job = [&, t, lo, hi]
            { partial[t] = scan(scenario, std::span(ms).subspan(lo, hi - lo), ps, w, params); };
            if (threads == 1)
                job();
            else
                pool.emplace_back(job);
        }
        for (auto &th : pool)
            th.join();

        GridBest best;
        std::size_t visited = 0;
        for (const GridBest &b : partial)
        {
            visited += b.visited;
            if (b.visited > 0 && b.ee > best.ee)
                best = b;
        }

        GridSearchResult res;
        res.allocation = Allocation{best.p, w, static_cast<double>(best.m)};
        res.evaluation = evaluate(scenario, res.allocation, params);
        res.points_visited = visited;
        return res;
    }
}
