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

#include "eemimo/link_model.hpp"

#include "eemimo/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace eemimo
{
    void SystemParams::validate() const
    {
        if (n_subcarriers < 1)
            throw DomainError("n_subcarriers must be >= 1");
        if (!(subcarrier_spacing_hz > 0.0))
            throw DomainError("subcarrier_spacing must be positive");
        if (!(inband_fraction > 0.0 && inband_fraction <= 1.0))
            throw DomainError("inband_fraction must lie in (0, 1]");
        if (!(p_max_w > 0.0) || !(p_const_w > 0.0) || !(p_sprf_w > 0.0))
            throw DomainError("p_max, p_const and p_sprf must be positive");
        if (!(tol_p > 0.0) || !(tol_m > 0.0) || !(tol_ee > 0.0))
            throw DomainError("tolerances must be positive");
    }

    void check_allocation(std::span<const UserLink> scenario, const Allocation &alloc)
    {
        const std::size_t K = scenario.size();
        if (K == 0)
            throw DomainError("scenario has no users");
        if (alloc.shares.size() != K)
            throw DomainError("share vector has " + std::to_string(alloc.shares.size()) + " entries for " +
                              std::to_string(K) + " users");
        if (!(alloc.antennas > static_cast<double>(K)))
            throw DomainError("zero-forcing requires M > K");
        double sum = 0.0;
        for (double w : alloc.shares)
        {
            if (!(w >= 0.0))
                throw DomainError("shares must be non-negative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw DomainError("shares must sum to one");
        for (const auto &link : scenario)
            if (!(link.beta > 0.0) || !(link.noise_power_w > 0.0))
                throw DomainError("user link needs beta > 0 and noise power > 0");
    }

    LinkState link_state(double total_power, double antennas, std::size_t n_users, const SystemParams &params)
    {
        if (!(antennas > static_cast<double>(n_users)))
            throw DomainError("zero-forcing requires M > K");
        const double psi = ibo(total_power, antennas, params.p_max_w);
        LinkState s;
        s.total_power = total_power;
        s.array_gain = antennas - static_cast<double>(n_users);
        s.lambda = lambda_of_psi(psi);
        s.d_total = distortion_total(total_power, psi, params.inband_fraction);
        return s;
    }

    double sndr(const UserLink &link, double share, const LinkState &state)
    {
        return state.array_gain * state.lambda * share * state.total_power * link.beta /
               (link.noise_power_w + link.beta * state.d_total);
    }

    std::vector<double> sndr(std::span<const UserLink> scenario, const Allocation &alloc, const SystemParams &params)
    {
        check_allocation(scenario, alloc);
        const LinkState state = link_state(alloc.total_power_w, alloc.antennas, scenario.size(), params);
        std::vector<double> out(scenario.size());
        for (std::size_t k = 0; k < scenario.size(); ++k)
            out[k] = sndr(scenario[k], alloc.shares[k], state);
        return out;
    }

    double rate(double sndr, const SystemParams &params)
    {
        if (!(sndr >= 0.0))
            throw DomainError("SNDR must be non-negative");
        return params.bandwidth_hz() * std::log1p(sndr) / std::numbers::ln2;
    }

    double total_power(double total_power, double antennas, const SystemParams &params)
    {
        return pa_power(total_power, antennas, params.p_max_w, params.pa_class) + params.p_const_w +
               antennas * params.p_sprf_w;
    }

    double total_power(const Allocation &alloc, const SystemParams &params)
    {
        return total_power(alloc.total_power_w, alloc.antennas, params);
    }

    Evaluation evaluate(std::span<const UserLink> scenario, const Allocation &alloc, const SystemParams &params)
    {
        check_allocation(scenario, alloc);
        const LinkState state = link_state(alloc.total_power_w, alloc.antennas, scenario.size(), params);
        Evaluation ev;
        ev.psi = ibo(alloc.total_power_w, alloc.antennas, params.p_max_w);
        ev.lambda = state.lambda;
        ev.d_total = state.d_total;
        ev.sndr.resize(scenario.size());
        ev.rates.resize(scenario.size());
        for (std::size_t k = 0; k < scenario.size(); ++k)
        {
            ev.sndr[k] = sndr(scenario[k], alloc.shares[k], state);
            ev.rates[k] = rate(ev.sndr[k], params);
            ev.sum_rate += ev.rates[k];
        }
        ev.p_pa = pa_power(alloc.total_power_w, alloc.antennas, params.p_max_w, params.pa_class);
        ev.p_tot = ev.p_pa + params.p_const_w + alloc.antennas * params.p_sprf_w;
        ev.ee = ev.sum_rate / ev.p_tot;
        return ev;
    }

    double energy_efficiency(std::span<const UserLink> scenario, double total_power_w, std::span<const double> shares,
                             double antennas, const SystemParams &params)
    {
        const LinkState state = link_state(total_power_w, antennas, scenario.size(), params);
        double sum_log = 0.0;
        for (std::size_t k = 0; k < scenario.size(); ++k)
            sum_log += std::log1p(sndr(scenario[k], shares[k], state));
        const double sum_rate = params.bandwidth_hz() * sum_log / std::numbers::ln2;
        return sum_rate / total_power(total_power_w, antennas, params);
    }
}
