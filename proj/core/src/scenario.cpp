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

#include "eemimo/scenario.hpp"

#include "eemimo/errors.hpp"
#include "eemimo/random.hpp"

#include <cmath>

namespace eemimo
{
    double path_loss_db(double distance_m, double carrier_ghz)
    {
        if (!(distance_m > 0.0) || !std::isfinite(distance_m))
            throw DomainError("distance must be positive");
        if (!(carrier_ghz > 0.0) || !std::isfinite(carrier_ghz))
            throw DomainError("carrier frequency must be positive");
        return 22.7 + 36.7 * std::log10(distance_m) + 26.0 * std::log10(carrier_ghz);
    }

    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

    double make_noise_power(const SystemParams &params, double noise_figure_db)
    {
        params.validate();
        const double dbm = -174.0 + 10.0 * std::log10(params.bandwidth_hz()) + noise_figure_db;
        return db_to_linear(dbm - 30.0);
    }

    Scenario scenario_from_path_loss(std::span<const double> path_loss, const SystemParams &params,
                                     double noise_figure_db)
    {
        const double noise = make_noise_power(params, noise_figure_db);
        Scenario out;
        out.reserve(path_loss.size());
        for (double pl : path_loss)
        {
            if (!std::isfinite(pl))
                throw DomainError("path loss must be finite");
            out.push_back(UserLink{db_to_linear(-pl), noise});
        }
        return out;
    }

    void DropConfig::validate() const
    {
        if (k_users < 1)
            throw DomainError("k_users must be at least 1");
        if (n_drops < 1)
            throw DomainError("n_drops must be at least 1");
        if (!(min_distance_m >= 0.0) || !(cell_radius_m >= min_distance_m) || !std::isfinite(cell_radius_m))
            throw DomainError("need 0 <= min_distance <= cell_radius");
        if (!(cell_radius_m > 0.0))
            throw DomainError("cell radius must be positive");
        if (!(carrier_ghz > 0.0))
            throw DomainError("carrier frequency must be positive");
    }

    std::vector<double> drop_radii(const DropConfig &cfg, std::uint64_t drop_index)
    {
        cfg.validate();
        auto engine = detail::make_engine(cfg.seed, drop_index);
        const double r0sq = cfg.min_distance_m * cfg.min_distance_m;
        const double span = cfg.cell_radius_m * cfg.cell_radius_m - r0sq;
        std::vector<double> radii(static_cast<std::size_t>(cfg.k_users));
        for (double &r : radii)
            r = std::sqrt(detail::uniform_open(engine) * span + r0sq);
        return radii;
    }

    Scenario generate_drop(const DropConfig &cfg, const SystemParams &params, std::uint64_t drop_index)
    {
        const std::vector<double> radii = drop_radii(cfg, drop_index);
        std::vector<double> pl(radii.size());
        for (std::size_t k = 0; k < radii.size(); ++k)
            pl[k] = path_loss_db(radii[k], cfg.carrier_ghz);
        return scenario_from_path_loss(pl, params, cfg.noise_figure_db);
    }
}
