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

#include "eemimo/link_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eemimo
{
    /// 22.7 + 36.7 log10(d) + 26 log10(f_c), d in meters and f_c in GHz.
    double path_loss_db(double distance_m, double carrier_ghz);

    double db_to_linear(double db);
    double linear_to_db(double linear);

    /// Thermal noise over N_U * df at -174 dBm/Hz plus a receiver noise figure, in watts.
    double make_noise_power(const SystemParams &params, double noise_figure_db = 0.0);

    /// Users with the given path losses (dB) and common noise power.
    Scenario scenario_from_path_loss(std::span<const double> path_loss_db, const SystemParams &params,
                                     double noise_figure_db = 0.0);

    struct DropConfig
    {
        int k_users = 60;
        double cell_radius_m = 5000.0;
        double min_distance_m = 5.0;
        int n_drops = 100;
        std::uint64_t seed = 1;
        double carrier_ghz = 3.0;
        double noise_figure_db = 0.0;

        /// Throws DomainError if k_users < 1, n_drops < 1 or the annulus is invalid.
        void validate() const;
    };

    /// User distances of one drop, area-uniform in [min_distance, cell_radius].
    std::vector<double> drop_radii(const DropConfig &cfg, std::uint64_t drop_index);

    Scenario generate_drop(const DropConfig &cfg, const SystemParams &params, std::uint64_t drop_index);
}
