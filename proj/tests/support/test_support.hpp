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
#include "eemimo/scenario.hpp"

#include <cmath>
#include <vector>

namespace testing_support
{
    /// K users sharing one path loss, default system parameters.
    inline eemimo::Scenario homogeneous(int k, double path_loss_db, const eemimo::SystemParams &params = {})
    {
        return eemimo::scenario_from_path_loss(std::vector<double>(static_cast<std::size_t>(k), path_loss_db),
                                               params);
    }

    inline eemimo::Scenario two_users(double pl1, double pl2, const eemimo::SystemParams &params = {})
    {
        return eemimo::scenario_from_path_loss(std::vector<double>{pl1, pl2}, params);
    }

    inline eemimo::SystemParams params_for(eemimo::PaClass cls)
    {
        eemimo::SystemParams p;
        p.pa_class = cls;
        return p;
    }

    inline std::vector<double> logspace(double lo, double hi, int n)
    {
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
        return out;
    }

    inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0)
    {
        return std::abs(a - b) <= rel * std::abs(b) + abs_floor;
    }
}
