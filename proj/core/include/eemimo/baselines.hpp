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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eemimo
{
    enum class BaselineKind
    {
        RefE,       // fixed IBO, equal shares, fixed M
        DeepFixedM, // optimized P and shares, fixed M
    };

    std::string to_string(BaselineKind kind);

    /// Accepts "ref_e"/"refe" and "deep".
    BaselineKind parse_baseline_kind(std::string_view text);

    struct BaselineSpec
    {
        BaselineKind kind = BaselineKind::RefE;
        int fixed_m = 32;
        double ref_ibo_db = 6.0;

        /// Short label used in result tables, e.g. "REF-E" or "DEEP".
        std::string label() const;
    };

    struct BaselineResult
    {
        Allocation allocation;
        Evaluation evaluation;
        int iterations = 0;
        bool converged = true;
        std::vector<double> ee_trace;
    };

    /// P = M p_max / 10^(ibo/10), equal shares, M = fixed_m.
    BaselineResult ref_e(std::span<const UserLink> scenario, const BaselineSpec &spec, const SystemParams &params);

    /// Alternates the power root search and water-filling at M = fixed_m.
    BaselineResult deep_fixed_m(std::span<const UserLink> scenario, const BaselineSpec &spec,
                                const SystemParams &params, int max_iterations = 200,
                                double relative_stop = 1e-9);

    BaselineResult run_baseline(std::span<const UserLink> scenario, const BaselineSpec &spec,
                                const SystemParams &params);

    /// Cartesian (M, P) grid. P is log-spaced when p_log_points > 0, otherwise linear with p_step.
    struct GridSpec
    {
        int m_min = 3;
        int m_max = 200;
        int m_step = 1;
        double p_min = 1.0;
        double p_max = 2e4;
        double p_step = 0.0;
        int p_log_points = 512;

        void validate() const;
        std::vector<double> power_values() const;
        std::vector<int> antenna_values() const;
    };

    struct GridSearchResult
    {
        Allocation allocation;
        Evaluation evaluation;
        std::size_t points_visited = 0;
    };

    /// Best EE over the grid with fixed shares (equal shares when none are given).
    /// Ties go to the smaller M, then the smaller P. The result does not depend on
    /// `threads` (0 picks the hardware concurrency).
    GridSearchResult exhaustive_search(std::span<const UserLink> scenario, const GridSpec &grid,
                                       const SystemParams &params,
                                       std::optional<std::vector<double>> shares = std::nullopt,
                                       unsigned threads = 1);
}
