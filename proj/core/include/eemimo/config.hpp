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

#include "eemimo/baselines.hpp"
#include "eemimo/link_model.hpp"
#include "eemimo/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Experiment configuration files are flat "key = value" text. '#' starts a comment,
// list values are comma separated and unknown or repeated keys are rejected.
// See configs/ for annotated examples.

namespace eemimo
{
    enum class ExperimentKind
    {
        Sweep2,   // homogeneous users, common path loss swept over a dB range
        Grid2,    // two users, every (PL_1, PL_2) pair of a dB grid
        Drops,    // random user drops in a circular cell
        Validate, // Monte-Carlo check of the PA statistics
        Single,   // one scenario from an explicit path-loss list
    };

    std::string to_string(ExperimentKind kind);
    ExperimentKind parse_experiment_kind(std::string_view text);

    struct ExperimentConfig
    {
        ExperimentKind experiment = ExperimentKind::Sweep2;
        SystemParams params;
        double carrier_ghz = 3.0;
        double noise_figure_db = 0.0;

        // sweep2 / grid2: path loss grid in dB
        double sweep_start_db = 60.0;
        double sweep_stop_db = 150.0;
        double sweep_step_db = 5.0;
        int sweep_users = 2;

        DropConfig drops;

        // Baselines run next to the optimizer. An entry with fixed_m == 0 takes baseline_m.
        int baseline_m = 32;
        std::vector<BaselineSpec> baselines;

        std::vector<double> path_loss_db; // single

        std::vector<double> mc_psi{0.01, 0.1, 1.0, 3.981, 10.0, 100.0};
        std::size_t mc_samples = 1'000'000;
        std::uint64_t mc_seed = 1;

        int max_iterations = 200;
        bool check_unimodality = true;
        unsigned threads = 0; // 0: hardware concurrency
        std::string output_dir;

        /// Baselines with fixed_m resolved.
        std::vector<BaselineSpec> resolved_baselines() const;

        /// Throws ConfigError on inconsistent settings.
        void validate() const;
    };

    /// Desk-scale defaults of each experiment family.
    ExperimentConfig default_config(ExperimentKind kind);

    /// Parses a config file. When `kind` is given it must agree with an `experiment`
    /// key, if present. Throws ConfigError with the offending line and key.
    ExperimentConfig parse_config(std::istream &in, std::optional<ExperimentKind> kind = std::nullopt);
    ExperimentConfig load_config(const std::filesystem::path &path,
                                 std::optional<ExperimentKind> kind = std::nullopt);
}
