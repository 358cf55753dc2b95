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

#include "eemimo/config.hpp"
#include "eemimo/mc_validator.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace eemimo
{
    inline constexpr const char *optimizer_label = "DEEP-DEAL";

    /// One (scenario, algorithm) outcome. Failed runs keep `ok = false` and the error text.
    struct ResultRow
    {
        std::size_t scenario_index = 0;
        std::string scenario; // path losses in dB or the drop id
        std::string algorithm;
        bool ok = true;
        std::string status = "ok";
        double power_w = 0.0;
        double ibo_db = 0.0;
        int antennas = 0;
        std::vector<double> shares;
        std::vector<double> rates;
        double sum_rate = 0.0;
        double p_tot = 0.0;
        double ee = 0.0;
        int iterations = 0;
        bool converged = true;
        int multimodal = 0;
    };

    struct ValidationRow
    {
        double psi = 0.0;
        McEstimate estimate;
        bool lambda_ok = false;
        bool distortion_ok = false;
        bool residual_ok = false;

        bool pass() const { return lambda_ok && distortion_ok && residual_ok; }
    };

    /// Sorted samples of one algorithm.
    struct Cdf
    {
        std::string algorithm;
        std::vector<double> values;
    };

    struct ExperimentResult
    {
        ExperimentConfig config;
        std::vector<ResultRow> rows;
        std::vector<ValidationRow> validation;
        std::vector<Cdf> cdf_ee, cdf_ibo, cdf_m; // drops only
        std::vector<std::string> summary;
        int failures = 0;
        int nonconverged = 0;
        int multimodal = 0;

        /// Rows of one algorithm in scenario order.
        std::vector<const ResultRow *> rows_for(const std::string &algorithm) const;
    };

    /// Runs fn(i) for i in [0, n) on up to `threads` workers (0: hardware concurrency).
    /// Callers write results by index, so the outcome does not depend on scheduling.
    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn);

    double median(std::vector<double> values);

    /// |x - closed| <= 3 SE, with an absolute floor for estimates whose SE rounds to zero.
    bool within_standard_errors(double estimate, double closed, double se, double scale);

    ValidationRow validate_point(double psi, std::size_t n_samples, std::uint64_t seed, double input_power = 1.0);

    /// Expects a validated config.
    ExperimentResult run_experiment(const ExperimentConfig &cfg);

    std::string results_csv(const ExperimentResult &result);
    std::string cdf_csv(const std::vector<Cdf> &cdf);
    std::string validation_csv(const ExperimentResult &result);
    std::string summary_text(const ExperimentResult &result);

    /// Writes results.csv, cdf_*.csv (drops), validate.csv (validate) and summary.txt.
    /// Returns the paths written.
    std::vector<std::filesystem::path> write_outputs(const ExperimentResult &result, const std::filesystem::path &dir);
}
