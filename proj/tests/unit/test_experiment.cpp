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

#include "eemimo/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace eemimo;

namespace
{
    std::vector<std::string> split(const std::string &s, char sep)
    {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(s);
        while (std::getline(in, item, sep))
            out.push_back(item);
        return out;
    }

    ExperimentConfig small_drops(unsigned threads)
    {
        ExperimentConfig cfg = default_config(ExperimentKind::Drops);
        cfg.drops.n_drops = 6;
        cfg.drops.k_users = 10;
        cfg.baseline_m = 40;
        cfg.threads = threads;
        return cfg;
    }
}

TEST(Experiment, CsvIsIndependentOfThreadCount)
{
    const auto one = run_experiment(small_drops(1));
    const auto four = run_experiment(small_drops(4));
    const auto again = run_experiment(small_drops(4));
    EXPECT_EQ(results_csv(one), results_csv(four));
    EXPECT_EQ(results_csv(four), results_csv(again));
    EXPECT_EQ(cdf_csv(one.cdf_ee), cdf_csv(four.cdf_ee));
    EXPECT_EQ(summary_text(one), summary_text(four));
}

TEST(Experiment, CsvEnergyEfficiencyIsConsistent)
{
    ExperimentConfig cfg = default_config(ExperimentKind::Sweep2);
    cfg.sweep_step_db = 15.0;
    const auto result = run_experiment(cfg);
    const auto lines = split(results_csv(result), '\n');
    ASSERT_GE(lines.size(), 3u);
    EXPECT_EQ(lines[0], "# schema: results v1");
    const auto header = split(lines[1], ',');
    ASSERT_EQ(header.size(), 14u);
    std::size_t rows = 0;
    for (std::size_t i = 2; i < lines.size(); ++i)
    {
        const auto f = split(lines[i], ',');
        ASSERT_EQ(f.size(), 14u) << lines[i];
        double sum = 0.0;
        for (const auto &r : split(f[7], ';'))
            sum += std::stod(r);
        const double ee = std::stod(f[10]);
        const double p_tot = std::stod(f[9]);
        EXPECT_NEAR(sum / p_tot, ee, 1e-9 * ee) << lines[i];
        double shares = 0.0;
        for (const auto &w : split(f[6], ';'))
            shares += std::stod(w);
        EXPECT_NEAR(shares, 1.0, 1e-9);
        ++rows;
    }
    // 7 path losses by three algorithms.
    EXPECT_EQ(rows, 21u);
    EXPECT_EQ(result.failures, 0);
}

TEST(Experiment, DropCdfsAreSortedAndComplete)
{
    const auto result = run_experiment(small_drops(2));
    for (const auto *set : {&result.cdf_ee, &result.cdf_ibo, &result.cdf_m})
    {
        ASSERT_EQ(set->size(), 3u);
        for (const auto &c : *set)
        {
            EXPECT_EQ(c.values.size(), 6u) << c.algorithm;
            EXPECT_TRUE(std::is_sorted(c.values.begin(), c.values.end()));
        }
    }
    const auto lines = split(cdf_csv(result.cdf_ee), '\n');
    EXPECT_EQ(lines[0], "# schema: cdf v1");
    EXPECT_EQ(lines.size(), 2u + 18u);
    EXPECT_NE(lines.back().find(",1"), std::string::npos);
}

TEST(Experiment, FailedRunIsRecordedNotThrown)
{
    ExperimentConfig cfg = default_config(ExperimentKind::Single);
    cfg.path_loss_db = {80.0, 80.0, 80.0, 80.0};
    // Fixed-M baseline with fewer antennas than users cannot run.
    cfg.baselines = {BaselineSpec{BaselineKind::DeepFixedM, 3, 6.0}};
    const auto result = run_experiment(cfg);
    ASSERT_EQ(result.rows.size(), 2u);
    EXPECT_TRUE(result.rows[0].ok);
    EXPECT_FALSE(result.rows[1].ok);
    EXPECT_NE(result.rows[1].status, "ok");
    EXPECT_EQ(result.failures, 1);
    EXPECT_NE(results_csv(result).find(result.rows[1].status.substr(0, 10)), std::string::npos);
}

TEST(Experiment, ValidationRunReportsEveryBackoff)
{
    ExperimentConfig cfg = default_config(ExperimentKind::Validate);
    cfg.mc_psi = {0.1, 1.0, 10.0};
    cfg.mc_samples = 50'000;
    const auto result = run_experiment(cfg);
    ASSERT_EQ(result.validation.size(), 3u);
    for (const auto &v : result.validation)
        EXPECT_TRUE(v.pass()) << v.psi;
    const auto lines = split(validation_csv(result), '\n');
    EXPECT_EQ(lines[0], "# schema: validate v1");
    EXPECT_EQ(lines.size(), 5u);
}

TEST(Experiment, MedianAndParallelFor)
{
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}
