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

#include "eemimo/config.hpp"
#include "eemimo/errors.hpp"
#include "eemimo/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace
{
    struct Options
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::string pa_class;
        std::optional<int> baseline_m;
        std::optional<unsigned> threads;
        std::vector<double> path_loss_db;
        bool strict = false;
    };

    void add_common(CLI::App *sub, Options &opt)
    {
        sub->add_option("--config", opt.config, "Experiment config file (key = value)")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory");
        sub->add_option("--seed", opt.seed, "RNG seed for drops and Monte-Carlo runs");
        sub->add_option("--pa-class", opt.pa_class, "PA consumption model")
            ->check(CLI::IsMember({"classb", "perfect"}, CLI::ignore_case));
        sub->add_option("--baseline-m", opt.baseline_m, "Antenna count of the fixed-M baselines");
        sub->add_option("--threads", opt.threads, "Worker threads (0: all cores)");
        sub->add_flag("--strict", opt.strict, "Exit with status 2 if any optimization fails to converge");
    }

    eemimo::ExperimentConfig resolve(eemimo::ExperimentKind kind, const Options &opt)
    {
        eemimo::ExperimentConfig cfg = opt.config.empty() ? eemimo::default_config(kind)
                                                          : eemimo::load_config(opt.config, kind);
        if (opt.seed)
            cfg.drops.seed = cfg.mc_seed = *opt.seed;
        if (!opt.pa_class.empty())
            cfg.params.pa_class = eemimo::parse_pa_class(opt.pa_class);
        if (opt.baseline_m)
            cfg.baseline_m = *opt.baseline_m;
        if (opt.threads)
            cfg.threads = *opt.threads;
        if (!opt.path_loss_db.empty())
            cfg.path_loss_db = opt.path_loss_db;
        if (!opt.out.empty())
            cfg.output_dir = opt.out;
        if (cfg.output_dir.empty())
            cfg.output_dir = "out/" + eemimo::to_string(kind);
        cfg.validate();
        return cfg;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Distortion-aware energy-efficiency optimization for massive MIMO OFDM downlink"};
    app.require_subcommand(1);

    Options opt;
    const std::pair<const char *, const char *> commands[] = {
        {"sweep2", "Homogeneous users over a path-loss sweep"},
        {"grid2", "Two users over a grid of path-loss pairs"},
        {"drops", "Random user drops in a circular cell"},
        {"validate", "Monte-Carlo check of the PA statistics"},
        {"single", "One scenario from explicit path losses"},
    };
    for (const auto &[name, help] : commands)
    {
        CLI::App *sub = app.add_subcommand(name, help);
        add_common(sub, opt);
        if (std::string_view(name) == "single")
            sub->add_option("--path-loss-db", opt.path_loss_db, "Per-user path loss in dB")->delimiter(',');
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const auto kind = eemimo::parse_experiment_kind(app.get_subcommands().front()->get_name());
    eemimo::ExperimentConfig cfg;
    try
    {
        cfg = resolve(kind, opt);
    }
    catch (const eemimo::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }
    catch (const eemimo::DomainError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    const eemimo::ExperimentResult result = eemimo::run_experiment(cfg);
    for (const auto &path : eemimo::write_outputs(result, cfg.output_dir))
        std::cout << "wrote " << path.string() << '\n';
    std::cout << eemimo::summary_text(result);

    if (opt.strict && (result.failures > 0 || result.nonconverged > 0))
    {
        std::cerr << "strict mode: " << result.failures << " failed and " << result.nonconverged
                  << " non-converged runs\n";
        return 2;
    }
    return 0;
}
