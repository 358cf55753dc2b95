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

#include "eemimo/errors.hpp"
#include "eemimo/optimizer.hpp"
#include "eemimo/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace eemimo
{
    namespace
    {
        constexpr const char *results_schema = "# schema: results v1";
        constexpr const char *cdf_schema = "# schema: cdf v1";
        constexpr const char *validate_schema = "# schema: validate v1";

        std::string num(double v, int digits = 12)
        {
            if (std::isnan(v))
                return "nan";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*g", digits, v);
            return buf;
        }

        std::string db(double v)
        {
            if (!std::isfinite(v))
                return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", v);
            return buf;
        }

        std::string join(const std::vector<double> &v, std::string (*f)(double, int), int digits = 12)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    out += ';';
                out += f(v[i], digits);
            }
            return out;
        }

        std::string join_db(const std::vector<double> &v)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    out += ';';
                out += db(v[i]);
            }
            return out;
        }

        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                    out += '"';
                out += c;
            }
            return out + "\"";
        }

        struct ScenarioCase
        {
            std::string id;
            Scenario links;
        };

        std::vector<double> db_grid(const ExperimentConfig &cfg)
        {
            std::vector<double> out;
            const auto n = static_cast<std::size_t>(
                std::floor((cfg.sweep_stop_db - cfg.sweep_start_db) / cfg.sweep_step_db + 1e-9));
            for (std::size_t i = 0; i <= n; ++i)
                out.push_back(cfg.sweep_start_db + static_cast<double>(i) * cfg.sweep_step_db);
            return out;
        }

        std::vector<ScenarioCase> build_scenarios(const ExperimentConfig &cfg)
        {
            std::vector<ScenarioCase> out;
            auto from_pl = [&](const std::vector<double> &pl)
            {
                out.push_back({join_db(pl), scenario_from_path_loss(pl, cfg.params, cfg.noise_figure_db)});
            };
            switch (cfg.experiment)
            {
            case ExperimentKind::Sweep2:
                for (double pl : db_grid(cfg))
                    from_pl(std::vector<double>(static_cast<std::size_t>(cfg.sweep_users), pl));
                break;
            case ExperimentKind::Grid2:
            {
                const auto grid = db_grid(cfg);
                for (double a : grid)
                    for (double b : grid)
                        from_pl({a, b});
                break;
            }
            case ExperimentKind::Drops:
                for (int d = 0; d < cfg.drops.n_drops; ++d)
                    out.push_back({"drop " + std::to_string(d), Scenario{}});
                break;
            case ExperimentKind::Single:
                from_pl(cfg.path_loss_db);
                break;
            case ExperimentKind::Validate:
                break;
            }
            return out;
        }

        ResultRow make_row(std::size_t index, const std::string &id, const std::string &algorithm)
        {
            ResultRow row;
            row.scenario_index = index;
            row.scenario = id;
            row.algorithm = algorithm;
            return row;
        }

        void fill(ResultRow &row, const Allocation &alloc, const Evaluation &ev)
        {
            row.power_w = alloc.total_power_w;
            row.ibo_db = linear_to_db(ev.psi);
            row.antennas = static_cast<int>(alloc.antennas);
            row.shares = alloc.shares;
            row.rates = ev.rates;
            row.sum_rate = ev.sum_rate;
            row.p_tot = ev.p_tot;
            row.ee = ev.ee;
        }

        void fail(ResultRow &row, const std::exception &e)
        {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.ok = false;
            row.converged = false;
            row.status = std::string("error: ") + e.what();
            row.power_w = row.ibo_db = row.sum_rate = row.p_tot = row.ee = nan;
        }

        std::vector<ResultRow> solve_case(std::size_t index, const ScenarioCase &sc, const ExperimentConfig &cfg,
                                          const std::vector<BaselineSpec> &baselines)
        {
            std::vector<ResultRow> rows;
            const Scenario links = cfg.experiment == ExperimentKind::Drops
                                       ? generate_drop(cfg.drops, cfg.params, index)
                                       : sc.links;

            ResultRow dd = make_row(index, sc.id, optimizer_label);
            try
            {
                AoSettings settings;
                settings.max_iterations = cfg.max_iterations;
                settings.check_unimodality = cfg.check_unimodality;
                const AoResult ao = alternating_optimize(links, cfg.params, settings);
                fill(dd, ao.allocation, ao.evaluation);
                dd.iterations = ao.iterations;
                dd.converged = ao.converged;
                dd.multimodal = ao.multimodal_detections;
                if (!ao.converged)
                    dd.status = "iteration cap reached";
            }
            catch (const std::exception &e)
            {
                fail(dd, e);
            }
            rows.push_back(std::move(dd));

            for (const BaselineSpec &spec : baselines)
            {
                ResultRow row = make_row(index, sc.id, spec.label());
                try
                {
                    const BaselineResult b = spec.kind == BaselineKind::RefE
                                                 ? ref_e(links, spec, cfg.params)
                                                 : deep_fixed_m(links, spec, cfg.params, cfg.max_iterations);
                    fill(row, b.allocation, b.evaluation);
                    row.iterations = b.iterations;
                    row.converged = b.converged;
                    if (!b.converged)
                        row.status = "iteration cap reached";
                }
                catch (const std::exception &e)
                {
                    fail(row, e);
                }
                rows.push_back(std::move(row));
            }
            return rows;
        }

        std::vector<std::string> algorithms(const ExperimentConfig &cfg)
        {
            std::vector<std::string> out{optimizer_label};
            for (const auto &b : cfg.resolved_baselines())
                out.push_back(b.label());
            return out;
        }

        void summarize_ratios(ExperimentResult &res)
        {
            const auto dd = res.rows_for(optimizer_label);
            for (const auto &spec : res.config.resolved_baselines())
            {
                const auto base = res.rows_for(spec.label());
                double lo = std::numeric_limits<double>::infinity();
                double hi = -lo;
                std::string at_lo, at_hi;
                for (std::size_t i = 0; i < dd.size() && i < base.size(); ++i)
                {
                    if (!dd[i]->ok || !base[i]->ok || !(base[i]->ee > 0.0))
                        continue;
                    const double r = dd[i]->ee / base[i]->ee;
                    if (r < lo)
                        lo = r, at_lo = dd[i]->scenario;
                    if (r > hi)
                        hi = r, at_hi = dd[i]->scenario;
                }
                res.summary.push_back("EE ratio " + std::string(optimizer_label) + "/" + spec.label() + " (M=" +
                                      std::to_string(spec.fixed_m) + "): min " + num(lo, 6) + " at [" + at_lo +
                                      "], max " + num(hi, 6) + " at [" + at_hi + "]");
            }
        }

        void summarize_drops(ExperimentResult &res)
        {
            for (const std::string &alg : algorithms(res.config))
            {
                Cdf ee{alg, {}}, ibo{alg, {}}, m{alg, {}};
                for (const ResultRow *r : res.rows_for(alg))
                {
                    if (!r->ok)
                        continue;
                    ee.values.push_back(r->ee);
                    ibo.values.push_back(r->ibo_db);
                    m.values.push_back(r->antennas);
                }
                for (Cdf *c : {&ee, &ibo, &m})
                    std::sort(c->values.begin(), c->values.end());
                res.summary.push_back("median " + alg + ": EE " + num(median(ee.values), 9) + " bit/J, IBO " +
                                      db(median(ibo.values)) + " dB, M " + num(median(m.values), 6));
                res.cdf_ee.push_back(std::move(ee));
                res.cdf_ibo.push_back(std::move(ibo));
                res.cdf_m.push_back(std::move(m));
            }

            const double dd_median = median(res.cdf_ee.front().values);
            const auto dd = res.rows_for(optimizer_label);
            for (std::size_t j = 1; j < res.cdf_ee.size(); ++j)
            {
                const auto base = res.rows_for(res.cdf_ee[j].algorithm);
                std::vector<double> ratios;
                for (std::size_t i = 0; i < dd.size(); ++i)
                    if (dd[i]->ok && base[i]->ok && base[i]->ee > 0.0)
                        ratios.push_back(dd[i]->ee / base[i]->ee);
                const double gain = dd_median / median(res.cdf_ee[j].values) - 1.0;
                res.summary.push_back("median EE gain over " + res.cdf_ee[j].algorithm + ": " +
                                      num(100.0 * gain, 6) + " % (ratio of medians), " +
                                      num(100.0 * (median(ratios) - 1.0), 6) + " % (median of per-drop ratios)");
            }
        }
    }

    std::vector<const ResultRow *> ExperimentResult::rows_for(const std::string &algorithm) const
    {
        std::vector<const ResultRow *> out;
        for (const auto &r : rows)
            if (r.algorithm == algorithm)
                out.push_back(&r);
        return out;
    }

    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&]
                              {
                                  for (std::size_t i = next++; i < n; i = next++)
                                  {
                                      try
                                      {
                                          fn(i);
                                      }
                                      catch (...)
                                      {
                                          std::lock_guard lock(error_mutex);
                                          if (!error)
                                              error = std::current_exception();
                                      }
                                  } });
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }

    double median(std::vector<double> values)
    {
        if (values.empty())
            return std::numeric_limits<double>::quiet_NaN();
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    }

    bool within_standard_errors(double estimate, double closed, double se, double scale)
    {
        // Sample moments carry rounding of order 1e-12 relative even when the spread is zero.
        return std::abs(estimate - closed) <= 3.0 * se + 1e-12 * scale;
    }

    ValidationRow validate_point(double psi, std::size_t n_samples, std::uint64_t seed, double input_power)
    {
        ValidationRow row;
        row.psi = psi;
        row.estimate = estimate_bussgang(McConfig{n_samples, psi, input_power, seed});
        const McEstimate &e = row.estimate;
        row.lambda_ok = within_standard_errors(e.lambda_hat, e.lambda_closed, e.lambda_se, 1.0);
        row.distortion_ok = within_standard_errors(e.distortion_hat, e.distortion_closed, e.distortion_se,
                                                   input_power);
        row.residual_ok = e.residual <= 4.0 / std::sqrt(static_cast<double>(n_samples));
        return row;
    }

    ExperimentResult run_experiment(const ExperimentConfig &cfg)
    {
        ExperimentResult res;
        res.config = cfg;

        if (cfg.experiment == ExperimentKind::Validate)
        {
            res.validation.resize(cfg.mc_psi.size());
            parallel_for(cfg.mc_psi.size(), cfg.threads, [&](std::size_t i)
                         { res.validation[i] = validate_point(cfg.mc_psi[i], cfg.mc_samples, cfg.mc_seed); });
            int passed = 0;
            for (const auto &v : res.validation)
            {
                passed += v.pass();
                res.summary.push_back((v.pass() ? "PASS" : "FAIL") + std::string(" psi=") + num(v.psi, 6) +
                                      " lambda " + num(v.estimate.lambda_hat, 9) + " vs " +
                                      num(v.estimate.lambda_closed, 9) + ", distortion " +
                                      num(v.estimate.distortion_hat, 9) + " vs " +
                                      num(v.estimate.distortion_closed, 9) + ", residual " +
                                      num(v.estimate.residual, 3));
            }
            res.summary.push_back(std::to_string(passed) + "/" + std::to_string(res.validation.size()) +
                                  " points within 3 standard errors");
            res.failures = static_cast<int>(res.validation.size()) - passed;
            return res;
        }

        const auto cases = build_scenarios(cfg);
        const auto baselines = cfg.resolved_baselines();
        std::vector<std::vector<ResultRow>> per_case(cases.size());
        parallel_for(cases.size(), cfg.threads, [&](std::size_t i)
                     { per_case[i] = solve_case(i, cases[i], cfg, baselines); });
        for (auto &rows : per_case)
            for (auto &r : rows)
            {
                res.failures += !r.ok;
                res.nonconverged += r.ok && !r.converged;
                res.multimodal += r.multimodal;
                res.rows.push_back(std::move(r));
            }

        res.summary.push_back("experiment " + to_string(cfg.experiment) + ", PA class " +
                              std::string(to_string(cfg.params.pa_class)) + ", " + std::to_string(cases.size()) +
                              " scenarios");
        if (cfg.experiment == ExperimentKind::Drops)
            summarize_drops(res);
        else
            summarize_ratios(res);
        res.summary.push_back("failed runs: " + std::to_string(res.failures) +
                              ", not converged: " + std::to_string(res.nonconverged) +
                              ", multi-root warnings: " + std::to_string(res.multimodal));
        return res;
    }

    std::string results_csv(const ExperimentResult &result)
    {
        std::ostringstream out;
        out << results_schema << '\n'
            << "scenario,path_loss,algorithm,power_w,ibo_db,antennas,shares,rates_bps,sum_rate_bps,p_tot_w,"
               "ee_bit_per_j,iterations,converged,status\n";
        for (const auto &r : result.rows)
        {
            out << r.scenario_index << ',' << csv_field(r.scenario) << ',' << r.algorithm << ','
                << num(r.power_w) << ',' << db(r.ibo_db) << ',' << r.antennas << ','
                << join(r.shares, num) << ',' << join(r.rates, num) << ',' << num(r.sum_rate) << ','
                << num(r.p_tot) << ',' << num(r.ee) << ',' << r.iterations << ','
                << (r.converged ? "true" : "false") << ',' << csv_field(r.status) << '\n';
        }
        return out.str();
    }

    std::string cdf_csv(const std::vector<Cdf> &cdf)
    {
        std::ostringstream out;
        out << cdf_schema << '\n'
            << "algorithm,rank,value,probability\n";
        for (const auto &c : cdf)
        {
            const double n = static_cast<double>(c.values.size());
            for (std::size_t i = 0; i < c.values.size(); ++i)
                out << c.algorithm << ',' << i + 1 << ',' << num(c.values[i]) << ','
                    << num(static_cast<double>(i + 1) / n) << '\n';
        }
        return out.str();
    }

    std::string validation_csv(const ExperimentResult &result)
    {
        std::ostringstream out;
        out << validate_schema << '\n'
            << "psi,lambda_closed,lambda_hat,lambda_se,distortion_closed,distortion_hat,distortion_se,residual,"
               "n_samples,pass\n";
        for (const auto &v : result.validation)
        {
            const McEstimate &e = v.estimate;
            out << num(v.psi) << ',' << num(e.lambda_closed) << ',' << num(e.lambda_hat) << ','
                << num(e.lambda_se) << ',' << num(e.distortion_closed) << ',' << num(e.distortion_hat) << ','
                << num(e.distortion_se) << ',' << num(e.residual) << ',' << e.n_samples << ','
                << (v.pass() ? "true" : "false") << '\n';
        }
        return out.str();
    }

    std::string summary_text(const ExperimentResult &result)
    {
        std::string out;
        for (const auto &line : result.summary)
            out += line + '\n';
        return out;
    }

    std::vector<std::filesystem::path> write_outputs(const ExperimentResult &result,
                                                     const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        std::vector<std::filesystem::path> written;
        auto put = [&](const char *name, const std::string &text)
        {
            const auto path = dir / name;
            std::ofstream f(path, std::ios::binary);
            f << text;
            if (!f)
                throw std::runtime_error("cannot write " + path.string());
            written.push_back(path);
        };
        if (result.config.experiment == ExperimentKind::Validate)
            put("validate.csv", validation_csv(result));
        else
            put("results.csv", results_csv(result));
        if (result.config.experiment == ExperimentKind::Drops)
        {
            put("cdf_ee.csv", cdf_csv(result.cdf_ee));
            put("cdf_ibo.csv", cdf_csv(result.cdf_ibo));
            put("cdf_m.csv", cdf_csv(result.cdf_m));
        }
        put("summary.txt", summary_text(result));
        return written;
    }
}
