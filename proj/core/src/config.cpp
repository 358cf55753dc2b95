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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace eemimo
{
    namespace
    {
        std::string lower(std::string_view s)
        {
            std::string out(s);
            std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c)
                           { return static_cast<char>(std::tolower(c)); });
            return out;
        }

        std::string_view trim(std::string_view s)
        {
            const auto ws = [](char c)
            { return c == ' ' || c == '\t' || c == '\r'; };
            while (!s.empty() && ws(s.front()))
                s.remove_prefix(1);
            while (!s.empty() && ws(s.back()))
                s.remove_suffix(1);
            return s;
        }

        std::vector<std::string_view> split_list(std::string_view s)
        {
            std::vector<std::string_view> out;
            while (true)
            {
                const auto pos = s.find(',');
                const auto item = trim(s.substr(0, pos));
                if (!item.empty())
                    out.push_back(item);
                if (pos == std::string_view::npos)
                    break;
                s.remove_prefix(pos + 1);
            }
            return out;
        }

        struct Entry
        {
            std::string value;
            std::size_t line;
        };

        struct Reader
        {
            std::string key;
            std::size_t line;

            [[noreturn]] void fail(const std::string &msg) const { throw ConfigError(msg, line, key); }

            template <class T>
            T number(std::string_view s) const
            {
                T v{};
                const auto *end = s.data() + s.size();
                const auto [ptr, ec] = std::from_chars(s.data(), end, v);
                if (ec != std::errc{} || ptr != end)
                    fail("expected a number, got '" + std::string(s) + "'");
                if constexpr (std::is_floating_point_v<T>)
                    if (!std::isfinite(v))
                        fail("value must be finite");
                return v;
            }

            bool boolean(std::string_view s) const
            {
                const std::string v = lower(s);
                if (v == "true" || v == "on" || v == "yes" || v == "1")
                    return true;
                if (v == "false" || v == "off" || v == "no" || v == "0")
                    return false;
                fail("expected true or false, got '" + std::string(s) + "'");
            }

            std::vector<double> numbers(std::string_view s) const
            {
                std::vector<double> out;
                for (auto item : split_list(s))
                    out.push_back(number<double>(item));
                if (out.empty())
                    fail("list is empty");
                return out;
            }

            // "ref_e", "deep:32" or "ref_e:32:6"
            std::vector<BaselineSpec> baselines(std::string_view s) const
            {
                std::vector<BaselineSpec> out;
                for (auto item : split_list(s))
                {
                    BaselineSpec spec;
                    spec.fixed_m = 0;
                    const auto c1 = item.find(':');
                    try
                    {
                        spec.kind = parse_baseline_kind(trim(item.substr(0, c1)));
                    }
                    catch (const DomainError &e)
                    {
                        fail(e.what());
                    }
                    if (c1 != std::string_view::npos)
                    {
                        auto rest = item.substr(c1 + 1);
                        const auto c2 = rest.find(':');
                        spec.fixed_m = number<int>(trim(rest.substr(0, c2)));
                        if (c2 != std::string_view::npos)
                            spec.ref_ibo_db = number<double>(trim(rest.substr(c2 + 1)));
                    }
                    out.push_back(spec);
                }
                return out;
            }
        };

        using Setter = std::function<void(ExperimentConfig &, const Reader &, std::string_view)>;

        const std::map<std::string, Setter, std::less<>> &setters()
        {
            static const std::map<std::string, Setter, std::less<>> table = {
                {"experiment", [](ExperimentConfig &, const Reader &, std::string_view) {}},
                {"pa_class", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 {
                     try
                     {
                         c.params.pa_class = parse_pa_class(v);
                     }
                     catch (const DomainError &e)
                     {
                         r.fail(e.what());
                     }
                 }},
                {"n_subcarriers", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.n_subcarriers = r.number<int>(v); }},
                {"subcarrier_spacing_hz", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.subcarrier_spacing_hz = r.number<double>(v); }},
                {"inband_fraction", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.inband_fraction = r.number<double>(v); }},
                {"p_max_w", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.p_max_w = r.number<double>(v); }},
                {"p_const_w", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.p_const_w = r.number<double>(v); }},
                {"p_sprf_w", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.p_sprf_w = r.number<double>(v); }},
                {"tol_p", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.tol_p = r.number<double>(v); }},
                {"tol_m", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.tol_m = r.number<double>(v); }},
                {"tol_ee", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.params.tol_ee = r.number<double>(v); }},
                {"carrier_ghz", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.carrier_ghz = c.drops.carrier_ghz = r.number<double>(v); }},
                {"noise_figure_db", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.noise_figure_db = c.drops.noise_figure_db = r.number<double>(v); }},
                {"sweep_start_db", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.sweep_start_db = r.number<double>(v); }},
                {"sweep_stop_db", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.sweep_stop_db = r.number<double>(v); }},
                {"sweep_step_db", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.sweep_step_db = r.number<double>(v); }},
                {"sweep_users", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.sweep_users = r.number<int>(v); }},
                {"k_users", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.drops.k_users = r.number<int>(v); }},
                {"cell_radius_m", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.drops.cell_radius_m = r.number<double>(v); }},
                {"min_distance_m", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.drops.min_distance_m = r.number<double>(v); }},
                {"n_drops", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.drops.n_drops = r.number<int>(v); }},
                {"seed", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.drops.seed = r.number<std::uint64_t>(v); }},
                {"baseline_m", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.baseline_m = r.number<int>(v); }},
                {"baselines", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.baselines = r.baselines(v); }},
                {"path_loss_db", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.path_loss_db = r.numbers(v); }},
                {"mc_psi", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.mc_psi = r.numbers(v); }},
                {"mc_samples", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.mc_samples = r.number<std::size_t>(v); }},
                {"mc_seed", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.mc_seed = r.number<std::uint64_t>(v); }},
                {"max_iterations", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.max_iterations = r.number<int>(v); }},
                {"check_unimodality", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.check_unimodality = r.boolean(v); }},
                {"threads", [](ExperimentConfig &c, const Reader &r, std::string_view v)
                 { c.threads = r.number<unsigned>(v); }},
                {"output_dir", [](ExperimentConfig &c, const Reader &, std::string_view v)
                 { c.output_dir = std::string(v); }},
            };
            return table;
        }
    }

    std::string to_string(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::Sweep2:
            return "sweep2";
        case ExperimentKind::Grid2:
            return "grid2";
        case ExperimentKind::Drops:
            return "drops";
        case ExperimentKind::Validate:
            return "validate";
        case ExperimentKind::Single:
            return "single";
        }
        return "unknown";
    }

    ExperimentKind parse_experiment_kind(std::string_view text)
    {
        const std::string s = lower(text);
        if (s == "sweep2" || s == "sweep2_homogeneous")
            return ExperimentKind::Sweep2;
        if (s == "grid2" || s == "grid2_heterogeneous")
            return ExperimentKind::Grid2;
        if (s == "drops")
            return ExperimentKind::Drops;
        if (s == "validate")
            return ExperimentKind::Validate;
        if (s == "single")
            return ExperimentKind::Single;
        throw ConfigError("unknown experiment '" + std::string(text) + "'", 0, "experiment");
    }

    std::vector<BaselineSpec> ExperimentConfig::resolved_baselines() const
    {
        std::vector<BaselineSpec> out = baselines;
        for (auto &b : out)
            if (b.fixed_m == 0)
                b.fixed_m = baseline_m;
        return out;
    }

    void ExperimentConfig::validate() const
    {
        try
        {
            params.validate();
        }
        catch (const DomainError &e)
        {
            throw ConfigError(e.what());
        }
        if (!(carrier_ghz > 0.0))
            throw ConfigError("must be positive", 0, "carrier_ghz");
        if (max_iterations < 1)
            throw ConfigError("must be at least 1", 0, "max_iterations");

        const int users = experiment == ExperimentKind::Drops    ? drops.k_users
                          : experiment == ExperimentKind::Single ? static_cast<int>(path_loss_db.size())
                          : experiment == ExperimentKind::Grid2  ? 2
                                                                 : sweep_users;
        switch (experiment)
        {
        case ExperimentKind::Sweep2:
        case ExperimentKind::Grid2:
            if (!(sweep_step_db > 0.0))
                throw ConfigError("must be positive", 0, "sweep_step_db");
            if (!(sweep_stop_db >= sweep_start_db))
                throw ConfigError("sweep grid is empty", 0, "sweep_stop_db");
            if (sweep_users < 1)
                throw ConfigError("must be at least 1", 0, "sweep_users");
            break;
        case ExperimentKind::Drops:
            try
            {
                drops.validate();
            }
            catch (const DomainError &e)
            {
                throw ConfigError(e.what());
            }
            break;
        case ExperimentKind::Single:
            if (path_loss_db.empty())
                throw ConfigError("needs at least one user", 0, "path_loss_db");
            break;
        case ExperimentKind::Validate:
            if (mc_psi.empty())
                throw ConfigError("list is empty", 0, "mc_psi");
            for (double psi : mc_psi)
                if (!(psi > 0.0))
                    throw ConfigError("psi values must be positive", 0, "mc_psi");
            if (mc_samples < 10'000)
                throw ConfigError("must be at least 10000", 0, "mc_samples");
            return;
        }

        for (const auto &b : resolved_baselines())
        {
            if (b.fixed_m <= 0)
                throw ConfigError("baseline antenna count is not set; pass --baseline-m or set baseline_m", 0,
                                  "baseline_m");
            if (b.fixed_m <= users)
                throw ConfigError("baseline antenna count must exceed the number of users", 0, "baseline_m");
        }
    }

    ExperimentConfig default_config(ExperimentKind kind)
    {
        ExperimentConfig cfg;
        cfg.experiment = kind;
        cfg.baselines = {BaselineSpec{BaselineKind::RefE, 0, 6.0}, BaselineSpec{BaselineKind::DeepFixedM, 0, 6.0}};
        switch (kind)
        {
        case ExperimentKind::Sweep2:
            break;
        case ExperimentKind::Grid2:
            cfg.sweep_step_db = 5.0;
            break;
        case ExperimentKind::Drops:
            // Not stated for the random-drop study; must be given explicitly.
            cfg.baseline_m = 0;
            break;
        case ExperimentKind::Single:
            cfg.path_loss_db = {100.0, 100.0};
            break;
        case ExperimentKind::Validate:
            cfg.baselines.clear();
            break;
        }
        return cfg;
    }

    ExperimentConfig parse_config(std::istream &in, std::optional<ExperimentKind> kind)
    {
        std::map<std::string, Entry, std::less<>> entries;
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            std::string_view line(raw);
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("expected 'key = value'", line_no);
            const std::string key = lower(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ConfigError("missing key", line_no);
            if (!setters().contains(key))
                throw ConfigError("unknown key", line_no, key);
            if (value.empty())
                throw ConfigError("missing value", line_no, key);
            if (const auto it = entries.find(key); it != entries.end())
                throw ConfigError("repeated key (first set on line " + std::to_string(it->second.line) + ")",
                                  line_no, key);
            entries.emplace(key, Entry{value, line_no});
        }

        ExperimentKind resolved = kind.value_or(ExperimentKind::Sweep2);
        if (const auto it = entries.find("experiment"); it != entries.end())
        {
            ExperimentKind in_file;
            try
            {
                in_file = parse_experiment_kind(it->second.value);
            }
            catch (const ConfigError &)
            {
                throw ConfigError("unknown experiment '" + it->second.value + "'", it->second.line, "experiment");
            }
            if (kind && *kind != in_file)
                throw ConfigError("file is for '" + to_string(in_file) + "', not '" + to_string(*kind) + "'",
                                  it->second.line, "experiment");
            resolved = in_file;
        }

        ExperimentConfig cfg = default_config(resolved);
        for (const auto &[key, entry] : entries)
            setters().at(key)(cfg, Reader{key, entry.line}, entry.value);
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path, std::optional<ExperimentKind> kind)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path.string() + "'");
        return parse_config(in, kind);
    }
}
