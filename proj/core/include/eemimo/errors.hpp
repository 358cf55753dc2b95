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

#include <stdexcept>
#include <string>

namespace eemimo
{
    /// Raised when an operation receives arguments outside its mathematical domain
    /// (non-positive power, M <= K, mismatched dimensions, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// The starting-point search of the bracketed bisection did not find a sign change
    /// within its iteration cap. Carries the last probes for diagnosis.
    class BracketFailure : public std::runtime_error
    {
    public:
        BracketFailure(const std::string &what, double lower_probe, double upper_probe)
            : std::runtime_error(what), lower_probe_(lower_probe), upper_probe_(upper_probe) {}

        double lower_probe() const noexcept { return lower_probe_; }
        double upper_probe() const noexcept { return upper_probe_; }

    private:
        double lower_probe_;
        double upper_probe_;
    };

    /// Invalid experiment configuration. `line` is 0 when the error is not tied to a line
    /// of a config file (e.g. a command-line override or a cross-field check).
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &what, std::size_t line = 0, std::string field = {})
            : std::runtime_error(format(what, line, field)), line_(line), field_(std::move(field)) {}

        std::size_t line() const noexcept { return line_; }
        const std::string &field() const noexcept { return field_; }

    private:
        static std::string format(const std::string &what, std::size_t line, const std::string &field)
        {
            std::string out;
            if (line > 0)
                out += "line " + std::to_string(line) + ": ";
            if (!field.empty())
                out += "'" + field + "': ";
            return out + what;
        }

        std::size_t line_;
        std::string field_;
    };
}
