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

#include "eemimo/pa_model.hpp"

#include <span>
#include <vector>

namespace eemimo
{
    /// Hardware and waveform constants of the base station.
    struct SystemParams
    {
        int n_subcarriers = 1200;
        double subcarrier_spacing_hz = 15e3;
        double inband_fraction = 2.0 / 3.0; // eta
        double p_max_w = 160.0;             // saturation power per PA
        double p_const_w = 348.0;
        double p_sprf_w = 23.0; // per-antenna RF chain
        PaClass pa_class = PaClass::ClassB;
        double tol_p = 1e-6;
        double tol_m = 1e-6;
        double tol_ee = 1e-6;

        double bandwidth_hz() const noexcept { return n_subcarriers * subcarrier_spacing_hz; }

        /// Throws DomainError if any field violates its invariant.
        void validate() const;
    };

    /// Large-scale channel of one user.
    struct UserLink
    {
        double beta = 1.0;          // linear gain, 10^(-PL_dB/10)
        double noise_power_w = 0.0; // sigma^2 over all used subcarriers
    };

    using Scenario = std::vector<UserLink>;

    /// Decision variables. `antennas` is real during the relaxed search and integral
    /// once finalized.
    struct Allocation
    {
        double total_power_w = 0.0;
        std::vector<double> shares;
        double antennas = 0.0;
    };

    struct Evaluation
    {
        double psi = 0.0;
        double lambda = 0.0;
        double d_total = 0.0;
        std::vector<double> sndr;
        std::vector<double> rates; // bit/s
        double sum_rate = 0.0;
        double p_pa = 0.0;
        double p_tot = 0.0;
        double ee = 0.0; // bit/J
    };

    /// Quantities shared by every user at one (P, M): D is computed once per allocation.
    struct LinkState
    {
        double total_power = 0.0;
        double array_gain = 0.0; // M - K
        double lambda = 0.0;
        double d_total = 0.0;
    };

    LinkState link_state(double total_power, double antennas, std::size_t n_users, const SystemParams &params);

    /// SNDR of one user holding `share` of the total power.
    double sndr(const UserLink &link, double share, const LinkState &state);

    /// SNDR of every user of `scenario` under `alloc`. Throws DomainError if M <= K or
    /// the share vector has the wrong length.
    std::vector<double> sndr(std::span<const UserLink> scenario, const Allocation &alloc, const SystemParams &params);

    double rate(double sndr, const SystemParams &params);

    double total_power(double total_power, double antennas, const SystemParams &params);
    double total_power(const Allocation &alloc, const SystemParams &params);

    Evaluation evaluate(std::span<const UserLink> scenario, const Allocation &alloc, const SystemParams &params);

    /// EE only, without materializing per-user vectors. Used in inner search loops.
    double energy_efficiency(std::span<const UserLink> scenario, double total_power, std::span<const double> shares,
                             double antennas, const SystemParams &params);

    /// Throws DomainError unless shares are non-negative, sum to one within 1e-9 and
    /// match the scenario size, and M > K.
    void check_allocation(std::span<const UserLink> scenario, const Allocation &alloc);
}
