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

#include <complex>
#include <cstddef>
#include <cstdint>

// Monte-Carlo check of the soft-limiter Bussgang statistics: complex Gaussian
// samples are clipped and the gain and distortion power are estimated from
// sample moments.

namespace eemimo
{
    struct McConfig
    {
        std::size_t n_samples = 1'000'000;
        double psi = 1.0;         // p_sat / input_power
        double input_power = 1.0; // E|y|^2 per PA, watts
        std::uint64_t seed = 1;

        /// Throws DomainError unless n_samples >= 1e4, psi > 0 and input_power > 0.
        void validate() const;
    };

    /// Identity below saturation, magnitude clamped to sqrt(p_sat) above it.
    std::complex<double> soft_limit(std::complex<double> y, double p_sat);

    struct McEstimate
    {
        double lambda_hat = 0.0;
        double lambda_se = 0.0;
        double distortion_hat = 0.0; // E|yhat - sqrt(lambda_hat) y|^2, watts
        double distortion_se = 0.0;
        double residual = 0.0; // |E[d y*]| / E|y|^2
        double lambda_closed = 0.0;
        double distortion_closed = 0.0; // (1 - e^-psi - lambda) * input_power
        std::size_t n_samples = 0;
    };

    /// Deterministic in (seed, n_samples, psi, input_power). Standard errors use the
    /// delta method on the sample covariance of (|yhat|^2, yhat y*, |y|^2).
    McEstimate estimate_bussgang(const McConfig &cfg);
}
