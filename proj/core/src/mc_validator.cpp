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

#include "eemimo/mc_validator.hpp"

#include "eemimo/errors.hpp"
#include "eemimo/pa_model.hpp"
#include "eemimo/random.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace eemimo
{
    void McConfig::validate() const
    {
        if (n_samples < 10'000)
            throw DomainError("Monte-Carlo run needs at least 1e4 samples");
        if (!(psi > 0.0) || !std::isfinite(psi))
            throw DomainError("psi must be positive and finite");
        if (!(input_power > 0.0) || !std::isfinite(input_power))
            throw DomainError("input power must be positive and finite");
    }

    std::complex<double> soft_limit(std::complex<double> y, double p_sat)
    {
        const double mag2 = std::norm(y);
        if (mag2 <= p_sat)
            return y;
        return y * std::sqrt(p_sat / mag2);
    }

    namespace
    {
        constexpr std::size_t batch_size = 1 << 14;

        template <std::size_t N>
        using Sums = std::array<double, N>;

        template <std::size_t N>
        Sums<N> pairwise(std::vector<Sums<N>> parts)
        {
            if (parts.empty())
                return {};
            while (parts.size() > 1)
            {
                std::vector<Sums<N>> next((parts.size() + 1) / 2);
                for (std::size_t i = 0; i < next.size(); ++i)
                {
                    next[i] = parts[2 * i];
                    if (2 * i + 1 < parts.size())
                        for (std::size_t j = 0; j < N; ++j)
                            next[i][j] += parts[2 * i + 1][j];
                }
                parts = std::move(next);
            }
            return parts.front();
        }

        // Calls fn(y, yhat) for every sample of batch b; batch b always sees the same stream.
        template <class Fn>
        void for_batch(const McConfig &cfg, std::size_t b, Fn &&fn)
        {
            auto engine = detail::make_engine(cfg.seed, b);
            const double p_sat = cfg.psi * cfg.input_power;
            const std::size_t lo = b * batch_size;
            const std::size_t hi = std::min(cfg.n_samples, lo + batch_size);
            for (std::size_t i = lo; i < hi; ++i)
            {
                const double u1 = detail::uniform_open(engine);
                const double u2 = detail::uniform_open(engine);
                const double r = std::sqrt(-cfg.input_power * std::log(u1));
                const std::complex<double> y = std::polar(r, 2.0 * std::numbers::pi * u2);
                fn(y, soft_limit(y, p_sat));
            }
        }
    }

    McEstimate estimate_bussgang(const McConfig &cfg)
    {
        cfg.validate();
        const std::size_t n_batches = (cfg.n_samples + batch_size - 1) / batch_size;
        const double n = static_cast<double>(cfg.n_samples);

        // Pass 1: first moments a = E|yhat|^2, b = E[yhat y*], c = E|y|^2.
        std::vector<Sums<3>> first(n_batches);
        for (std::size_t bi = 0; bi < n_batches; ++bi)
        {
            Sums<3> s{};
            for_batch(cfg, bi, [&](std::complex<double> y, std::complex<double> yh)
                      {
                          s[0] += std::norm(yh);
                          s[1] += (yh * std::conj(y)).real();
                          s[2] += std::norm(y); });
            first[bi] = s;
        }
        const Sums<3> m1 = pairwise(std::move(first));
        const double a = m1[0] / n;
        const double b = m1[1] / n;
        const double c = m1[2] / n;

        const double ratio = b / c;
        const double gain = ratio; // sqrt(lambda_hat)

        // Pass 2: centered second moments and the distortion/input correlation.
        std::vector<Sums<8>> second(n_batches);
        for (std::size_t bi = 0; bi < n_batches; ++bi)
        {
            Sums<8> s{};
            for_batch(cfg, bi, [&](std::complex<double> y, std::complex<double> yh)
                      {
                          const double x0 = std::norm(yh) - a;
                          const double x1 = (yh * std::conj(y)).real() - b;
                          const double x2 = std::norm(y) - c;
                          s[0] += x0 * x0;
                          s[1] += x0 * x1;
                          s[2] += x0 * x2;
                          s[3] += x1 * x1;
                          s[4] += x1 * x2;
                          s[5] += x2 * x2;
                          const std::complex<double> d = yh - gain * y;
                          const std::complex<double> dy = d * std::conj(y);
                          s[6] += dy.real();
                          s[7] += dy.imag(); });
            second[bi] = s;
        }
        const Sums<8> m2 = pairwise(std::move(second));
        const double s00 = m2[0] / (n - 1), s01 = m2[1] / (n - 1), s02 = m2[2] / (n - 1);
        const double s11 = m2[3] / (n - 1), s12 = m2[4] / (n - 1), s22 = m2[5] / (n - 1);
        auto quad = [&](double g0, double g1, double g2)
        {
            const double v = g0 * g0 * s00 + g1 * g1 * s11 + g2 * g2 * s22 +
                             2.0 * (g0 * g1 * s01 + g0 * g2 * s02 + g1 * g2 * s12);
            return std::sqrt(std::max(0.0, v) / n);
        };

        McEstimate est;
        est.n_samples = cfg.n_samples;
        est.lambda_hat = ratio * ratio;
        est.lambda_se = quad(0.0, 2.0 * b / (c * c), -2.0 * b * b / (c * c * c));
        est.distortion_hat = std::max(0.0, a - b * b / c);
        est.distortion_se = quad(1.0, -2.0 * b / c, b * b / (c * c));
        est.residual = std::hypot(m2[6] / n, m2[7] / n) / c;
        est.lambda_closed = lambda_of_psi(cfg.psi);
        est.distortion_closed = distortion_fraction(cfg.psi) * cfg.input_power;
        return est;
    }
}
