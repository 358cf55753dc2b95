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

#include <string_view>

// Soft-limiter power amplifier statistics for a complex-Gaussian (OFDM) input.
//
// All functions take the total PA input power P [W] over M front-ends, each with
// saturation power p_max [W]. The input back-off is Psi = p_max * M / P (linear).
// Quantities are in watts and are evaluated in double precision; the closed forms
// are rearranged so that no cancellation occurs at very small or very large Psi,
// and every function stays finite once exp(-Psi) and erfc(sqrt(Psi)) underflow.

namespace eemimo
{
    enum class PaClass
    {
        ClassB,
        Perfect
    };

    std::string_view to_string(PaClass cls) noexcept;

    /// Parses "classb" / "perfect" (case-insensitive). Throws DomainError otherwise.
    PaClass parse_pa_class(std::string_view text);

    /// Operating point of the amplifier bank.
    struct PaPoint
    {
        double psi = 0.0;     // linear IBO
        double lambda = 0.0;  // Bussgang power gain of the wanted signal
        double d_total = 0.0; // total in-band distortion power D [W]
        double p_pa = 0.0;    // power consumed by all M amplifiers [W]
    };

    /// Partial derivatives of (lambda, D, P_PA) with respect to one variable.
    struct PaSensitivity
    {
        double dlambda = 0.0;
        double dd = 0.0;
        double dppa = 0.0;
    };

    // ---------- Closed forms ----------

    double ibo(double total_power, double antennas, double p_max);

    double lambda_of_psi(double psi);

    /// 1 - exp(-Psi) - lambda(Psi): the fraction of the input power turned into
    /// (full-band) clipping noise. Non-negative for every Psi > 0.
    double distortion_fraction(double psi);

    /// D = eta * (1 - exp(-Psi) - lambda) * P.
    double distortion_total(double total_power, double psi, double eta);

    double pa_power(double total_power, double antennas, double p_max, PaClass cls);

    PaPoint pa_point(double total_power, double antennas, double p_max, double eta, PaClass cls);

    // ---------- Derivatives with respect to the total power P ----------

    double dlambda_dP(double total_power, double antennas, double p_max);
    double dD_dP(double total_power, double antennas, double p_max, double eta);
    double dPpa_dP(double total_power, double antennas, double p_max, PaClass cls);

    /// d(lambda * P)/dP = sqrt(lambda) * (1 - exp(-Psi) * (1 + Psi)).
    /// Equal to lambda + P * dlambda/dP but free of the cancellation that form suffers
    /// at small Psi, where both terms approach pi*Psi/4.
    double dlambdaP_dP(double total_power, double antennas, double p_max);

    PaSensitivity sensitivity_P(double total_power, double antennas, double p_max, double eta, PaClass cls);

    // ---------- Derivatives with respect to the (relaxed) antenna count M ----------

    double dlambda_dM(double total_power, double antennas, double p_max);
    double dD_dM(double total_power, double antennas, double p_max, double eta);
    double dPpa_dM(double total_power, double antennas, double p_max, PaClass cls);

    PaSensitivity sensitivity_M(double total_power, double antennas, double p_max, double eta, PaClass cls);

    namespace detail
    {
        /// Regularized lower incomplete gamma P(a, x) for a in {3/2, 2}; the two
        /// shapes that appear in dP_PA/dP. Series below x = 1, closed form above.
        double lower_gamma_p_3_2(double x);
        double lower_gamma_p_2(double x);
    }
}
