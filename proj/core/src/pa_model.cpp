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

#include "eemimo/pa_model.hpp"

#include "eemimo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace eemimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

        void require_positive(double value, const char *what)
        {
            if (!(value > 0.0))
                throw DomainError(std::string(what) + " must be positive and finite");
        }

        void check_inputs(double total_power, double antennas, double p_max)
        {
            require_positive(total_power, "total power P");
            require_positive(antennas, "antenna count M");
            require_positive(p_max, "saturation power p_max");
        }

        void check_eta(double eta)
        {
            if (!(eta > 0.0 && eta <= 1.0))
                throw DomainError("in-band fraction eta must lie in (0, 1]");
        }

        // Building blocks shared by every closed form. With
        //   g = sqrt(lambda) = (1 - e^-Psi) + h,   h = 0.5 sqrt(pi Psi) erfc(sqrt Psi)
        // all derivatives reduce to non-negative combinations of these terms.
        struct PsiTerms
        {
            double psi;
            double e;      // exp(-Psi)
            double psi_e;  // Psi * exp(-Psi), exactly 0 once exp underflows
            double a;      // 1 - exp(-Psi)
            double h;      // 0.5 sqrt(pi Psi) erfc(sqrt Psi)
            double g;      // sqrt(lambda)
            double u;      // 1 - sqrt(lambda) = exp(-Psi) - h
            double lambda; // g^2
            double q;      // 1 - exp(-Psi) - lambda
            double s2;     // 1 - exp(-Psi)(1 + Psi)
        };

        PsiTerms make_terms(double psi)
        {
            PsiTerms t{};
            t.psi = psi;
            t.e = std::exp(-psi);
            t.psi_e = t.e == 0.0 ? 0.0 : psi * t.e;
            t.a = -std::expm1(-psi);
            const double ec = std::erfc(std::sqrt(psi));
            t.h = ec == 0.0 ? 0.0 : 0.5 * std::sqrt(pi * psi) * ec;
            t.g = t.a + t.h;
            t.u = t.e - t.h;
            t.lambda = t.g * t.g;
            // a - g^2 cancels once g -> 1; the expansion 2u - u^2 - e^-Psi does not.
            t.q = psi <= 1.0 ? t.a - t.lambda : (t.e - 2.0 * t.h) - t.u * t.u;
            t.q = std::max(t.q, 0.0);
            t.s2 = detail::lower_gamma_p_2(psi);
            return t;
        }

        PsiTerms terms_at(double total_power, double antennas, double p_max)
        {
            return make_terms(ibo(total_power, antennas, p_max));
        }

        // P(a, x) = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
        double lower_gamma_series(double a, double x, double gamma_a_plus_1)
        {
            double term = 1.0;
            double sum = 1.0;
            for (int n = 1; n < 200; ++n)
            {
                term *= x / (a + n);
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return std::pow(x, a) * std::exp(-x) * sum / gamma_a_plus_1;
        }

        double ppa_dP(const PsiTerms &t, PaClass cls)
        {
            if (cls == PaClass::Perfect)
                return t.s2;
            return std::sqrt(t.psi / pi) * detail::lower_gamma_p_3_2(t.psi);
        }

        double ppa_dM(const PsiTerms &t, double p_max, PaClass cls)
        {
            if (cls == PaClass::Perfect)
                return p_max * t.e;
            const double x = std::sqrt(t.psi);
            return 2.0 * p_max * inv_sqrt_pi * (std::erf(x) / (2.0 * x) + t.e * inv_sqrt_pi);
        }
    }

    std::string_view to_string(PaClass cls) noexcept
    {
        return cls == PaClass::ClassB ? "classb" : "perfect";
    }

    PaClass parse_pa_class(std::string_view text)
    {
        std::string lower(text);
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c)
                       { return static_cast<char>(std::tolower(c)); });
        if (lower == "classb" || lower == "class_b" || lower == "b")
            return PaClass::ClassB;
        if (lower == "perfect")
            return PaClass::Perfect;
        throw DomainError("unknown PA class '" + std::string(text) + "' (expected classb or perfect)");
    }

    namespace detail
    {
        double lower_gamma_p_3_2(double x)
        {
            if (x < 1.0)
                return lower_gamma_series(1.5, x, 0.75 * std::sqrt(pi));
            return std::erf(std::sqrt(x)) - 2.0 * std::sqrt(x) * inv_sqrt_pi * std::exp(-x);
        }

        double lower_gamma_p_2(double x)
        {
            if (x < 1.0)
                return lower_gamma_series(2.0, x, 2.0);
            const double e = std::exp(-x);
            return -std::expm1(-x) - (e == 0.0 ? 0.0 : x * e);
        }
    }

    double ibo(double total_power, double antennas, double p_max)
    {
        check_inputs(total_power, antennas, p_max);
        return p_max * antennas / total_power;
    }

    double lambda_of_psi(double psi)
    {
        require_positive(psi, "IBO psi");
        return make_terms(psi).lambda;
    }

    double distortion_fraction(double psi)
    {
        require_positive(psi, "IBO psi");
        return make_terms(psi).q;
    }

    double distortion_total(double total_power, double psi, double eta)
    {
        require_positive(total_power, "total power P");
        require_positive(psi, "IBO psi");
        check_eta(eta);
        return eta * make_terms(psi).q * total_power;
    }

    double pa_power(double total_power, double antennas, double p_max, PaClass cls)
    {
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        if (cls == PaClass::Perfect)
            return total_power * t.a;
        const double x = std::sqrt(t.psi);
        // 2 M p_max erf(x) / (sqrt(pi) x), with erf(x)/x -> 2/sqrt(pi) as x -> 0
        return 2.0 * antennas * p_max * inv_sqrt_pi * std::erf(x) / x;
    }

    PaPoint pa_point(double total_power, double antennas, double p_max, double eta, PaClass cls)
    {
        check_eta(eta);
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        PaPoint pt;
        pt.psi = t.psi;
        pt.lambda = t.lambda;
        pt.d_total = eta * t.q * total_power;
        pt.p_pa = pa_power(total_power, antennas, p_max, cls);
        return pt;
    }

    double dlambda_dP(double total_power, double antennas, double p_max)
    {
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        // -(Psi sqrt(lambda) / P) (e^-Psi + 0.5 sqrt(pi/Psi) erfc(sqrt Psi))
        return -t.g * (t.psi_e + t.h) / total_power;
    }

    double dlambdaP_dP(double total_power, double antennas, double p_max)
    {
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        return t.g * t.s2;
    }

    double dD_dP(double total_power, double antennas, double p_max, double eta)
    {
        check_eta(eta);
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        // eta (1 - e^-Psi - lambda - P dlambda/dP - Psi e^-Psi) == eta (1 - sqrt(lambda)) s2
        return eta * t.u * t.s2;
    }

    double dPpa_dP(double total_power, double antennas, double p_max, PaClass cls)
    {
        return ppa_dP(terms_at(total_power, antennas, p_max), cls);
    }

    PaSensitivity sensitivity_P(double total_power, double antennas, double p_max, double eta, PaClass cls)
    {
        check_eta(eta);
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        return {-t.g * (t.psi_e + t.h) / total_power, eta * t.u * t.s2, ppa_dP(t, cls)};
    }

    double dlambda_dM(double total_power, double antennas, double p_max)
    {
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        return t.g * (p_max / total_power) * (t.e + t.h / t.psi);
    }

    double dD_dM(double total_power, double antennas, double p_max, double eta)
    {
        check_eta(eta);
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        // eta (p_max e^-Psi - P dlambda/dM) == eta p_max (u e^-Psi - g h / Psi)
        return eta * p_max * (t.u * t.e - t.g * t.h / t.psi);
    }

    double dPpa_dM(double total_power, double antennas, double p_max, PaClass cls)
    {
        return ppa_dM(terms_at(total_power, antennas, p_max), p_max, cls);
    }

    PaSensitivity sensitivity_M(double total_power, double antennas, double p_max, double eta, PaClass cls)
    {
        check_eta(eta);
        const PsiTerms t = terms_at(total_power, antennas, p_max);
        return {t.g * (p_max / total_power) * (t.e + t.h / t.psi),
                eta * p_max * (t.u * t.e - t.g * t.h / t.psi),
                ppa_dM(t, p_max, cls)};
    }
}
