// SPDX-License-Identifier: Apache-2.0
//
// specmimo: exact MIMO channel synthesis for links reflected off a smooth planar surface
// Copyright (C) 2026 The specmimo authors
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

#include "specmimo/bessel.hpp"
#include "specmimo/error.hpp"

#include <cmath>

namespace specmimo
{
    namespace detail
    {
        cplx bessel_j0_series(cplx z)
        {
            const cplx q = -0.25 * z * z;
            cplx term = 1.0;
            cplx sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / double(k * k);
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum))
                    break;
            }
            return sum;
        }

        cplx bessel_j0_trapezoid(cplx z)
        {
            // Midpoint nodes on [0, pi]; error ~ 2 |J_{2M}(z)|, negligible for |z| < 17.
            constexpr int M = 28;
            cplx sum = 0.0;
            for (int j = 0; j < M; ++j)
            {
                const double t = pi * (double(j) + 0.5) / double(M);
                sum += std::cos(z * std::cos(t));
            }
            return sum / double(M);
        }

        cplx bessel_j0_hankel(cplx z)
        {
            // J0(z) ~ sqrt(2/(pi z)) [P cos(chi) - Q sin(chi)], chi = z - pi/4
            const cplx inv_z = 1.0 / z;
            cplx P = 1.0, Q = 0.0;
            cplx term = 1.0;
            double last = 1.0;
            for (int k = 1; k < 100; ++k)
            {
                const double odd = double(2 * k - 1);
                term *= (-(odd * odd) / (8.0 * double(k))) * inv_z;
                const double mag = std::abs(term.real()) + std::abs(term.imag());
                if (mag > last)
                    break; // asymptotic series started to diverge
                last = mag;
                // a_k / z^k enters P for even k, Q for odd k, with alternating sign
                const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
                if (k % 2 == 0)
                    P += sign * term;
                else
                    Q += sign * term;
                if (mag < 1e-17)
                    break;
            }
            const cplx e = std::exp(I * (z - 0.25 * pi));
            const cplx inv_e = 1.0 / e;
            const cplx cos_chi = 0.5 * (e + inv_e);
            const cplx sin_chi = -0.5 * I * (e - inv_e);
            return std::sqrt(2.0 / pi * inv_z) * (P * cos_chi - Q * sin_chi);
        }
    }

    cplx bessel_j0(cplx z)
    {
        if (std::abs(z.imag()) > 700.0)
            throw GuardError("bessel_j0: |Im z| > 700 overflows the cosine kernel");
        if (z.real() < 0.0)
            z = -z; // J0 is even
        const double r = std::abs(z);
        if (r <= 4.0)
            return detail::bessel_j0_series(z);
        if (r < 17.0)
            return detail::bessel_j0_trapezoid(z);
        return detail::bessel_j0_hankel(z);
    }
}
