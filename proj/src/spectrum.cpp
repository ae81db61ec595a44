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

#include "specmimo/spectrum.hpp"
#include "specmimo/bessel.hpp"
#include "specmimo/error.hpp"
#include "specmimo/quadrature.hpp"

#include <cmath>
#include <limits>

namespace specmimo
{
    const char *to_string(KernelMode mode)
    {
        switch (mode)
        {
        case KernelMode::LosOnly:
            return "los";
        case KernelMode::ReflectedOnly:
            return "reflected";
        case KernelMode::Total:
            return "total";
        }
        return "?";
    }

    KernelMode kernel_mode_from_string(const std::string &s)
    {
        if (s == "los")
            return KernelMode::LosOnly;
        if (s == "reflected")
            return KernelMode::ReflectedOnly;
        if (s == "total")
            return KernelMode::Total;
        throw ValidationError("unknown kernel mode '" + s + "' (expected los, reflected or total)");
    }

    SpectralPoint spectral_point(cplx kappa_rho, const Wavenumbers &w)
    {
        const cplx kr2 = kappa_rho * kappa_rho;
        return {kappa_rho, radiating_sqrt(w.k1 * w.k1 - kr2), radiating_sqrt(w.k2 * w.k2 - kr2)};
    }

    Region region_of(double rz, double sz)
    {
        if (rz > sz)
            return Region::Between;
        if (rz < sz)
            return Region::Below;
        throw ValidationError("receiver and source share the same z-plane; the direct-path spectral integral diverges");
    }

    cplx wavenumber_response(cplx kappa_rho, double rz, double sz, const KernelContext &ctx)
    {
        const auto &w = ctx.w;
        if (ctx.hard_indicator && kappa_rho.imag() == 0.0 && kappa_rho.real() > w.k1)
            return 0.0;
        return wavenumber_response_kz(kappa_rho, radiating_sqrt(w.k1 * w.k1 - kappa_rho * kappa_rho), rz, sz, ctx);
    }

    cplx wavenumber_response_kz(cplx kappa_rho, cplx k1z, double rz, double sz, const KernelContext &ctx)
    {
        const auto &w = ctx.w;
        if (k1z == 0.0)
            throw ValidationError("wavenumber_response: kappa_rho at the branch point k1 (pole of 1/k1z)");

        cplx bracket = 0.0;
        if (has_los(ctx.mode))
        {
            const double dz = rz - sz;
            bracket += region_of(rz, sz) == Region::Between ? std::exp(I * k1z * dz) : std::exp(-I * k1z * dz);
        }
        if (has_reflection(ctx.mode))
        {
            cplx R = -1.0;
            if (!ctx.material.perfect_conductor)
            {
                const cplx k2z = radiating_sqrt(w.k2 * w.k2 - kappa_rho * kappa_rho);
                R = (k1z - k2z) / (k1z + k2z);
            }
            bracket += R * std::exp(-I * k1z * (rz + sz - 2.0 * ctx.D0));
        }
        return 0.5 * w.k1 * w.eta1 / k1z * bracket;
    }

    cplx engine_constant(const Wavenumbers &w)
    {
        return w.k1 * w.eta1 / (4.0 * pi * I);
    }

    cplx weyl_los_closed_form(const Point3 &r, const Point3 &s, const Wavenumbers &w)
    {
        const double d = (r - s).norm();
        if (!(d > 0.0))
            throw ValidationError("weyl_los_closed_form: coincident source and receiver");
        return engine_constant(w) * std::exp(I * (w.k1 * d)) / d;
    }

    namespace
    {
        // int_a^b f(k) dk with k = a + (b-a)(1 - cos t)/2, which removes
        // square-root endpoint singularities; composite GL with node doubling.
        template <class F>
        cplx integrate_clustered(F &&f, double a, double b, double rel_tol)
        {
            const auto rule = gauss_legendre(16);
            const double half = 0.5 * (b - a);
            cplx previous = 0.0;
            for (int panels = 8; panels <= (1 << 16); panels *= 2)
            {
                const double h = pi / panels;
                cplx sum = 0.0;
                double l1 = 0.0;
                for (int p = 0; p < panels; ++p)
                {
                    const double mid = (p + 0.5) * h;
                    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                    {
                        const double t = mid + 0.5 * h * rule.nodes[q];
                        const double k = a + half * (1.0 - std::cos(t));
                        const cplx v = f(k) * (half * std::sin(t) * 0.5 * h * rule.weights[q]);
                        sum += v;
                        l1 += std::abs(v);
                    }
                }
                if (panels > 8 &&
                    std::abs(sum - previous) <= std::max(rel_tol * std::abs(sum), 64.0 * 2.2e-16 * l1))
                    return sum;
                previous = sum;
            }
            throw ConvergenceError("surface_impulse_response: real-axis quadrature did not converge");
        }
    }

    cplx surface_impulse_response(double rho, const Wavenumbers &w, const Material &m, double kappa_max,
                                  double rel_tol)
    {
        if (!(kappa_max > 0.0) || !std::isfinite(kappa_max))
            throw ValidationError("surface_impulse_response: kappa_max must be positive and finite");
        if (!(rho >= 0.0))
            throw ValidationError("surface_impulse_response: rho must be non-negative");

        auto f = [&](double k) { return fresnel_wavenumber(cplx(k, -0.0), w, m) * bessel_j0(k * rho) * k; };

        // Break at the real branch points k1 and (lossless) k2.
        std::vector<double> cuts{0.0};
        if (kappa_max > w.k1)
            cuts.push_back(w.k1);
        if (!m.perfect_conductor && w.k2.imag() == 0.0 && w.k2.real() > w.k1 && kappa_max > w.k2.real())
            cuts.push_back(w.k2.real());
        cuts.push_back(kappa_max);

        cplx total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            total += integrate_clustered(f, cuts[i], cuts[i + 1], rel_tol);
        return total / (2.0 * pi);
    }
}
