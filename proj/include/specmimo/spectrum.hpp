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

#ifndef SPECMIMO_SPECTRUM_HPP
#define SPECMIMO_SPECTRUM_HPP

#include "specmimo/constants.hpp"
#include "specmimo/geometry.hpp"
#include "specmimo/materials.hpp"

#include <string>

namespace specmimo
{
    enum class KernelMode
    {
        LosOnly,
        ReflectedOnly,
        Total
    };

    // Receiver region relative to the source plane: below the source (away from
    // the surface) or between source and surface.
    enum class Region
    {
        Below,
        Between
    };

    const char *to_string(KernelMode mode);
    KernelMode kernel_mode_from_string(const std::string &s);

    inline bool has_los(KernelMode m) { return m != KernelMode::ReflectedOnly; }
    inline bool has_reflection(KernelMode m) { return m != KernelMode::LosOnly; }

    // Everything the wavenumber kernel needs besides the evaluation point.
    struct KernelContext
    {
        Wavenumbers w;
        Material material;
        double D0 = 0.0;
        KernelMode mode = KernelMode::Total;
        bool hard_indicator = false; // zero the kernel for real kappa_rho > k1
    };

    struct SpectralPoint
    {
        cplx kappa_rho{};
        cplx k1z{};
        cplx k2z{};
    };

    SpectralPoint spectral_point(cplx kappa_rho, const Wavenumbers &w);

    // Region implied by the antenna heights; throws if rz == sz.
    Region region_of(double rz, double sz);

    // LSI wavenumber response H(kappa_rho; rz, sz) of the direct and reflected paths.
    cplx wavenumber_response(cplx kappa_rho, double rz, double sz, const KernelContext &ctx);

    // Same, with k1z = sqrt(k1^2 - kappa_rho^2) (radiating branch) supplied by the
    // caller; avoids cancellation near the branch point. Ignores the hard indicator.
    cplx wavenumber_response_kz(cplx kappa_rho, cplx k1z, double rz, double sz, const KernelContext &ctx);

    // Overall constant c of the spherical wave c e^{i k1 d}/d produced by the
    // spectral integral of the LOS kernel: c = k1 eta1 / (4 pi i).
    cplx engine_constant(const Wavenumbers &w);

    cplx weyl_los_closed_form(const Point3 &r, const Point3 &s, const Wavenumbers &w);

    // Band-limited surface impulse response (blurred-image kernel)
    //   r(rho) = (1/2pi) int_0^kmax R(k) J0(k rho) k dk
    // along the real axis. Throws ValidationError for kappa_max <= 0.
    cplx surface_impulse_response(double rho, const Wavenumbers &w, const Material &m, double kappa_max,
                                  double rel_tol = 1e-12);

    // Propagating band only (kappa_max = k1).
    inline cplx surface_impulse_response(double rho, const Wavenumbers &w, const Material &m)
    {
        return surface_impulse_response(rho, w, m, w.k1);
    }
}

#endif
