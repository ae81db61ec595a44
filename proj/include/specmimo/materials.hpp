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

#ifndef SPECMIMO_MATERIALS_HPP
#define SPECMIMO_MATERIALS_HPP

#include "specmimo/constants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace specmimo
{
    struct Material
    {
        std::string name;
        cplx n2{1.0, 0.0};            // complex refractive index of region 2
        bool perfect_conductor = false; // overrides n2: R = -1 everywhere

        static Material conductor(std::string name = "conductor");
        static Material dielectric(std::string name, cplx n2);

        void validate() const;
    };

    struct Wavenumbers
    {
        double wavelength = 0.0; // [m]
        double k1 = 0.0;         // free-space wavenumber [rad/m]
        cplx k2{};               // n2 * k1 (zero for a perfect conductor)
        double eta1 = free_space_impedance;

        static Wavenumbers at(double frequency_hz, const Material &m);
    };

    // sqrt with the radiation-condition branch: Im >= 0, and Re >= 0 when Im == 0.
    cplx radiating_sqrt(cplx z);

    // Reflection coefficient as a function of the incidence angle.
    cplx fresnel_angle(double theta_i, const Material &m);

    // Reflection coefficient as a function of the transverse wavenumber.
    cplx fresnel_wavenumber(cplx kappa_rho, const Wavenumbers &w, const Material &m);

    struct Transmission
    {
        cplx theta_t{};          // refraction angle (complex for lossy media)
        cplx T{};                // transmission coefficient, T = 1 + R
        bool angle_defined = true; // false for a perfect conductor
    };

    Transmission snell_transmission(double theta_i, const Material &m);

    // Conductor plus three dielectrics whose normal-incidence losses are
    // 7.19 dB (concrete), 9.63 dB (floorboard) and 13.98 dB (plasterboard).
    std::vector<Material> builtin_materials();

    std::optional<Material> find_material(const std::vector<Material> &table, const std::string &name);
}

#endif
