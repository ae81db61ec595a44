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

#include "specmimo/materials.hpp"
#include "specmimo/error.hpp"

#include <cmath>

namespace specmimo
{
    Material Material::conductor(std::string name)
    {
        Material m;
        m.name = std::move(name);
        m.perfect_conductor = true;
        return m;
    }

    Material Material::dielectric(std::string name, cplx n2)
    {
        Material m;
        m.name = std::move(name);
        m.n2 = n2;
        return m;
    }

    void Material::validate() const
    {
        if (perfect_conductor)
            return;
        if (!std::isfinite(n2.real()) || !std::isfinite(n2.imag()))
            throw ValidationError("material '" + name + "': refractive index must be finite");
        if (n2.real() < 1.0 || n2.imag() < 0.0)
            throw ValidationError("material '" + name + "': requires Re(n2) >= 1 and Im(n2) >= 0");
    }

    Wavenumbers Wavenumbers::at(double frequency_hz, const Material &m)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw ValidationError("frequency must be positive");
        Wavenumbers w;
        w.wavelength = speed_of_light / frequency_hz;
        w.k1 = 2.0 * pi / w.wavelength;
        w.k2 = m.perfect_conductor ? cplx{} : m.n2 * w.k1;
        return w;
    }

    cplx radiating_sqrt(cplx z)
    {
        cplx s = std::sqrt(z);
        if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0))
            s = -s;
        return s;
    }

    cplx fresnel_angle(double theta_i, const Material &m)
    {
        if (m.perfect_conductor)
            return {-1.0, 0.0};
        const double c = std::cos(theta_i);
        const double s = std::sin(theta_i);
        const cplx root = std::sqrt(m.n2 * m.n2 - s * s); // principal branch, Re >= 0
        return (c - root) / (c + root);
    }

    cplx fresnel_wavenumber(cplx kappa_rho, const Wavenumbers &w, const Material &m)
    {
        if (m.perfect_conductor)
            return {-1.0, 0.0};
        const cplx kr2 = kappa_rho * kappa_rho;
        const cplx k1z = radiating_sqrt(w.k1 * w.k1 - kr2);
        const cplx k2z = radiating_sqrt(w.k2 * w.k2 - kr2);
        return (k1z - k2z) / (k1z + k2z);
    }

    Transmission snell_transmission(double theta_i, const Material &m)
    {
        Transmission t;
        if (m.perfect_conductor)
        {
            t.T = 0.0;
            t.angle_defined = false;
            return t;
        }
        t.theta_t = std::asin(cplx(std::sin(theta_i)) / m.n2);
        t.T = 1.0 + fresnel_angle(theta_i, m);
        return t;
    }

    std::vector<Material> builtin_materials()
    {
        return {
            Material::conductor("conductor"),
            Material::dielectric("concrete", {2.5524, 0.0}),
            Material::dielectric("floorboard", {1.9851, 0.0}),
            Material::dielectric("plasterboard", {1.5000, 0.0}),
        };
    }

    std::optional<Material> find_material(const std::vector<Material> &table, const std::string &name)
    {
        for (const auto &m : table)
            if (m.name == name)
                return m;
        return std::nullopt;
    }
}
