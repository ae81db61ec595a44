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

#include "specmimo/geometry.hpp"
#include "specmimo/constants.hpp"
#include "specmimo/error.hpp"

#include <cmath>
#include <string>

namespace specmimo
{
    void ArraySpec::validate() const
    {
        if (n_antennas < 1)
            throw ValidationError("ArraySpec: n_antennas must be >= 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw ValidationError("ArraySpec: spacing must be a positive finite length");
        if (!std::isfinite(tilt) || !centroid.allFinite())
            throw ValidationError("ArraySpec: tilt and centroid must be finite");
    }

    std::vector<Point3> ula_positions(const ArraySpec &spec)
    {
        spec.validate();
        const Point3 axis(std::cos(spec.tilt), 0.0, std::sin(spec.tilt));
        const double mid = 0.5 * double(spec.n_antennas - 1);

        std::vector<Point3> out;
        out.reserve(spec.n_antennas);
        for (int k = 0; k < spec.n_antennas; ++k)
            out.push_back(spec.centroid + ((double(k) - mid) * spec.spacing) * axis);
        return out;
    }

    static void check_receiver_height(const Point3 &r0, double D0)
    {
        if (!(D0 > 0.0))
            throw ValidationError("surface distance D0 must be positive");
        if (!(r0.z() > 0.0) || r0.z() > D0)
            throw ValidationError("receiver centroid must satisfy 0 < r0z <= D0 (got r0z = " +
                                  std::to_string(r0.z()) + ", D0 = " + std::to_string(D0) + ")");
    }

    double incidence_angle(const Point3 &r0, double D0)
    {
        check_receiver_height(r0, D0);
        const double D2 = r0.squaredNorm();
        const double num = 2.0 * D0 - r0.z();
        const double den = std::sqrt(D2 + 4.0 * D0 * (D0 - r0.z()));
        return std::acos(std::min(1.0, num / den));
    }

    double equivalent_distance(double theta0, double D0, double r0z)
    {
        if (!(theta0 >= 0.0) || theta0 >= 0.5 * pi)
            throw ValidationError("equivalent_distance: theta0 must lie in [0, pi/2)");
        const double c = std::cos(theta0);
        if (!(c > 0.0))
            throw ValidationError("equivalent_distance: grazing incidence gives an infinite range");
        return (2.0 * D0 - r0z) / c;
    }

    ProjectedTilts projected_tilts(const Point3 &r0, double D0)
    {
        check_receiver_height(r0, D0);
        const double z = r0.z();
        const double ze = 2.0 * D0 - z;
        const double D = r0.norm();
        const double De = equivalent_distance(incidence_angle(r0, D0), D0, z);

        const double D_hat = D / std::sqrt(1.0 + std::pow(r0.y() / z, 2));
        const double De_hat = De / std::sqrt(1.0 + std::pow(r0.y() / ze, 2));

        return {std::acos(std::min(1.0, z / D_hat)), std::acos(std::min(1.0, ze / De_hat))};
    }

    Placement make_placement(const Point3 &r0, double D0)
    {
        check_receiver_height(r0, D0);
        Placement p;
        p.r0 = r0;
        p.D0 = D0;
        p.D = r0.norm();
        p.theta0 = incidence_angle(r0, D0);
        p.De = equivalent_distance(p.theta0, D0, r0.z());
        p.D_hat = p.D / std::sqrt(1.0 + std::pow(r0.y() / r0.z(), 2));
        p.De_hat = p.De / std::sqrt(1.0 + std::pow(r0.y() / (2.0 * D0 - r0.z()), 2));
        const auto tilts = projected_tilts(r0, D0);
        p.tilt = tilts.los;
        p.tilt_e = tilts.reflected;
        return p;
    }

    void validate_source_side(const std::vector<Point3> &antennas, double D0, double margin, const char *label)
    {
        for (std::size_t k = 0; k < antennas.size(); ++k)
        {
            if (!(antennas[k].z() < D0 - margin))
                throw ValidationError(std::string(label) + " antenna " + std::to_string(k) + " at z = " +
                                      std::to_string(antennas[k].z()) +
                                      " m is not on the source side of the surface (requires z < D0 - " +
                                      std::to_string(margin) + " m)");
        }
    }
}
