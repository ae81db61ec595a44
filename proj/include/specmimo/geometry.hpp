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

#ifndef SPECMIMO_GEOMETRY_HPP
#define SPECMIMO_GEOMETRY_HPP

#include <Eigen/Core>
#include <cmath>
#include <vector>

namespace specmimo
{
    using Point3 = Eigen::Vector3d;

    // Uniform linear array. The array axis lies in the xz-plane at angle `tilt` [rad]
    // from the x-axis; antennas are symmetric about `centroid`.
    struct ArraySpec
    {
        int n_antennas = 1;
        double spacing = 0.0;      // [m]
        double tilt = 0.0;         // [rad]
        Point3 centroid = Point3::Zero();

        void validate() const;
    };

    std::vector<Point3> ula_positions(const ArraySpec &spec);

    // Incidence angle of the image-source-to-receiver path on the surface z = D0,
    // for a transmit centroid at the origin.
    double incidence_angle(const Point3 &r0, double D0);

    // Range of the equivalent LOS link from the image source.
    double equivalent_distance(double theta0, double D0, double r0z);

    struct ProjectedTilts
    {
        double los = 0.0;       // [rad]
        double reflected = 0.0; // [rad]
    };

    // Equivalent ULA rotations that model an oblique geometry in the xz-plane.
    ProjectedTilts projected_tilts(const Point3 &r0, double D0);

    // Receive-centroid geometry with all derived quantities.
    struct Placement
    {
        Point3 r0 = Point3::Zero();
        double D0 = 0.0;
        double D = 0.0;         // |r0|
        double De = 0.0;        // image-source range
        double theta0 = 0.0;    // incidence angle [rad]
        double tilt = 0.0;      // projected LOS tilt [rad]
        double tilt_e = 0.0;    // projected reflected tilt [rad]
        double D_hat = 0.0;
        double De_hat = 0.0;
    };

    Placement make_placement(const Point3 &r0, double D0);

    // Every antenna strictly on the source side of the surface, at least `margin`
    // away from it. Throws ValidationError naming the offending antenna.
    void validate_source_side(const std::vector<Point3> &antennas, double D0, double margin, const char *label);

    // (x, y) distance between two points.
    inline double transverse_distance(const Point3 &a, const Point3 &b)
    {
        return std::hypot(a.x() - b.x(), a.y() - b.y());
    }

    inline Point3 mirror_across(const Point3 &p, double D0)
    {
        return {p.x(), p.y(), 2.0 * D0 - p.z()};
    }
}

#endif
