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

#ifndef SPECMIMO_CONSTANTS_HPP
#define SPECMIMO_CONSTANTS_HPP

#include <complex>
#include <numbers>

namespace specmimo
{
    using cplx = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0;       // [m/s]
    inline constexpr double free_space_impedance = 376.730313668; // [Ohm], approx. 120*pi
    inline constexpr cplx I{0.0, 1.0};

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }
}

#endif
