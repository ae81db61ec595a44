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

#ifndef SPECMIMO_TEST_SUPPORT_HPP
#define SPECMIMO_TEST_SUPPORT_HPP

#include "specmimo/channel.hpp"
#include "specmimo/mimo.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>

namespace specmimo::test
{
    inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

    // Largest entrywise relative error of a against b.
    inline double max_rel_err(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b)
    {
        return ((a - b).cwiseAbs().array() / b.cwiseAbs().array()).maxCoeff();
    }

    inline double wavelength_at(double f_hz) { return speed_of_light / f_hz; }

    // Broadside 8x8 ULAs, transmitter at the origin, receiver on-axis at z = D.
    inline Scenario parallel_ulas(double D, double spacing, KernelMode mode, Material m = Material::conductor(),
                                  double D0 = 15.0, int n = 8)
    {
        Scenario s;
        s.material = std::move(m);
        s.D0 = D0;
        s.mode = mode;
        s.tx.n_antennas = s.rx.n_antennas = n;
        s.tx.spacing = s.rx.spacing = spacing;
        s.rx.centroid = Point3(0.0, 0.0, D);
        return s;
    }

    // sqrt(lambda * distance / n) at 57.5 GHz.
    inline double rayleigh_spacing(double distance, int n = 8)
    {
        return std::sqrt(wavelength_at(57.5e9) * distance / n);
    }

    inline double spread_db(const std::vector<double> &ev)
    {
        const auto [lo, hi] = std::minmax_element(ev.begin(), ev.end());
        return 10.0 * std::log10(*hi / *lo);
    }
}

#endif
