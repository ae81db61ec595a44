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

#ifndef SPECMIMO_RAYTRACE_COMPARE_HPP
#define SPECMIMO_RAYTRACE_COMPARE_HPP

#include "specmimo/channel.hpp"

#include <iosfwd>
#include <vector>

namespace specmimo
{
    // Reflected link between identical broadside ULAs, transmitter at the origin and
    // receiver on-axis at distance D, surface at z = D0.
    struct ApertureSweep
    {
        std::vector<double> ratios{0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0}; // L / De, ascending
        Material material = Material::dielectric("concrete", {2.5524, 0.0});
        double frequency_hz = 57.5e9;
        double D = 2.0;
        double D0 = 3.0;
        double snr_db = 0.0;
        ContourConfig contour;

        double equivalent_distance() const { return 2.0 * D0 - D; }
        void validate() const;
    };

    struct SweepPoint
    {
        double ratio = 0.0;
        int n_antennas = 0;
        double spacing = 0.0;     // [m]
        double se_exact = 0.0;    // [bit/s/Hz]
        double se_paraxial = 0.0; // [bit/s/Hz]
        double rel_gap = 0.0;     // |se_exact - se_paraxial| / se_exact
        double frobenius_gap = 0.0; // ||H_exact - H_paraxial||_F / ||H_exact||_F
    };

    // Largest N with N * d_opt(De, SNR; N) <= aperture, at least 1.
    int antennas_for_aperture(double aperture, double De, double wavelength, double snr_db);

    Scenario sweep_scenario(const ApertureSweep &sweep, double ratio);

    // Spectral efficiencies use eigenvalues normalized by the conductor image channel
    // of the same geometry, so material loss is retained.
    SweepPoint run_point(const ApertureSweep &sweep, double ratio, int threads = 1);
    std::vector<SweepPoint> run_sweep(const ApertureSweep &sweep, int threads = 1);

    // Columns: ratio, n_antennas, spacing_m, se_exact, se_paraxial, rel_gap, frobenius_gap.
    void write_sweep_csv(std::ostream &os, const std::vector<SweepPoint> &points);
}

#endif
