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

#ifndef SPECMIMO_CHANNEL_HPP
#define SPECMIMO_CHANNEL_HPP

#include "specmimo/geometry.hpp"
#include "specmimo/materials.hpp"
#include "specmimo/quadrature.hpp"
#include "specmimo/spectrum.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace specmimo
{
    struct Scenario
    {
        double frequency_hz = 57.5e9;
        Material material = Material::conductor();
        double D0 = 15.0; // surface plane z = D0 [m]
        ArraySpec tx;
        ArraySpec rx;
        KernelMode mode = KernelMode::Total;
        ContourConfig contour;

        Wavenumbers wavenumbers() const { return Wavenumbers::at(frequency_hz, material); }
        KernelContext kernel_context() const;

        // Checks every field; with a reflected term, each antenna must also sit at
        // least one wavelength below the surface.
        void validate() const;

        // FNV-1a over a canonical text rendering of every field.
        std::uint64_t hash() const;
    };

    enum class Provenance
    {
        Exact,
        LosOracle,
        ImageOracle,
        Paraxial
    };

    const char *to_string(Provenance p);

    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries; // Nr x Nt
        Provenance provenance = Provenance::Exact;
        std::uint64_t scenario_hash = 0;

        Eigen::Index n_rx() const { return entries.rows(); }
        Eigen::Index n_tx() const { return entries.cols(); }
    };

    // Entry (m, n) = h(delta_rho(m, n); rz_m, sz_n) by contour quadrature. Entries that
    // share (delta_rho, rz, sz) to within 0.1 pm are integrated once.
    ChannelMatrix build_exact(const Scenario &scenario, int threads = 1);

    // Closed-form spherical wave between every antenna pair.
    ChannelMatrix build_los_oracle(const Scenario &scenario);

    // Sign-flipped spherical wave from the mirrored transmitter; perfect conductor only.
    ChannelMatrix build_image_oracle(const Scenario &scenario);

    // Ray-tracing approximation: image spherical wave weighted by R(theta0) of the centroids.
    ChannelMatrix build_paraxial(const Scenario &scenario);

    // Incidence angle of the centroid-to-centroid reflected path.
    double centroid_incidence_angle(const Scenario &scenario);

    // One row per receive antenna, entries "re+imj" with 17 significant digits.
    void write_matrix_csv(std::ostream &os, const ChannelMatrix &H);
    Eigen::MatrixXcd read_matrix_csv(std::istream &is);
    std::string format_complex(cplx z);
}

#endif
