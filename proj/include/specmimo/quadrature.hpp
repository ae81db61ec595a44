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

#ifndef SPECMIMO_QUADRATURE_HPP
#define SPECMIMO_QUADRATURE_HPP

#include "specmimo/constants.hpp"
#include "specmimo/materials.hpp"
#include "specmimo/spectrum.hpp"

#include <optional>
#include <span>
#include <vector>

namespace specmimo
{
    // Gauss-Legendre rule on [-1, 1].
    struct GaussLegendre
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    GaussLegendre gauss_legendre(int order);

    // Semi-elliptical integration path for the Sommerfeld-type integral.
    struct ContourConfig
    {
        double kappa_min_ratio = 1e-3;    // minor / major semi-axis
        int n_nodes = 2048;               // initial node count on the ellipse
        double rel_tol = 1e-9;            // node-doubling stopping criterion
        bool tail = true;                 // keep the evanescent band beyond the ellipse
        double tail_eps = 1e-16;          // truncation level of the evanescent tail
        int max_nodes = 1 << 21;          // node budget per integral
        int panel_order = 16;             // Gauss-Legendre order per panel
        std::optional<double> kappa_maj;  // override of the major axis [rad/m]

        void validate() const;
    };

    struct QuadratureNode
    {
        cplx kappa_rho{};
        cplx weight{}; // panel weight times d(kappa_rho)/d(theta)
    };

    // Major semi-axis: (k1 + Re k2)/2, or 1.5 k1 when no finite k2 exists
    // (perfect conductor), never below 1.1 k1.
    double contour_major_axis(const Wavenumbers &w, const ContourConfig &cfg);

    // kappa(theta) = (kmaj/2)(1 + cos theta) + i (kmin/2) sin theta, theta in (pi, 2pi).
    cplx contour_point(double theta, double kappa_maj, double kappa_min);
    cplx contour_jacobian(double theta, double kappa_maj, double kappa_min);

    std::vector<QuadratureNode> build_contour(const Wavenumbers &w, const ContourConfig &cfg);

    // Same, with an explicit panel count (n_panels * panel_order nodes).
    std::vector<QuadratureNode> build_contour_panels(double kappa_maj, double kappa_min, int n_panels,
                                                     const GaussLegendre &rule);

    // Largest admissible delta_rho / lambda for the semi-elliptical path.
    inline constexpr double max_transverse_wavelengths = 3600.0;

    struct SommerfeldResult
    {
        cplx value{};
        int nodes = 0;         // nodes used at the accepted level
        double delta = 0.0;    // |I(2n) - I(n)| at acceptance
        double tail_end = 0.0; // end of the real-axis tail (0 if none)
    };

    // h(delta_rho; rz, sz) = (k1 eta1 / 4pi) int k J0(k delta_rho) / k1z [...] dk
    // along the deformed contour, refined by node doubling until converged.
    SommerfeldResult sommerfeld_integral(double delta_rho, double rz, double sz, const KernelContext &ctx,
                                         const ContourConfig &cfg);

    // Many transverse separations sharing (rz, sz): the kernel is evaluated once
    // per node and each separation stops at its own converged level. Results do
    // not depend on the batch composition or on `threads`.
    std::vector<SommerfeldResult> sommerfeld_batch(std::span<const double> delta_rhos, double rz, double sz,
                                                   const KernelContext &ctx, const ContourConfig &cfg,
                                                   int threads = 1);

    inline cplx sommerfeld_h(double delta_rho, double rz, double sz, const KernelContext &ctx,
                             const ContourConfig &cfg)
    {
        return sommerfeld_integral(delta_rho, rz, sz, ctx, cfg).value;
    }
}

#endif
