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

#include "specmimo/quadrature.hpp"
#include "specmimo/bessel.hpp"
#include "specmimo/error.hpp"
#include "specmimo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

namespace specmimo
{
    namespace
    {
        // P_n(x) and P_n'(x) by the three-term recurrence.
        std::pair<double, double> legendre(int n, double x)
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
        }
    }

    GaussLegendre gauss_legendre(int order)
    {
        if (order < 1)
            throw ValidationError("gauss_legendre: order must be >= 1");
        GaussLegendre rule;
        rule.nodes.assign(order, 0.0);
        rule.weights.assign(order, 0.0);
        if (order == 1)
        {
            rule.weights[0] = 2.0;
            return rule;
        }
        for (int i = 0; i < (order + 1) / 2; ++i)
        {
            double x = std::cos(pi * (i + 0.75) / (order + 0.5));
            for (int it = 0; it < 100; ++it)
            {
                const auto [p, dp] = legendre(order, x);
                const double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            const double dp = legendre(order, x).second;
            const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[order - 1 - i] = x;
            rule.weights[i] = wgt;
            rule.weights[order - 1 - i] = wgt;
        }
        if (order % 2 == 1)
            rule.nodes[order / 2] = 0.0;
        return rule;
    }

    void ContourConfig::validate() const
    {
        if (!(kappa_min_ratio > 0.0) || kappa_min_ratio >= 1.0)
            throw ValidationError("contour: kappa_min_ratio must lie in (0, 1)");
        if (n_nodes < 16)
            throw ValidationError("contour: n_nodes must be >= 16");
        if (!(rel_tol > 0.0) || rel_tol >= 1.0)
            throw ValidationError("contour: rel_tol must lie in (0, 1)");
        if (!(tail_eps > 0.0) || tail_eps >= 1.0)
            throw ValidationError("contour: tail_eps must lie in (0, 1)");
        if (panel_order < 2 || panel_order > 64)
            throw ValidationError("contour: panel_order must lie in [2, 64]");
        if (max_nodes < n_nodes)
            throw ValidationError("contour: max_nodes must be >= n_nodes");
        if (kappa_maj && !(*kappa_maj > 0.0))
            throw ValidationError("contour: kappa_maj override must be positive");
    }

    double contour_major_axis(const Wavenumbers &w, const ContourConfig &cfg)
    {
        if (cfg.kappa_maj)
            return *cfg.kappa_maj;
        const double from_k2 = w.k2 == cplx{} ? 1.5 * w.k1 : 0.5 * (w.k1 + w.k2.real());
        return std::max(from_k2, 1.1 * w.k1);
    }

    cplx contour_point(double theta, double kappa_maj, double kappa_min)
    {
        return {0.5 * kappa_maj * (1.0 + std::cos(theta)), 0.5 * kappa_min * std::sin(theta)};
    }

    cplx contour_jacobian(double theta, double kappa_maj, double kappa_min)
    {
        return 0.5 * cplx(-kappa_maj * std::sin(theta), kappa_min * std::cos(theta));
    }

    std::vector<QuadratureNode> build_contour_panels(double kappa_maj, double kappa_min, int n_panels,
                                                     const GaussLegendre &rule)
    {
        std::vector<QuadratureNode> nodes;
        nodes.reserve(std::size_t(n_panels) * rule.nodes.size());
        const double h = pi / n_panels;
        for (int p = 0; p < n_panels; ++p)
        {
            const double mid = pi + (p + 0.5) * h;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            {
                const double theta = mid + 0.5 * h * rule.nodes[q];
                nodes.push_back({contour_point(theta, kappa_maj, kappa_min),
                                 0.5 * h * rule.weights[q] * contour_jacobian(theta, kappa_maj, kappa_min)});
            }
        }
        return nodes;
    }

    std::vector<QuadratureNode> build_contour(const Wavenumbers &w, const ContourConfig &cfg)
    {
        cfg.validate();
        const double kmaj = contour_major_axis(w, cfg);
        const int panels = (cfg.n_nodes + cfg.panel_order - 1) / cfg.panel_order;
        return build_contour_panels(kmaj, kmaj * cfg.kappa_min_ratio, panels, gauss_legendre(cfg.panel_order));
    }

    namespace
    {
        // Real-axis tail segment [a, b], cosine-clustered toward both ends.
        struct Segment
        {
            double a, b;
            int base_panels;
        };

        // Quadrature nodes of one refinement level with the delta_rho-independent
        // part of the integrand folded into the weights.
        struct WeightedNode
        {
            cplx kappa;
            cplx weight; // quadrature weight * k * H(k) / (2 pi)
        };

        void check_transverse_guard(double delta_rho, const Wavenumbers &w)
        {
            if (!(delta_rho >= 0.0) || !std::isfinite(delta_rho))
                throw ValidationError("sommerfeld_h: delta_rho must be a non-negative finite length");
            if (delta_rho / w.wavelength >= max_transverse_wavelengths)
            {
                std::ostringstream msg;
                msg << "transverse separation delta_rho/lambda = " << delta_rho / w.wavelength
                    << " >= 3600: outside the validity range of the semi-elliptical contour "
                       "(a steepest-descent path would be required)";
                throw GuardError(msg.str());
            }
        }
    }

    std::vector<SommerfeldResult> sommerfeld_batch(std::span<const double> delta_rhos, double rz, double sz,
                                                   const KernelContext &ctx, const ContourConfig &cfg,
                                                   int threads)
    {
        cfg.validate();
        const auto &w = ctx.w;
        for (double d : delta_rhos)
            check_transverse_guard(d, w);

        double dz_min = std::numeric_limits<double>::infinity();
        if (has_los(ctx.mode))
        {
            region_of(rz, sz);
            dz_min = std::min(dz_min, std::abs(rz - sz));
        }
        if (has_reflection(ctx.mode))
        {
            if (!(rz < ctx.D0) || !(sz < ctx.D0))
                throw ValidationError("sommerfeld_h: antennas must lie on the source side of the surface (z < D0)");
            const double dz_image = 2.0 * ctx.D0 - rz - sz;
            if (!(dz_image > 0.0))
                throw ValidationError("sommerfeld_h: antennas must lie on the source side of the surface");
            dz_min = std::min(dz_min, dz_image);
        }

        const auto rule = gauss_legendre(cfg.panel_order);
        const int order = cfg.panel_order;
        const int base_panels = (cfg.n_nodes + order - 1) / order;

        std::vector<Segment> tail;
        double kmaj = 0.0, kmin = 0.0, tail_end = 0.0;
        if (cfg.tail)
        {
            kmaj = contour_major_axis(w, cfg);
            kmin = kmaj * cfg.kappa_min_ratio;
            const double s_end = std::log(1.0 / cfg.tail_eps) / dz_min;
            const double k_end = std::sqrt(w.k1 * w.k1 + s_end * s_end);
            if (k_end > kmaj)
            {
                std::vector<double> cuts{kmaj};
                const double k2 = w.k2.real();
                if (!ctx.material.perfect_conductor && has_reflection(ctx.mode) && w.k2.imag() == 0.0 &&
                    k2 > kmaj && k2 < k_end)
                    cuts.push_back(k2);
                cuts.push_back(k_end);
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
                {
                    const double len = cuts[i + 1] - cuts[i];
                    tail.push_back({cuts[i], cuts[i + 1], 4 + int(std::ceil(len * dz_min / (2.0 * pi)))});
                }
                tail_end = k_end;
            }
        }

        const double norm = 1.0 / (2.0 * pi);
        auto kernel = [&](cplx k) { return norm * k * wavenumber_response(k, rz, sz, ctx); };

        auto level_nodes = [&](int level) {
            std::vector<WeightedNode> nodes;
            const int panels = base_panels << level;
            if (cfg.tail)
            {
                const double h = pi / panels;
                for (int p = 0; p < panels; ++p)
                {
                    const double mid = pi + (p + 0.5) * h;
                    for (int q = 0; q < order; ++q)
                    {
                        const double theta = mid + 0.5 * h * rule.nodes[q];
                        const cplx k = contour_point(theta, kmaj, kmin);
                        const cplx jac = contour_jacobian(theta, kmaj, kmin);
                        nodes.push_back({k, kernel(k) * (0.5 * h * rule.weights[q] * jac)});
                    }
                }
                for (const auto &seg : tail)
                {
                    const int tp = seg.base_panels << level;
                    const double th = pi / tp;
                    const double half = 0.5 * (seg.b - seg.a);
                    for (int p = 0; p < tp; ++p)
                    {
                        const double mid = (p + 0.5) * th;
                        for (int q = 0; q < order; ++q)
                        {
                            const double t = mid + 0.5 * th * rule.nodes[q];
                            const cplx k(seg.a + half * (1.0 - std::cos(t)), -0.0);
                            nodes.push_back({k, kernel(k) * (half * std::sin(t) * 0.5 * th * rule.weights[q])});
                        }
                    }
                }
            }
            else
            {
                // Propagating disk only: k = k1 sin(phi), phi in [0, pi/2].
                const double h = 0.5 * pi / panels;
                for (int p = 0; p < panels; ++p)
                {
                    const double mid = (p + 0.5) * h;
                    for (int q = 0; q < order; ++q)
                    {
                        const double phi = mid + 0.5 * h * rule.nodes[q];
                        const cplx k(w.k1 * std::sin(phi), 0.0);
                        const double kz = w.k1 * std::cos(phi);
                        nodes.push_back({k, norm * k * wavenumber_response_kz(k, kz, rz, sz, ctx) *
                                                (kz * 0.5 * h * rule.weights[q])});
                    }
                }
            }
            return nodes;
        };

        struct State
        {
            cplx prev{};
            double last_delta = std::numeric_limits<double>::quiet_NaN();
            bool done = false;
        };

        const std::size_t n = delta_rhos.size();
        std::vector<SommerfeldResult> results(n);
        std::vector<State> state(n);
        std::size_t remaining = n;

        for (int level = 0; remaining > 0; ++level)
        {
            if ((std::int64_t(base_panels) << level) * order > cfg.max_nodes)
            {
                for (std::size_t i = 0; i < n; ++i)
                {
                    if (state[i].done)
                        continue;
                    std::ostringstream msg;
                    msg << "sommerfeld_h did not converge within " << cfg.max_nodes
                        << " contour nodes (delta_rho = " << delta_rhos[i] << " m, rz = " << rz << " m, sz = " << sz
                        << " m, last |I(2n)-I(n)| = " << state[i].last_delta << ", |I| = " << std::abs(state[i].prev)
                        << ")";
                    throw ConvergenceError(msg.str());
                }
            }

            const auto nodes = level_nodes(level);
            double max_weight = 0.0;
            for (const auto &nd : nodes)
                max_weight = std::max(max_weight, std::abs(nd.weight));
            const double max_im = cfg.tail ? 0.5 * kmin : 0.0;

            parallel_for(n, threads, [&](std::size_t i) {
                if (state[i].done)
                    return;
                const double d = delta_rhos[i];
                // |J0(z)| <= exp(|Im z|): nodes whose weight is below the cutoff cannot
                // contribute at double precision (deep evanescent band).
                const double cutoff = 1e-20 * max_weight * std::exp(-max_im * d);
                cplx sum = 0.0;
                double l1 = 0.0;
                for (const auto &nd : nodes)
                {
                    if (std::abs(nd.weight.real()) + std::abs(nd.weight.imag()) < cutoff)
                        continue;
                    const cplx v = nd.weight * bessel_j0(nd.kappa * d);
                    sum += v;
                    l1 += std::abs(v);
                }
                auto &st = state[i];
                if (level > 0)
                {
                    const double delta = std::abs(sum - st.prev);
                    if (delta <= std::max(cfg.rel_tol * std::abs(sum), 64.0 * 2.2e-16 * l1))
                    {
                        results[i] = {sum, int(nodes.size()), delta, tail_end};
                        st.done = true;
                        return;
                    }
                    st.last_delta = delta;
                }
                st.prev = sum;
            });
            remaining = 0;
            for (const auto &st : state)
                remaining += st.done ? 0 : 1;
        }
        return results;
    }

    SommerfeldResult sommerfeld_integral(double delta_rho, double rz, double sz, const KernelContext &ctx,
                                         const ContourConfig &cfg)
    {
        const double d[1] = {delta_rho};
        return sommerfeld_batch(d, rz, sz, ctx, cfg, 1).front();
    }
}
