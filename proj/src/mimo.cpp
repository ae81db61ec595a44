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

#include "specmimo/mimo.hpp"
#include "specmimo/error.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace specmimo
{
    std::vector<double> eigenvalues(const Eigen::MatrixXcd &H)
    {
        if (H.size() == 0)
            throw ValidationError("eigenvalues: empty matrix");
        if (!H.allFinite())
            throw ValidationError("eigenvalues: matrix has non-finite entries");
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(H);
        const auto &s = svd.singularValues();
        std::vector<double> out(std::size_t(s.size()));
        for (Eigen::Index i = 0; i < s.size(); ++i)
            out[std::size_t(i)] = s(i) * s(i);
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }

    std::vector<double> reference_normalized_eigenvalues(const Eigen::MatrixXcd &H, double reference_frobenius_sq)
    {
        if (!(reference_frobenius_sq > 0.0) || !std::isfinite(reference_frobenius_sq))
            throw ValidationError("reference_normalized_eigenvalues: reference power must be positive");
        auto ev = eigenvalues(H);
        const double scale = double(H.rows()) * double(H.cols()) / reference_frobenius_sq;
        for (auto &v : ev)
            v *= scale;
        return ev;
    }

    std::vector<double> normalized_eigenvalues(const Eigen::MatrixXcd &H)
    {
        auto ev = eigenvalues(H);
        const double total = std::accumulate(ev.begin(), ev.end(), 0.0);
        if (!(total > 0.0))
            throw ValidationError("normalized_eigenvalues: all-zero channel matrix");
        const double scale = double(H.rows()) * double(H.cols()) / total;
        for (auto &v : ev)
            v *= scale;
        return ev;
    }

    WaterfillResult waterfill_capacity(std::span<const double> eigenvalues, double snr_linear)
    {
        if (!(snr_linear > 0.0))
            throw ValidationError("waterfill_capacity: SNR must be positive");
        std::vector<std::size_t> order(eigenvalues.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });

        // Largest active set k whose water level stays above 1/lambda_k.
        std::size_t active = 0;
        double nu = 0.0, inv_sum = 0.0;
        for (std::size_t k = 0; k < order.size(); ++k)
        {
            const double lam = eigenvalues[order[k]];
            if (!(lam > 0.0))
                break;
            const double candidate_sum = inv_sum + 1.0 / lam;
            const double candidate_nu = (snr_linear + candidate_sum) / double(k + 1);
            if (!(candidate_nu > 1.0 / lam))
                break;
            inv_sum = candidate_sum;
            nu = candidate_nu;
            active = k + 1;
        }

        WaterfillResult r;
        r.powers.assign(eigenvalues.size(), 0.0);
        r.water_level = nu;
        for (std::size_t k = 0; k < active; ++k)
        {
            const double lam = eigenvalues[order[k]];
            const double p = nu - 1.0 / lam;
            r.powers[order[k]] = p;
            r.capacity += std::log2(1.0 + p * lam);
        }
        return r;
    }

    CapacityBound capacity_upper_bound(int n_rx, int n_tx, double snr_linear)
    {
        if (n_rx < 1 || n_tx < 1)
            throw ValidationError("capacity_upper_bound: array sizes must be >= 1");
        const double nn = double(n_rx) * double(n_tx);
        CapacityBound best{-1.0, 1};
        for (int rho = 1; rho <= std::min(n_rx, n_tx); ++rho)
        {
            const double c = rho * std::log2(1.0 + snr_linear * nn / (double(rho) * rho));
            // Ties (to rounding) keep the smaller rho.
            if (c > best.bound * (1.0 + 1e-12))
                best = {c, rho};
        }
        return best;
    }

    void SpacingQuery::validate() const
    {
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw ValidationError("spacing query: distance must be positive");
        if (n_max < 1)
            throw ValidationError("spacing query: Nmax must be >= 1");
        if (n_min < 0 || n_min > n_max)
            throw ValidationError("spacing query: Nmin must lie in [1, Nmax]");
        if (!(wavelength > 0.0))
            throw ValidationError("spacing query: wavelength must be positive");
        if (tilt && !(std::cos(*tilt) > 1e-12))
            throw ValidationError("spacing query: tilt must be below 90 degrees");
    }

    double optimal_spacing(const SpacingQuery &q)
    {
        q.validate();
        const int n_min = q.n_min ? q.n_min : q.n_max;
        double eta = 1.0;
        if (q.snr_db)
            eta = double(capacity_upper_bound(q.n_max, n_min, db_to_linear(*q.snr_db)).rho) / n_min;
        return std::sqrt(eta * q.wavelength * q.distance / q.n_max) / std::cos(q.tilt.value_or(0.0));
    }

    int dof_count(std::span<const double> eigenvalues, double threshold_db)
    {
        if (eigenvalues.empty())
            throw ValidationError("dof_count: empty eigenvalue list");
        const double top = *std::max_element(eigenvalues.begin(), eigenvalues.end());
        const double floor = top * std::pow(10.0, -threshold_db / 10.0);
        return int(std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double v) { return v >= floor; }));
    }

    namespace
    {
        Pathloss from_beta(double beta) { return {beta, -10.0 * std::log10(beta)}; }
    }

    Pathloss pathloss_reflected(const Scenario &scenario)
    {
        const Point3 r0 = scenario.rx.centroid - scenario.tx.centroid;
        const double D0 = scenario.D0 - scenario.tx.centroid.z();
        const double theta0 = incidence_angle(r0, D0);
        const double De = equivalent_distance(theta0, D0, r0.z());
        const double lambda = scenario.wavenumbers().wavelength;
        const double R = std::abs(fresnel_angle(theta0, scenario.material));
        const double a = lambda / (4.0 * pi * De);
        return from_beta(R * R * a * a);
    }

    Pathloss pathloss_los(const Scenario &scenario)
    {
        const double D = (scenario.rx.centroid - scenario.tx.centroid).norm();
        if (!(D > 0.0))
            throw ValidationError("pathloss_los: coincident array centroids");
        const double a = scenario.wavenumbers().wavelength / (4.0 * pi * D);
        return from_beta(a * a);
    }

    MimoReport analyze(const ChannelMatrix &H, const Scenario &scenario, double snr_db, const std::string &scenario_id,
                       double dof_threshold_db)
    {
        MimoReport r;
        r.scenario_id = scenario_id;
        r.provenance = H.provenance;
        r.eigenvalues = normalized_eigenvalues(H.entries);
        const auto wf = waterfill_capacity(r.eigenvalues, db_to_linear(snr_db));
        r.capacity_bps_hz = wf.capacity;
        r.water_level = wf.water_level;
        r.dof = dof_count(r.eigenvalues, dof_threshold_db);
        r.pathloss_db = H.provenance == Provenance::LosOracle || scenario.mode == KernelMode::LosOnly
                            ? pathloss_los(scenario).db
                            : pathloss_reflected(scenario).db;
        r.snr_db = snr_db;
        return r;
    }

    void write_report_csv_header(std::ostream &os)
    {
        os << "scenario_id,provenance,snr_db,capacity_bps_hz,water_level,dof,pathloss_db,eigenvalues\n";
    }

    void write_report_csv_row(std::ostream &os, const MimoReport &r)
    {
        char buf[64];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.16e", v);
            return std::string(buf);
        };
        os << r.scenario_id << ',' << to_string(r.provenance) << ',' << num(r.snr_db) << ',' << num(r.capacity_bps_hz)
           << ',' << num(r.water_level) << ',' << r.dof << ',' << num(r.pathloss_db) << ',';
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
            os << (i ? ";" : "") << num(r.eigenvalues[i]);
        os << '\n';
    }
}
