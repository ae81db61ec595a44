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

#ifndef SPECMIMO_MIMO_HPP
#define SPECMIMO_MIMO_HPP

#include "specmimo/channel.hpp"

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specmimo
{
    // Squared singular values of H, descending.
    std::vector<double> eigenvalues(const Eigen::MatrixXcd &H);

    // Eigenvalues of H H^H scaled to sum to Nr*Nt, descending. Throws on an all-zero matrix.
    std::vector<double> normalized_eigenvalues(const Eigen::MatrixXcd &H);
    inline std::vector<double> normalized_eigenvalues(const ChannelMatrix &H) { return normalized_eigenvalues(H.entries); }

    // Eigenvalues of H H^H scaled by Nr*Nt / ||H_ref||_F^2, so that channels sharing a
    // reference keep their relative power.
    std::vector<double> reference_normalized_eigenvalues(const Eigen::MatrixXcd &H, double reference_frobenius_sq);

    struct WaterfillResult
    {
        double capacity = 0.0;    // [bit/s/Hz]
        double water_level = 0.0; // nu
        std::vector<double> powers; // same order as the input eigenvalues
    };

    // Exact active-set solution; zero eigenvalues never receive power.
    WaterfillResult waterfill_capacity(std::span<const double> eigenvalues, double snr_linear);

    struct CapacityBound
    {
        double bound = 0.0;
        int rho = 1; // argmax, smallest on ties
    };

    CapacityBound capacity_upper_bound(int n_rx, int n_tx, double snr_linear);

    struct SpacingQuery
    {
        double distance = 0.0;   // D or De [m]
        int n_max = 1;
        int n_min = 0;           // 0: same as n_max
        double wavelength = 0.0; // [m]
        std::optional<double> snr_db;
        std::optional<double> tilt; // [rad]

        void validate() const;
    };

    // sqrt(eta * lambda * D / Nmax) / cos(tilt), eta = rho*(SNR) / Nmin or 1 without SNR.
    double optimal_spacing(const SpacingQuery &q);

    // Eigenvalues within threshold_db of the largest.
    int dof_count(std::span<const double> eigenvalues, double threshold_db = 40.0);

    struct Pathloss
    {
        double beta = 0.0; // linear power gain
        double db = 0.0;   // -10 log10(beta), positive loss
    };

    // |R(theta0)|^2 (lambda / (4 pi De))^2 between the array centroids.
    Pathloss pathloss_reflected(const Scenario &scenario);
    // (lambda / (4 pi D))^2 between the array centroids.
    Pathloss pathloss_los(const Scenario &scenario);

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

    struct MimoReport
    {
        std::string scenario_id;
        Provenance provenance = Provenance::Exact;
        std::vector<double> eigenvalues; // normalized, descending
        double capacity_bps_hz = 0.0;
        double water_level = 0.0;
        int dof = 0;
        double pathloss_db = 0.0;
        double snr_db = 0.0;
    };

    MimoReport analyze(const ChannelMatrix &H, const Scenario &scenario, double snr_db, const std::string &scenario_id,
                       double dof_threshold_db = 40.0);

    // Columns: scenario_id, provenance, snr_db, capacity, water_level, dof, pathloss_db, eigenvalues
    // (eigenvalues joined by ';').
    void write_report_csv_header(std::ostream &os);
    void write_report_csv_row(std::ostream &os, const MimoReport &r);
}

#endif
