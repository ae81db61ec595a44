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

#include "specmimo/raytrace_compare.hpp"
#include "specmimo/error.hpp"
#include "specmimo/mimo.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace specmimo
{
    void ApertureSweep::validate() const
    {
        if (ratios.empty())
            throw ValidationError("aperture sweep: no ratios");
        for (std::size_t i = 0; i < ratios.size(); ++i)
        {
            if (!(ratios[i] > 0.0) || !std::isfinite(ratios[i]))
                throw ValidationError("aperture sweep: ratios must be positive");
            if (i && !(ratios[i] > ratios[i - 1]))
                throw ValidationError("aperture sweep: ratios must be strictly ascending");
        }
        if (!(D > 0.0) || !(D0 > D))
            throw ValidationError("aperture sweep: need 0 < D < D0");
        if (!(frequency_hz > 0.0))
            throw ValidationError("aperture sweep: frequency must be positive");
        material.validate();
        contour.validate();
    }

    int antennas_for_aperture(double aperture, double De, double wavelength, double snr_db)
    {
        int best = 1;
        for (int n = 1;; ++n)
        {
            SpacingQuery q;
            q.distance = De;
            q.n_max = n;
            q.wavelength = wavelength;
            q.snr_db = snr_db;
            if (n * optimal_spacing(q) > aperture)
                break;
            best = n;
        }
        return best;
    }

    Scenario sweep_scenario(const ApertureSweep &sweep, double ratio)
    {
        Scenario s;
        s.frequency_hz = sweep.frequency_hz;
        s.material = sweep.material;
        s.D0 = sweep.D0;
        s.mode = KernelMode::ReflectedOnly;
        s.contour = sweep.contour;

        const double De = sweep.equivalent_distance();
        const double lambda = s.wavenumbers().wavelength;
        const int n = antennas_for_aperture(ratio * De, De, lambda, sweep.snr_db);
        SpacingQuery q;
        q.distance = De;
        q.n_max = n;
        q.wavelength = lambda;
        q.snr_db = sweep.snr_db;
        s.tx.n_antennas = s.rx.n_antennas = n;
        s.tx.spacing = s.rx.spacing = optimal_spacing(q);
        s.rx.centroid = Point3(0.0, 0.0, sweep.D);
        return s;
    }

    SweepPoint run_point(const ApertureSweep &sweep, double ratio, int threads)
    {
        const Scenario s = sweep_scenario(sweep, ratio);
        SweepPoint p;
        p.ratio = ratio;
        p.n_antennas = s.tx.n_antennas;
        p.spacing = s.tx.spacing;

        ChannelMatrix exact;
        try
        {
            exact = build_exact(s, threads);
        }
        catch (const GuardError &e)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "sweep point L/De = %g: ", ratio);
            throw GuardError(buf + std::string(e.what()));
        }
        const ChannelMatrix paraxial = build_paraxial(s);

        Scenario ref = s;
        ref.material = Material::conductor();
        const double ref_power = build_image_oracle(ref).entries.squaredNorm();
        const double snr = db_to_linear(sweep.snr_db);

        p.se_exact = waterfill_capacity(reference_normalized_eigenvalues(exact.entries, ref_power), snr).capacity;
        p.se_paraxial = waterfill_capacity(reference_normalized_eigenvalues(paraxial.entries, ref_power), snr).capacity;
        p.rel_gap = std::abs(p.se_exact - p.se_paraxial) / p.se_exact;
        p.frobenius_gap = (exact.entries - paraxial.entries).norm() / exact.entries.norm();
        return p;
    }

    std::vector<SweepPoint> run_sweep(const ApertureSweep &sweep, int threads)
    {
        sweep.validate();
        std::vector<SweepPoint> out;
        out.reserve(sweep.ratios.size());
        for (double r : sweep.ratios)
            out.push_back(run_point(sweep, r, threads));
        return out;
    }

    void write_sweep_csv(std::ostream &os, const std::vector<SweepPoint> &points)
    {
        os << "ratio,n_antennas,spacing_m,se_exact,se_paraxial,rel_gap,frobenius_gap\n";
        char buf[256];
        for (const auto &p : points)
        {
            std::snprintf(buf, sizeof buf, "%.6g,%d,%.16e,%.16e,%.16e,%.16e,%.16e\n", p.ratio, p.n_antennas, p.spacing,
                          p.se_exact, p.se_paraxial, p.rel_gap, p.frobenius_gap);
            os << buf;
        }
    }
}
