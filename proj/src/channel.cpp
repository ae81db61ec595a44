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

#include "specmimo/channel.hpp"
#include "specmimo/error.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace specmimo
{
    namespace
    {
        constexpr double key_quantum = 1e-13; // [m]

        std::int64_t quantize(double x) { return std::llround(x / key_quantum); }

        void check_pair_guard(const std::vector<Point3> &rx, const std::vector<Point3> &tx, const Wavenumbers &w)
        {
            for (std::size_t m = 0; m < rx.size(); ++m)
                for (std::size_t n = 0; n < tx.size(); ++n)
                {
                    const double ratio = transverse_distance(rx[m], tx[n]) / w.wavelength;
                    if (ratio >= max_transverse_wavelengths)
                    {
                        std::ostringstream msg;
                        msg << "antenna pair (rx " << m << ", tx " << n << "): delta_rho/lambda = " << ratio
                            << " >= 3600, outside the validity range of the semi-elliptical contour";
                        throw GuardError(msg.str());
                    }
                }
        }

        void append(std::ostringstream &os, const char *key, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << key << '=' << buf << ';';
        }
    }

    KernelContext Scenario::kernel_context() const
    {
        KernelContext ctx;
        ctx.w = wavenumbers();
        ctx.material = material;
        ctx.D0 = D0;
        ctx.mode = mode;
        ctx.hard_indicator = !contour.tail;
        return ctx;
    }

    void Scenario::validate() const
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw ValidationError("scenario: frequency must be positive");
        material.validate();
        tx.validate();
        rx.validate();
        contour.validate();
        if (has_reflection(mode))
        {
            if (!(D0 > 0.0) || !std::isfinite(D0))
                throw ValidationError("scenario: D0 must be positive");
            const double lambda = wavenumbers().wavelength;
            validate_source_side(ula_positions(tx), D0, lambda, "tx");
            validate_source_side(ula_positions(rx), D0, lambda, "rx");
        }
    }

    std::uint64_t Scenario::hash() const
    {
        std::ostringstream os;
        append(os, "f", frequency_hz);
        os << "mat=" << material.name << ';' << material.perfect_conductor << ';';
        append(os, "n2r", material.n2.real());
        append(os, "n2i", material.n2.imag());
        append(os, "D0", D0);
        for (const auto *a : {&tx, &rx})
        {
            os << "n=" << a->n_antennas << ';';
            append(os, "d", a->spacing);
            append(os, "t", a->tilt);
            append(os, "cx", a->centroid.x());
            append(os, "cy", a->centroid.y());
            append(os, "cz", a->centroid.z());
        }
        os << "mode=" << to_string(mode) << ';';
        append(os, "kmr", contour.kappa_min_ratio);
        os << "nn=" << contour.n_nodes << ";tail=" << contour.tail << ';';
        append(os, "tol", contour.rel_tol);
        append(os, "teps", contour.tail_eps);
        os << "po=" << contour.panel_order << ";mx=" << contour.max_nodes << ';';
        if (contour.kappa_maj)
            append(os, "kmaj", *contour.kappa_maj);

        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : os.str())
        {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    const char *to_string(Provenance p)
    {
        switch (p)
        {
        case Provenance::Exact:
            return "exact";
        case Provenance::LosOracle:
            return "los-oracle";
        case Provenance::ImageOracle:
            return "image-oracle";
        case Provenance::Paraxial:
            return "paraxial";
        }
        return "?";
    }

    ChannelMatrix build_exact(const Scenario &scenario, int threads)
    {
        scenario.validate();
        const auto ctx = scenario.kernel_context();
        const auto rx = ula_positions(scenario.rx);
        const auto tx = ula_positions(scenario.tx);
        check_pair_guard(rx, tx, ctx.w);

        // Group entries by (rz, sz); each group is one quadrature batch.
        using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
        std::map<std::pair<std::int64_t, std::int64_t>, std::map<std::int64_t, cplx>> groups;
        std::vector<Key> entry_key(rx.size() * tx.size());
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
            {
                const Key k{quantize(rx[m].z()), quantize(tx[n].z()), quantize(transverse_distance(rx[m], tx[n]))};
                entry_key[m * tx.size() + n] = k;
                groups[{std::get<0>(k), std::get<1>(k)}][std::get<2>(k)] = 0.0;
            }

        for (auto &[zkey, values] : groups)
        {
            std::vector<double> rhos;
            rhos.reserve(values.size());
            for (const auto &kv : values)
                rhos.push_back(double(kv.first) * key_quantum);
            const auto res = sommerfeld_batch(rhos, double(zkey.first) * key_quantum,
                                              double(zkey.second) * key_quantum, ctx, scenario.contour, threads);
            std::size_t i = 0;
            for (auto &kv : values)
                kv.second = res[i++].value;
        }

        ChannelMatrix H;
        H.entries.resize(Eigen::Index(rx.size()), Eigen::Index(tx.size()));
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
            {
                const auto &k = entry_key[m * tx.size() + n];
                H.entries(Eigen::Index(m), Eigen::Index(n)) =
                    groups.at({std::get<0>(k), std::get<1>(k)}).at(std::get<2>(k));
            }
        H.provenance = Provenance::Exact;
        H.scenario_hash = scenario.hash();
        return H;
    }

    namespace
    {
        template <class Entry>
        ChannelMatrix sample(const Scenario &scenario, Provenance p, Entry &&entry)
        {
            const auto rx = ula_positions(scenario.rx);
            const auto tx = ula_positions(scenario.tx);
            ChannelMatrix H;
            H.entries.resize(Eigen::Index(rx.size()), Eigen::Index(tx.size()));
            for (std::size_t m = 0; m < rx.size(); ++m)
                for (std::size_t n = 0; n < tx.size(); ++n)
                    H.entries(Eigen::Index(m), Eigen::Index(n)) = entry(rx[m], tx[n]);
            H.provenance = p;
            H.scenario_hash = scenario.hash();
            return H;
        }
    }

    ChannelMatrix build_los_oracle(const Scenario &scenario)
    {
        scenario.validate();
        const auto w = scenario.wavenumbers();
        return sample(scenario, Provenance::LosOracle,
                      [&](const Point3 &r, const Point3 &s) { return weyl_los_closed_form(r, s, w); });
    }

    ChannelMatrix build_image_oracle(const Scenario &scenario)
    {
        scenario.validate();
        if (!scenario.material.perfect_conductor)
            throw ValidationError("build_image_oracle: the image theorem is exact only for a perfect conductor "
                                  "(use build_paraxial for other materials)");
        const auto w = scenario.wavenumbers();
        const double D0 = scenario.D0;
        return sample(scenario, Provenance::ImageOracle, [&](const Point3 &r, const Point3 &s) {
            return -weyl_los_closed_form(r, mirror_across(s, D0), w);
        });
    }

    double centroid_incidence_angle(const Scenario &scenario)
    {
        const Point3 r0 = scenario.rx.centroid - scenario.tx.centroid;
        return incidence_angle(r0, scenario.D0 - scenario.tx.centroid.z());
    }

    ChannelMatrix build_paraxial(const Scenario &scenario)
    {
        scenario.validate();
        const auto w = scenario.wavenumbers();
        const double D0 = scenario.D0;
        const cplx R0 = fresnel_angle(centroid_incidence_angle(scenario), scenario.material);
        return sample(scenario, Provenance::Paraxial, [&](const Point3 &r, const Point3 &s) {
            return R0 * weyl_los_closed_form(r, mirror_across(s, D0), w);
        });
    }

    std::string format_complex(cplx z)
    {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.16e%+.16ej", z.real(), z.imag());
        return buf;
    }

    void write_matrix_csv(std::ostream &os, const ChannelMatrix &H)
    {
        for (Eigen::Index m = 0; m < H.entries.rows(); ++m)
        {
            for (Eigen::Index n = 0; n < H.entries.cols(); ++n)
            {
                if (n)
                    os << ',';
                os << format_complex(H.entries(m, n));
            }
            os << '\n';
        }
    }

    Eigen::MatrixXcd read_matrix_csv(std::istream &is)
    {
        std::vector<std::vector<cplx>> rows;
        std::string line;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            std::vector<cplx> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
            {
                double re = 0.0, im = 0.0;
                char j = 0;
                if (std::sscanf(cell.c_str(), "%lf%lf%c", &re, &im, &j) != 3 || j != 'j')
                    throw ValidationError("read_matrix_csv: malformed entry '" + cell + "'");
                row.emplace_back(re, im);
            }
            if (!rows.empty() && row.size() != rows.front().size())
                throw ValidationError("read_matrix_csv: ragged rows");
            rows.push_back(std::move(row));
        }
        Eigen::MatrixXcd M(Eigen::Index(rows.size()), rows.empty() ? 0 : Eigen::Index(rows.front().size()));
        for (std::size_t m = 0; m < rows.size(); ++m)
            for (std::size_t n = 0; n < rows[m].size(); ++n)
                M(Eigen::Index(m), Eigen::Index(n)) = rows[m][n];
        return M;
    }
}
