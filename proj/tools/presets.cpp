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

#include "experiment.hpp"

#include "specmimo/constants.hpp"
#include "specmimo/error.hpp"
#include "specmimo/mimo.hpp"
#include "specmimo/raytrace_compare.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace specmimo::cli
{
    namespace
    {
        std::string num(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            return buf;
        }

        class Csv
        {
        public:
            explicit Csv(const std::vector<std::string> &header) { line(header); }

            void row(const std::vector<double> &values)
            {
                std::vector<std::string> s;
                for (double v : values)
                    s.push_back(num(v));
                line(s);
                ++rows_;
            }

            OutputFile file(std::string name) const { return {std::move(name), os_.str(), rows_}; }

        private:
            void line(const std::vector<std::string> &cells)
            {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    os_ << (i ? "," : "") << cells[i];
                os_ << '\n';
            }

            std::ostringstream os_;
            std::size_t rows_ = 0;
        };

        double wavelength(const ExperimentConfig &c) { return speed_of_light / c.scenario.frequency_hz; }

        // d(distance, SNR, tilt); without an SNR the full-rank spacing.
        double spacing(const ExperimentConfig &c, double distance, std::optional<double> snr_db, double tilt = 0.0)
        {
            SpacingQuery q;
            q.distance = distance;
            q.n_max = c.n_antennas;
            q.wavelength = wavelength(c);
            q.snr_db = snr_db;
            if (tilt != 0.0)
                q.tilt = tilt;
            return optimal_spacing(q);
        }

        // Identical x-oriented ULAs, transmitter centred at the origin.
        Scenario link(const ExperimentConfig &c, const Material &m, KernelMode mode, double d, const Point3 &r0)
        {
            Scenario s = c.scenario;
            s.material = m;
            s.mode = mode;
            s.tx = ArraySpec{c.n_antennas, d, 0.0, Point3::Zero()};
            s.rx = ArraySpec{c.n_antennas, d, 0.0, r0};
            return s;
        }

        std::vector<std::string> material_columns(const ExperimentConfig &c, const std::string &suffix)
        {
            std::vector<std::string> out;
            for (const auto &m : c.materials)
                out.push_back(m + suffix);
            return out;
        }

        std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b)
        {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }

        std::vector<double> eigen_db(const ChannelMatrix &H, double ref)
        {
            auto ev = reference_normalized_eigenvalues(H.entries, ref);
            for (double &x : ev)
                x = linear_to_db(x);
            return ev;
        }

        // Eigenvalue table: LOS at spacing dl and receiver rl, reflected channels at dr.
        // All curves share the LOS oracle as power reference.
        OutputFile eigen_table(const ExperimentConfig &c, double dl, double dr, const Point3 &r0, int threads)
        {
            const Material none = c.lookup("conductor");
            const Scenario los = link(c, none, KernelMode::LosOnly, dl, r0);
            const ChannelMatrix oracle = build_los_oracle(los);
            const double ref = oracle.entries.squaredNorm();

            std::vector<std::vector<double>> cols{eigen_db(build_exact(los, threads), ref), eigen_db(oracle, ref)};
            for (const auto &name : c.materials)
                cols.push_back(eigen_db(build_exact(link(c, c.lookup(name), KernelMode::ReflectedOnly, dr, r0), threads), ref));

            Csv csv(concat({"index", "los_exact_db", "los_oracle_db"}, material_columns(c, "_db")));
            for (std::size_t i = 0; i < cols.front().size(); ++i)
            {
                std::vector<double> row{double(i + 1)};
                for (const auto &col : cols)
                    row.push_back(col[i]);
                csv.row(row);
            }
            return csv.file(c.preset + ".csv");
        }

        // Spectral efficiency versus SNR. Spacings depend on the SNR only through
        // rho*(SNR), so channels are cached per spacing.
        template <class LosSpacing, class ReflSpacing>
        OutputFile se_table(const ExperimentConfig &c, const SweepSpec &sw, LosSpacing dl, ReflSpacing dr,
                            const Point3 &r0, int threads)
        {
            const Material none = c.lookup("conductor");
            std::map<double, std::pair<ChannelMatrix, double>> los_cache;
            std::vector<std::map<double, ChannelMatrix>> refl_cache(c.materials.size());

            Csv csv(concat({"snr_db", "bound", "los"}, c.materials));
            for (double snr_db : sw.values)
            {
                const double snr = db_to_linear(snr_db);
                const double d = dl(snr_db);
                auto it = los_cache.find(d);
                if (it == los_cache.end())
                {
                    const Scenario s = link(c, none, KernelMode::LosOnly, d, r0);
                    it = los_cache.emplace(d, std::pair{build_exact(s, threads), build_los_oracle(s).entries.squaredNorm()}).first;
                }
                const double ref = it->second.second;
                std::vector<double> row{snr_db, capacity_upper_bound(c.n_antennas, c.n_antennas, snr).bound,
                                        waterfill_capacity(reference_normalized_eigenvalues(it->second.first.entries, ref), snr).capacity};
                for (std::size_t k = 0; k < c.materials.size(); ++k)
                {
                    const double e = dr(snr_db);
                    auto jt = refl_cache[k].find(e);
                    if (jt == refl_cache[k].end())
                        jt = refl_cache[k].emplace(e, build_exact(link(c, c.lookup(c.materials[k]), KernelMode::ReflectedOnly, e, r0), threads)).first;
                    row.push_back(waterfill_capacity(reference_normalized_eigenvalues(jt->second.entries, ref), snr).capacity);
                }
                csv.row(row);
            }
            return csv.file(c.preset + ".csv");
        }

        ApertureSweep aperture_sweep(const ExperimentConfig &c, const SweepSpec &sw)
        {
            ApertureSweep a;
            a.ratios = sw.values;
            a.material = c.lookup(c.material);
            a.frequency_hz = c.scenario.frequency_hz;
            a.D = c.distance_m;
            a.D0 = c.scenario.D0;
            a.snr_db = c.snr_db;
            a.contour = c.scenario.contour;
            return a;
        }

        std::string utc_now()
        {
            const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&t, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }
    }

    std::vector<OutputFile> run_preset(const ExperimentConfig &c, int threads)
    {
        c.validate();
        const SweepSpec sw = c.resolved_sweep();
        const std::string &p = c.preset;
        const double D = c.distance_m, D0 = c.scenario.D0, De = 2.0 * D0 - D;
        const Point3 on_axis(0.0, 0.0, D);

        if (p == "fig4")
            return {eigen_table(c, spacing(c, D, {}), spacing(c, D, {}), on_axis, threads)};
        if (p == "fig6")
            return {eigen_table(c, spacing(c, D, {}), spacing(c, De, {}), on_axis, threads)};
        if (p == "fig12")
        {
            const Placement pl = make_placement(c.r0, D0);
            return {eigen_table(c, spacing(c, pl.D, {}, pl.tilt), spacing(c, pl.De, {}, pl.tilt_e), c.r0, threads)};
        }
        if (p == "fig5")
            return {se_table(c, sw, [&](double s) { return spacing(c, D, s); }, [&](double s) { return spacing(c, D, s); },
                             on_axis, threads)};
        if (p == "fig7")
            return {se_table(c, sw, [&](double s) { return spacing(c, D, s); }, [&](double s) { return spacing(c, De, s); },
                             on_axis, threads)};
        if (p == "fig13")
        {
            const Placement pl = make_placement(c.r0, D0);
            return {se_table(c, sw, [&](double s) { return spacing(c, pl.D, s, pl.tilt); },
                             [&](double s) { return spacing(c, pl.De, s, pl.tilt_e); }, c.r0, threads)};
        }
        if (p == "fig8")
        {
            Csv csv(concat({"d0_minus_d_m", "de_m", "los_db"}, material_columns(c, "_db")));
            for (double x : sw.values)
            {
                const Scenario s = link(c, c.lookup("conductor"), KernelMode::Total, 0.0, Point3(0.0, 0.0, D0 - x));
                std::vector<double> row{x, D0 + x, pathloss_los(s).db};
                for (const auto &name : c.materials)
                    row.push_back(pathloss_reflected(link(c, c.lookup(name), KernelMode::Total, 0.0, s.rx.centroid)).db);
                csv.row(row);
            }
            return {csv.file(p + ".csv")};
        }
        if (p == "fig9")
        {
            // Frozen spacing: the one optimal with the receiver at the surface (De = D0).
            const Material m = c.lookup(c.material);
            const double frozen = spacing(c, D0, {});
            Csv csv({"d0_minus_d_m", "dof_frozen", "dof_reoptimized"});
            for (double x : sw.values)
            {
                const Point3 r(0.0, 0.0, D0 - x);
                const auto a = eigenvalues(build_exact(link(c, m, KernelMode::ReflectedOnly, frozen, r), threads).entries);
                const auto b = eigenvalues(build_exact(link(c, m, KernelMode::ReflectedOnly, spacing(c, D0 + x, {}), r), threads).entries);
                csv.row({x, double(dof_count(a, c.dof_threshold_db)), double(dof_count(b, c.dof_threshold_db))});
            }
            return {csv.file(p + ".csv")};
        }
        if (p == "fig10")
        {
            Csv csv(concat({"r0x_m", "theta0_deg", "d_m", "de_m", "los_db"}, material_columns(c, "_db")));
            for (double x : sw.values)
            {
                const Point3 r(x, c.r0.y(), c.r0.z());
                const Placement pl = make_placement(r, D0);
                const Scenario s = link(c, c.lookup("conductor"), KernelMode::Total, 0.0, r);
                std::vector<double> row{x, rad_to_deg(pl.theta0), pl.D, pl.De, pathloss_los(s).db};
                for (const auto &name : c.materials)
                    row.push_back(pathloss_reflected(link(c, c.lookup(name), KernelMode::Total, 0.0, r)).db);
                csv.row(row);
            }
            return {csv.file(p + ".csv")};
        }
        if (p == "fig14")
        {
            const auto points = run_sweep(aperture_sweep(c, sw), threads);
            std::ostringstream os;
            write_sweep_csv(os, points);
            return {{p + ".csv", os.str(), points.size()}};
        }

        // custom
        const ChannelMatrix H = build_exact(c.scenario, threads);
        std::ostringstream report, matrix;
        write_report_csv_header(report);
        for (double snr_db : sw.values)
            write_report_csv_row(report, analyze(H, c.scenario, snr_db, "custom", c.dof_threshold_db));
        write_matrix_csv(matrix, H);
        return {{"custom.csv", report.str(), sw.values.size()},
                {"custom_matrix.csv", matrix.str(), std::size_t(H.n_rx())}};
    }

    RunSummary run_experiment(const ExperimentConfig &c, int threads)
    {
        const std::string started = utc_now();
        const auto t0 = std::chrono::steady_clock::now();
        RunSummary out;
        out.files = run_preset(c, threads);
        out.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::filesystem::create_directories(c.output_dir);
        for (const auto &f : out.files)
        {
            std::ofstream os(c.output_dir / f.name, std::ios::binary);
            os << f.content;
            if (!os)
                throw std::runtime_error("cannot write '" + (c.output_dir / f.name).string() + "'");
        }

        using nlohmann::ordered_json;
        const ContourConfig &cc = c.scenario.contour;
        ordered_json contour{{"kappa_min_ratio", cc.kappa_min_ratio}, {"n_nodes", cc.n_nodes},
                             {"rel_tol", cc.rel_tol},                 {"tail", cc.tail},
                             {"tail_eps", cc.tail_eps},               {"max_nodes", cc.max_nodes},
                             {"panel_order", cc.panel_order}};
        contour["kappa_maj_per_m"] = cc.kappa_maj ? ordered_json(*cc.kappa_maj) : ordered_json(nullptr);
        ordered_json materials = ordered_json::array();
        for (const auto &m : c.material_table)
            materials.push_back({{"name", m.name},
                                 {"n2_real", m.n2.real()},
                                 {"n2_imag", m.n2.imag()},
                                 {"perfect_conductor", m.perfect_conductor}});
        ordered_json files = ordered_json::array();
        for (const auto &f : out.files)
            files.push_back({{"name", f.name}, {"rows", f.rows}});
        const SweepSpec sw = c.resolved_sweep();

        ordered_json manifest{{"engine", "specmimo"},
                              {"version", engine_version},
                              {"preset", c.preset},
                              {"frequency_hz", c.scenario.frequency_hz},
                              {"d0_m", c.scenario.D0},
                              {"contour", contour},
                              {"materials", materials},
                              {"sweep", {{"variable", sw.variable}, {"values", sw.values}}},
                              {"files", files},
                              {"started_utc", started},
                              {"wall_clock_s", out.wall_clock_s}};
        std::ofstream os(c.output_dir / "manifest.json", std::ios::binary);
        os << manifest.dump(2) << '\n';
        if (!os)
            throw std::runtime_error("cannot write manifest.json");
        return out;
    }

    std::string format_material_table(const std::vector<Material> &table)
    {
        std::ostringstream os;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-16s %10s %10s %10s %18s\n", "name", "n2_real", "n2_imag", "conductor",
                      "normal_loss_db");
        os << buf;
        for (const auto &m : table)
        {
            const double loss = -20.0 * std::log10(std::abs(fresnel_angle(0.0, m))) + 0.0; // no "-0.00"
            std::snprintf(buf, sizeof buf, "%-16s %10.4f %10.4f %10s %18.2f\n", m.name.c_str(), m.n2.real(),
                          m.n2.imag(), m.perfect_conductor ? "yes" : "no", loss);
            os << buf;
        }
        return os.str();
    }

    std::vector<OracleCheck> oracle_checks(const ContourConfig &contour, int threads)
    {
        ExperimentConfig c;
        c.scenario.contour = contour;
        const Material pec = Material::conductor();
        const double D = c.distance_m, De = 2.0 * c.scenario.D0 - D;
        const Placement pl = make_placement(c.r0, c.scenario.D0);

        auto err = [&](const Scenario &s, bool image) {
            const auto Hx = build_exact(s, threads).entries;
            const auto Ho = (image ? build_image_oracle(s) : build_los_oracle(s)).entries;
            return ((Hx - Ho).cwiseAbs().array() / Ho.cwiseAbs().array()).maxCoeff();
        };
        const double tol = 1e-6;
        return {
            {"los-parallel", err(link(c, pec, KernelMode::LosOnly, spacing(c, D, {}), Point3(0, 0, D)), false), tol},
            {"image-parallel", err(link(c, pec, KernelMode::ReflectedOnly, spacing(c, De, {}), Point3(0, 0, D)), true), tol},
            {"los-oblique", err(link(c, pec, KernelMode::LosOnly, spacing(c, pl.D, {}, pl.tilt), c.r0), false), tol},
            {"image-oblique", err(link(c, pec, KernelMode::ReflectedOnly, spacing(c, pl.De, {}, pl.tilt_e), c.r0), true), tol},
        };
    }
}
