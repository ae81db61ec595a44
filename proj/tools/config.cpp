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

#include "toml.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace specmimo::cli
{
    namespace
    {
        // Sweep variable per preset; empty for single-table presets.
        std::string sweep_variable(const std::string &preset)
        {
            if (preset == "fig5" || preset == "fig7" || preset == "fig13" || preset == "custom")
                return "snr_db";
            if (preset == "fig8" || preset == "fig9")
                return "d0_minus_d_m";
            if (preset == "fig10")
                return "r0x_m";
            if (preset == "fig14")
                return "aperture_ratio";
            return {};
        }

        std::vector<double> linspace(double start, double stop, int steps)
        {
            std::vector<double> v(std::size_t(steps), start);
            for (int i = 1; i < steps; ++i)
                v[std::size_t(i)] = start + (stop - start) * double(i) / double(steps - 1);
            return v;
        }

        std::string where(const std::string &path, const toml::node &n)
        {
            const auto &src = n.source();
            std::string s = "'" + path + "'";
            if (src.begin.line)
                s += " (line " + std::to_string(src.begin.line) + ")";
            return s;
        }

        void reject_unknown(const toml::table &t, const std::string &prefix, std::initializer_list<const char *> allowed)
        {
            for (auto &&[k, v] : t)
            {
                const std::string key(k.str());
                if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; }))
                    throw ValidationError("unknown config key " + where(prefix + key, v));
            }
        }

        std::optional<double> get_number(const toml::table &t, const std::string &prefix, const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            if (!n->is_number())
                throw ValidationError("config key " + where(prefix + key, *n) + " must be a number");
            const double x = n->value<double>().value();
            if (!std::isfinite(x))
                throw ValidationError("config key " + where(prefix + key, *n) + " must be finite");
            return x;
        }

        std::optional<int> get_int(const toml::table &t, const std::string &prefix, const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            if (!n->is_integer())
                throw ValidationError("config key " + where(prefix + key, *n) + " must be an integer");
            const std::int64_t x = n->as_integer()->get();
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                throw ValidationError("config key " + where(prefix + key, *n) + " is out of range");
            return int(x);
        }

        std::optional<bool> get_bool(const toml::table &t, const std::string &prefix, const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            if (!n->is_boolean())
                throw ValidationError("config key " + where(prefix + key, *n) + " must be true or false");
            return n->as_boolean()->get();
        }

        std::optional<std::string> get_string(const toml::table &t, const std::string &prefix, const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            if (!n->is_string())
                throw ValidationError("config key " + where(prefix + key, *n) + " must be a string");
            return n->as_string()->get();
        }

        std::optional<std::vector<double>> get_numbers(const toml::table &t, const std::string &prefix,
                                                       const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            const toml::array *a = n->as_array();
            if (!a)
                throw ValidationError("config key " + where(prefix + key, *n) + " must be an array of numbers");
            std::vector<double> out;
            for (const auto &e : *a)
            {
                if (!e.is_number() || !std::isfinite(e.value<double>().value()))
                    throw ValidationError("config key " + where(prefix + key, *n) +
                                          " must be an array of finite numbers");
                out.push_back(e.value<double>().value());
            }
            return out;
        }

        std::optional<std::vector<std::string>> get_strings(const toml::table &t, const std::string &prefix,
                                                            const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return std::nullopt;
            const toml::array *a = n->as_array();
            if (!a)
                throw ValidationError("config key " + where(prefix + key, *n) + " must be an array of strings");
            std::vector<std::string> out;
            for (const auto &e : *a)
            {
                if (!e.is_string())
                    throw ValidationError("config key " + where(prefix + key, *n) + " must be an array of strings");
                out.push_back(e.as_string()->get());
            }
            return out;
        }

        std::optional<Point3> get_point(const toml::table &t, const std::string &prefix, const char *key)
        {
            auto v = get_numbers(t, prefix, key);
            if (!v)
                return std::nullopt;
            if (v->size() != 3)
                throw ValidationError("config key " + where(prefix + key, *t.get(key)) + " must have 3 entries");
            return Point3((*v)[0], (*v)[1], (*v)[2]);
        }

        const toml::table *get_table(const toml::table &t, const std::string &prefix, const char *key)
        {
            const toml::node *n = t.get(key);
            if (!n)
                return nullptr;
            if (!n->is_table())
                throw ValidationError("config key " + where(prefix + key, *n) + " must be a table");
            return n->as_table();
        }

        struct ArrayOverride
        {
            std::optional<int> n_antennas;
            std::optional<double> spacing_m;
            std::optional<double> tilt_deg;
            std::optional<Point3> centroid_m;
        };

        ArrayOverride parse_array(const toml::table &t, const std::string &prefix)
        {
            reject_unknown(t, prefix, {"n_antennas", "spacing_m", "tilt_deg", "centroid_m"});
            return {get_int(t, prefix, "n_antennas"), get_number(t, prefix, "spacing_m"),
                    get_number(t, prefix, "tilt_deg"), get_point(t, prefix, "centroid_m")};
        }

        void parse_contour(const toml::table &t, ContourConfig &c)
        {
            const std::string p = "contour.";
            reject_unknown(t, p, {"kappa_min_ratio", "n_nodes", "rel_tol", "tail", "tail_eps", "max_nodes",
                                  "panel_order", "kappa_maj_per_m"});
            if (auto x = get_number(t, p, "kappa_min_ratio"))
                c.kappa_min_ratio = *x;
            if (auto x = get_int(t, p, "n_nodes"))
                c.n_nodes = *x;
            if (auto x = get_number(t, p, "rel_tol"))
                c.rel_tol = *x;
            if (auto x = get_bool(t, p, "tail"))
                c.tail = *x;
            if (auto x = get_number(t, p, "tail_eps"))
                c.tail_eps = *x;
            if (auto x = get_int(t, p, "max_nodes"))
                c.max_nodes = *x;
            if (auto x = get_int(t, p, "panel_order"))
                c.panel_order = *x;
            if (auto x = get_number(t, p, "kappa_maj_per_m"))
                c.kappa_maj = *x;
        }

        void parse_material_table(const toml::node &n, std::vector<Material> &table)
        {
            const toml::array *a = n.as_array();
            if (!a)
                throw ValidationError("config key " + where("material_table", n) + " must be an array of tables");
            for (const auto &e : *a)
            {
                const toml::table *t = e.as_table();
                if (!t)
                    throw ValidationError("config key " + where("material_table", e) + " must be a table");
                const std::string p = "material_table.";
                reject_unknown(*t, p, {"name", "n2_real", "n2_imag", "perfect_conductor"});
                auto name = get_string(*t, p, "name");
                if (!name || name->empty())
                    throw ValidationError("material_table entry " + where("material_table", e) + " needs a name");
                if (name->find_first_of(",;\"\r\n") != std::string::npos)
                    throw ValidationError("material name '" + *name + "' must not contain separators or quotes");
                Material m;
                m.name = *name;
                m.perfect_conductor = get_bool(*t, p, "perfect_conductor").value_or(false);
                auto re = get_number(*t, p, "n2_real");
                if (!re && !m.perfect_conductor)
                    throw ValidationError("material '" + m.name + "' needs n2_real");
                m.n2 = cplx(re.value_or(1.0), get_number(*t, p, "n2_imag").value_or(0.0));
                m.validate();
                auto it = std::find_if(table.begin(), table.end(), [&](const Material &x) { return x.name == m.name; });
                if (it != table.end())
                    *it = m;
                else
                    table.push_back(m);
            }
        }
    }

    const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names{"fig4", "fig5",  "fig6",  "fig7",  "fig8", "fig9",
                                                    "fig10", "fig12", "fig13", "fig14", "custom"};
        return names;
    }

    ExperimentConfig ExperimentConfig::defaults(const std::string &preset)
    {
        const auto &names = preset_names();
        if (std::find(names.begin(), names.end(), preset) == names.end())
            throw ValidationError("unknown preset '" + preset + "'");
        ExperimentConfig c;
        c.preset = preset;
        if (preset == "fig10")
            c.r0 = Point3(0.0, 0.0, 10.0);
        if (preset == "fig14")
        {
            const ApertureSweep sw;
            c.distance_m = sw.D;
            c.scenario.D0 = sw.D0;
            c.snr_db = sw.snr_db;
            c.material = sw.material.name;
        }
        return c;
    }

    Material ExperimentConfig::lookup(const std::string &name) const
    {
        if (auto m = find_material(material_table, name))
            return *m;
        throw ValidationError("unknown material '" + name + "'");
    }

    SweepSpec ExperimentConfig::resolved_sweep() const
    {
        if (sweep)
            return *sweep;
        SweepSpec s{sweep_variable(preset), {}};
        if (preset == "fig5" || preset == "fig7" || preset == "fig13")
            s.values = linspace(-20.0, 40.0, 13);
        else if (preset == "custom")
            s.values = {snr_db};
        else if (preset == "fig8")
            s.values = linspace(0.0, scenario.D0 - 0.5, int(std::lround(2.0 * scenario.D0)));
        else if (preset == "fig9")
        {
            // The surface itself is excluded: the nearest point sits 1 cm below it.
            s.values = {0.01};
            for (int i = 1; 0.5 * i <= scenario.D0 + 1e-12; ++i)
                s.values.push_back(0.5 * i);
        }
        else if (preset == "fig10")
            s.values = linspace(0.0, 100.0, 21);
        else if (preset == "fig14")
            s.values = ApertureSweep{}.ratios;
        return s;
    }

    void ExperimentConfig::validate() const
    {
        defaults(preset);
        if (!(scenario.frequency_hz > 0.0))
            throw ValidationError("scenario.frequency_ghz must be positive");
        if (!(scenario.D0 > 0.0))
            throw ValidationError("scenario.d0_m must be positive");
        if (!(distance_m > 0.0))
            throw ValidationError("scenario.distance_m must be positive");
        if (n_antennas < 1)
            throw ValidationError("scenario.n_antennas must be at least 1");
        if (!(dof_threshold_db > 0.0))
            throw ValidationError("scenario.dof_threshold_db must be positive");
        if (output_dir.empty())
            throw ValidationError("output.directory must not be empty");
        scenario.contour.validate();
        for (const auto &m : material_table)
            m.validate();
        if (materials.empty())
            throw ValidationError("scenario.materials must not be empty");
        for (const auto &name : materials)
            lookup(name);
        lookup(material);

        const SweepSpec s = resolved_sweep();
        const std::string var = sweep_variable(preset);
        if (var.empty() && sweep)
            throw ValidationError("preset " + preset + " takes no sweep");
        if (!var.empty())
        {
            if (s.variable != var)
                throw ValidationError("preset " + preset + " sweeps '" + var + "', not '" + s.variable + "'");
            if (s.values.empty())
                throw ValidationError("sweep has no points");
        }

        const bool on_axis = preset == "fig4" || preset == "fig5" || preset == "fig6" || preset == "fig7" ||
                             preset == "fig9" || preset == "fig14";
        if (on_axis && !(distance_m < scenario.D0))
            throw ValidationError("scenario.distance_m must be below scenario.d0_m");
        if (preset == "fig8")
            for (double x : s.values)
                if (!(x >= 0.0 && x < scenario.D0))
                    throw ValidationError("fig8: d0_minus_d_m must lie in [0, d0_m)");
        if (preset == "fig9")
        {
            const double lambda = speed_of_light / scenario.frequency_hz;
            for (double x : s.values)
                if (!(x > lambda && x <= scenario.D0))
                    throw ValidationError("fig9: d0_minus_d_m must lie in (wavelength, d0_m]");
        }
        if (preset == "fig10")
            for (double x : s.values)
                if (!(x >= 0.0))
                    throw ValidationError("fig10: r0x_m must be non-negative");
        if (preset == "fig10" || preset == "fig12" || preset == "fig13")
        {
            Point3 r = r0;
            if (preset == "fig10")
                r.x() = s.values.back();
            make_placement(r, scenario.D0);
        }
        if (preset == "fig14")
        {
            ApertureSweep sw;
            sw.ratios = s.values;
            sw.frequency_hz = scenario.frequency_hz;
            sw.D = distance_m;
            sw.D0 = scenario.D0;
            sw.material = lookup(material);
            sw.contour = scenario.contour;
            sw.validate();
        }
        if (preset == "custom")
            scenario.validate();
    }

    ExperimentConfig parse_config(std::string_view text, const std::string &source)
    {
        toml::table root;
        try
        {
            root = toml::parse(text, source);
        }
        catch (const toml::parse_error &e)
        {
            std::ostringstream os;
            os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
               << e.description();
            throw ValidationError(os.str());
        }

        reject_unknown(root, "", {"preset", "scenario", "contour", "sweep", "output", "material_table"});
        const auto preset = get_string(root, "", "preset");
        if (!preset)
            throw ValidationError(source + ": missing key 'preset'");
        ExperimentConfig c = ExperimentConfig::defaults(*preset);

        if (const toml::node *n = root.get("material_table"))
            parse_material_table(*n, c.material_table);
        if (const toml::table *t = get_table(root, "", "contour"))
            parse_contour(*t, c.scenario.contour);

        std::optional<ArrayOverride> tx, rx;
        std::optional<std::string> mode;
        if (const toml::table *t = get_table(root, "", "scenario"))
        {
            const std::string p = "scenario.";
            reject_unknown(*t, p, {"frequency_ghz", "d0_m", "distance_m", "n_antennas", "snr_db", "dof_threshold_db",
                                   "r0_m", "materials", "material", "mode", "tx", "rx"});
            if (auto x = get_number(*t, p, "frequency_ghz"))
                c.scenario.frequency_hz = *x * 1e9;
            if (auto x = get_number(*t, p, "d0_m"))
                c.scenario.D0 = *x;
            if (auto x = get_number(*t, p, "distance_m"))
                c.distance_m = *x;
            if (auto x = get_int(*t, p, "n_antennas"))
                c.n_antennas = *x;
            if (auto x = get_number(*t, p, "snr_db"))
                c.snr_db = *x;
            if (auto x = get_number(*t, p, "dof_threshold_db"))
                c.dof_threshold_db = *x;
            if (auto x = get_point(*t, p, "r0_m"))
                c.r0 = *x;
            if (auto x = get_strings(*t, p, "materials"))
                c.materials = *x;
            if (auto x = get_string(*t, p, "material"))
                c.material = *x;
            mode = get_string(*t, p, "mode");
            if (const toml::table *a = get_table(*t, p, "tx"))
                tx = parse_array(*a, p + "tx.");
            if (const toml::table *a = get_table(*t, p, "rx"))
                rx = parse_array(*a, p + "rx.");
        }

        if (const toml::table *t = get_table(root, "", "sweep"))
        {
            const std::string p = "sweep.";
            reject_unknown(*t, p, {"variable", "start", "stop", "steps", "values"});
            SweepSpec s{get_string(*t, p, "variable").value_or(sweep_variable(c.preset)), {}};
            auto values = get_numbers(*t, p, "values");
            auto start = get_number(*t, p, "start");
            auto stop = get_number(*t, p, "stop");
            auto steps = get_int(*t, p, "steps");
            if (values && (start || stop || steps))
                throw ValidationError("sweep: give either 'values' or 'start', 'stop', 'steps'");
            if (values)
                s.values = *values;
            else if (start)
            {
                const int n = steps.value_or(1);
                if (n < 1)
                    throw ValidationError("sweep.steps must be at least 1");
                if (n > 1 && !stop)
                    throw ValidationError("sweep: 'stop' is required when steps > 1");
                s.values = linspace(*start, stop.value_or(*start), n);
            }
            else if (stop || steps)
                throw ValidationError("sweep: 'start' is required");
            c.sweep = s;
        }

        if (const toml::table *t = get_table(root, "", "output"))
        {
            reject_unknown(*t, "output.", {"directory"});
            if (auto x = get_string(*t, "output.", "directory"))
                c.output_dir = *x;
        }

        if (c.preset != "custom" && (tx || rx || mode))
            throw ValidationError("scenario.mode, scenario.tx and scenario.rx apply to the custom preset only");
        if (c.preset == "custom")
        {
            // Default link: broadside ULAs at Rayleigh spacing for distance_m.
            Scenario &s = c.scenario;
            s.mode = kernel_mode_from_string(mode.value_or("total"));
            s.material = c.lookup(c.material);
            const double lambda = speed_of_light / s.frequency_hz;
            const double d = std::sqrt(lambda * c.distance_m / std::max(1, c.n_antennas));
            s.tx = ArraySpec{c.n_antennas, d, 0.0, Point3::Zero()};
            s.rx = ArraySpec{c.n_antennas, d, 0.0, Point3(0.0, 0.0, c.distance_m)};
            auto apply = [](ArraySpec &a, const std::optional<ArrayOverride> &o) {
                if (!o)
                    return;
                a.n_antennas = o->n_antennas.value_or(a.n_antennas);
                a.spacing = o->spacing_m.value_or(a.spacing);
                if (o->tilt_deg)
                    a.tilt = deg_to_rad(*o->tilt_deg);
                a.centroid = o->centroid_m.value_or(a.centroid);
            };
            apply(s.tx, tx);
            apply(s.rx, rx);
        }
        return c;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ValidationError("cannot read config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str(), path.string());
    }
}
