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

#ifndef SPECMIMO_TOOLS_EXPERIMENT_HPP
#define SPECMIMO_TOOLS_EXPERIMENT_HPP

#include "specmimo/channel.hpp"
#include "specmimo/materials.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specmimo::cli
{
    inline constexpr const char *engine_version = "0.1.0";

    // Presets reproducing the figure setups, plus a free-form "custom" run.
    const std::vector<std::string> &preset_names();

    struct SweepSpec
    {
        std::string variable;       // fixed by the preset
        std::vector<double> values; // evaluation points, in order
    };

    struct ExperimentConfig
    {
        std::string preset = "custom";
        Scenario scenario;           // shared link settings; arrays and mode matter for "custom" only
        double distance_m = 10.0;    // transmitter to receiver centroid along z
        int n_antennas = 8;
        double snr_db = 0.0;
        double dof_threshold_db = 40.0;
        Point3 r0{1.0, 4.0, 10.0};   // receiver centroid for the oblique presets
        std::vector<std::string> materials{"conductor", "concrete", "floorboard", "plasterboard"};
        std::string material = "concrete"; // single-material presets and "custom"
        std::vector<Material> material_table = builtin_materials();
        std::optional<SweepSpec> sweep; // preset default when empty
        std::filesystem::path output_dir = "out";

        // Defaults of a preset before any config key is applied.
        static ExperimentConfig defaults(const std::string &preset);

        Material lookup(const std::string &name) const;

        // Resolved sweep: the configured one or the preset default. Empty for
        // presets that produce a single table.
        SweepSpec resolved_sweep() const;

        void validate() const;
    };

    // TOML text to config; unknown keys and ill-typed values raise ValidationError.
    ExperimentConfig parse_config(std::string_view text, const std::string &source = "<config>");
    ExperimentConfig load_config(const std::filesystem::path &path);

    struct OutputFile
    {
        std::string name;    // relative to the output directory
        std::string content; // CSV text with a one-line header
        std::size_t rows = 0;
    };

    // Evaluates the preset. Nothing is written.
    std::vector<OutputFile> run_preset(const ExperimentConfig &cfg, int threads);

    struct RunSummary
    {
        std::vector<OutputFile> files;
        double wall_clock_s = 0.0;
    };

    // run_preset, then the files and manifest.json into cfg.output_dir.
    RunSummary run_experiment(const ExperimentConfig &cfg, int threads);

    // Table of materials, one per line.
    std::string format_material_table(const std::vector<Material> &table);

    struct OracleCheck
    {
        std::string name;
        double max_rel_err = 0.0;
        double tolerance = 0.0;
        bool pass() const { return max_rel_err <= tolerance; }
    };

    // Exact channels against the spherical-wave and image oracles.
    std::vector<OracleCheck> oracle_checks(const ContourConfig &contour, int threads);
}

#endif
