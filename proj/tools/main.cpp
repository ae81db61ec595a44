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

#include "specmimo/error.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

using namespace specmimo;
using namespace specmimo::cli;

namespace
{
    // --threads, then SPECMIMO_THREADS, then the hardware concurrency.
    int resolve_threads(int flag)
    {
        if (flag > 0)
            return flag;
        if (const char *env = std::getenv("SPECMIMO_THREADS"); env && *env)
        {
            char *end = nullptr;
            const long n = std::strtol(env, &end, 10);
            if (*end || n < 1 || n > 4096)
                throw ValidationError(std::string("SPECMIMO_THREADS must be a positive integer (got '") + env + "')");
            return int(n);
        }
        return int(std::max(1u, std::thread::hardware_concurrency()));
    }

    void apply_indicator(ContourConfig &c, const std::string &indicator)
    {
        if (indicator == "tail")
            c.tail = true;
        else if (indicator == "hard")
            c.tail = false;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"specmimo: exact MIMO channels for links reflected off a planar surface"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 0;
    std::string indicator;
    app.add_option("--threads", threads, "Worker threads (default: SPECMIMO_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--indicator", indicator, "Disk indicator: 'tail' keeps the evanescent band, 'hard' cuts it")
        ->check(CLI::IsMember({"hard", "tail"}));

    std::string config_path, out_dir;
    auto *run = app.add_subcommand("run", "Evaluate a config and write its data files");
    run->add_option("config", config_path, "TOML experiment config")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output.directory)");

    auto *validate = app.add_subcommand("validate", "Check a config without evaluating it");
    validate->add_option("config", config_path, "TOML experiment config")->required();

    std::string materials_config;
    auto *materials = app.add_subcommand("materials", "Material table");
    auto *list = materials->add_subcommand("list", "Print the material table");
    list->add_option("--config", materials_config, "Include the material_table entries of this config");
    materials->require_subcommand(1);

    auto *oracle = app.add_subcommand("oracle-check", "Compare exact channels with the spherical-wave and image oracles");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*run)
        {
            ExperimentConfig cfg = load_config(config_path);
            apply_indicator(cfg.scenario.contour, indicator);
            if (!out_dir.empty())
                cfg.output_dir = out_dir;
            const RunSummary s = run_experiment(cfg, resolve_threads(threads));
            for (const auto &f : s.files)
                std::cout << (cfg.output_dir / f.name).string() << " (" << f.rows << " rows)\n";
            std::cout << (cfg.output_dir / "manifest.json").string() << "\n";
            std::printf("wall clock %.2f s\n", s.wall_clock_s);
        }
        else if (*validate)
        {
            ExperimentConfig cfg = load_config(config_path);
            apply_indicator(cfg.scenario.contour, indicator);
            cfg.validate();
            const auto sw = cfg.resolved_sweep();
            std::cout << "ok: preset " << cfg.preset;
            if (!sw.variable.empty())
                std::cout << ", " << sw.values.size() << " point(s) over " << sw.variable;
            std::cout << "\n";
        }
        else if (*list)
        {
            const auto table = materials_config.empty() ? builtin_materials() : load_config(materials_config).material_table;
            std::cout << format_material_table(table);
        }
        else if (*oracle)
        {
            ContourConfig contour;
            apply_indicator(contour, indicator);
            bool ok = true;
            for (const auto &c : oracle_checks(contour, resolve_threads(threads)))
            {
                std::printf("%s %-16s max_rel_err = %.3e (tol %.1e)\n", c.pass() ? "PASS" : "FAIL", c.name.c_str(),
                            c.max_rel_err, c.tolerance);
                ok = ok && c.pass();
            }
            return ok ? 0 : 1;
        }
    }
    catch (const ValidationError &e)
    {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    catch (const GuardError &e)
    {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
