// Copyright 2026 The ndsense Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "ndsense/cli.hpp"

namespace {

void add_scene_flags(CLI::App *cmd, ndsense::cli::RunConfig &cfg) {
    cmd->add_option("--scene", cfg.scene,
                    "Scene JSON path, or built-in 'phase01pi' / 'reading'");
    cmd->add_option("--eta", cfg.eta, "Transmittance (image 1 for 'reading')")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--eta2", cfg.eta2, "Image-2 transmittance for 'reading'")
        ->check(CLI::Range(0.0, 1.0));
}

void add_output_flags(CLI::App *cmd, ndsense::cli::RunConfig &cfg) {
    cmd->add_option("--out", cfg.out, "Output file (default stdout)");
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
}

} // namespace

int main(int argc, char **argv) {
    namespace cli = ndsense::cli;
    cli::RunConfig cfg;
    CLI::App app{"Loss-aware image-sensing bounds for number-diagonal probe states"};
    app.require_subcommand(1);

    auto *bound = app.add_subcommand("bound", "NDS lower bound with oracle cross-check");
    add_scene_flags(bound, cfg);
    add_output_flags(bound, cfg);
    bound->add_option("--pmf", cfg.pmf, "Photon pmf: inline JSON or file")->required();
    bound->add_option("--tol", cfg.tol, "Cross-check tolerance");
    bound->add_option("--prune", cfg.prune, "Drop leak patterns with weight below this")
        ->check(CLI::NonNegativeNumber);

    auto *sweep = app.add_subcommand("sweep-triangle",
                                     "Peak-two phase example over the (p0, p1) triangle");
    add_scene_flags(sweep, cfg);
    add_output_flags(sweep, cfg);
    sweep->add_option("--grid-step", cfg.grid_step, "Lattice spacing (divides 1)");

    auto *verify = app.add_subcommand("verify", "Randomized property suites");
    add_output_flags(verify, cfg);
    verify->add_option("--seed", cfg.seed, "Base seed");
    verify->add_option("--trials", cfg.trials, "Trials per suite");
    verify->add_option("--tol", cfg.tol, "Override every suite tolerance");

    auto *optimize = app.add_subcommand("optimize", "Search photon pmfs under energy limits");
    add_scene_flags(optimize, cfg);
    add_output_flags(optimize, cfg);
    optimize->add_option("--grid-step", cfg.grid_step, "Lattice spacing (divides 1)");
    optimize->add_option("--peak", cfg.peak, "Peak total photon number");
    optimize->add_option("--per-mode-peak", cfg.per_mode_peak, "Peak photons per mode");
    optimize->add_option("--mean-energy", cfg.mean_energy, "Mean signal photon cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kUsageError;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return cli::run(cfg, std::cout, std::cerr);
}
