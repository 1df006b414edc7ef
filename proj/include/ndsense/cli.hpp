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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ndsense/fock.hpp"
#include "ndsense/scene.hpp"

namespace ndsense::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsageError = 2,
};

struct RunConfig {
    std::string command;
    /// Scene file path or a built-in name: "phase01pi" (uses eta) or
    /// "reading" (uses eta and eta2).
    std::string scene = "phase01pi";
    double eta = 0.6;
    std::optional<double> eta2;
    /// Inline JSON or a path to a JSON file.
    std::optional<std::string> pmf;
    std::optional<std::string> out;
    std::string format;
    std::uint64_t seed = 1;
    double grid_step = 0.01;
    int trials = 100;
    std::optional<int> peak;
    std::optional<double> mean_energy;
    std::optional<std::vector<int>> per_mode_peak;
    /// Overrides every comparison tolerance of a command.
    std::optional<double> tol;
    double prune = 0.0;
};

SceneSpec resolve_scene(const RunConfig &config);

/// Accepts the pattern/probability array form, or a bare probability list
/// (p0, p1, ...) for single-mode layouts.
PhotonPmf parse_pmf(const std::string &text_or_path, const ModeLayout &layout);

int cmd_bound(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_sweep_triangle(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_optimize(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Dispatches on `config.command` and maps library errors onto exit codes.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

struct SuiteReport {
    std::string name;
    int passed = 0;
    int failed = 0;
    /// Inputs of the first failing trial, for replay.
    std::optional<nlohmann::json> first_failure;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int trials = 100;
    double tol = 1e-9;
    double identity_tol = 1e-12;
};

/// Randomized bound inequality, NDS equality, idler independence,
/// Gram-vs-oracle identity and block-POVM suites.
std::vector<SuiteReport> run_verification(const VerifyOptions &options);

} // namespace ndsense::cli
