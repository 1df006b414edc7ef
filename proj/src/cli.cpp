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

#include "ndsense/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ndsense/errors.hpp"
#include "ndsense/format.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/optimizer.hpp"
#include "ndsense/oracle.hpp"
#include "ndsense/phase_example.hpp"

namespace ndsense::cli {

namespace {

using nlohmann::json;

constexpr double kCrossCheckTolerance = 1e-9;

json read_json(const std::string &text_or_path) {
    const auto first = text_or_path.find_first_not_of(" \t\r\n");
    const bool inline_json =
        first != std::string::npos && (text_or_path[first] == '[' || text_or_path[first] == '{');
    try {
        if (inline_json) {
            return json::parse(text_or_path);
        }
        std::ifstream in(text_or_path);
        require(in.good(), ErrorKind::InvalidInput, "cannot open " + text_or_path);
        return json::parse(in);
    } catch (const json::exception &ex) {
        fail(ErrorKind::InvalidInput, std::string("invalid JSON: ") + ex.what());
    }
}

// Writes to --out when given, otherwise to `out`.
template <class Emit>
void emit(const RunConfig &config, std::ostream &out, Emit &&body) {
    if (!config.out) {
        body(out);
        return;
    }
    std::ofstream file(*config.out, std::ios::binary);
    require(file.good(), ErrorKind::InvalidInput, "cannot write " + *config.out);
    body(file);
}

std::string format_or(const RunConfig &config, const std::string &fallback) {
    return config.format.empty() ? fallback : config.format;
}

} // namespace

SceneSpec resolve_scene(const RunConfig &config) {
    if (config.scene == "phase01pi") {
        return phase01pi_scene(config.eta);
    }
    if (config.scene == "reading") {
        require(config.eta2.has_value(), ErrorKind::InvalidInput,
                "the reading scene needs --eta and --eta2");
        return reading_scene(config.eta, *config.eta2);
    }
    return scene_from_json(read_json(config.scene));
}

PhotonPmf parse_pmf(const std::string &text_or_path, const ModeLayout &layout) {
    const json j = read_json(text_or_path);
    require(j.is_array() && !j.empty(), ErrorKind::InvalidInput,
            "pmf must be a non-empty JSON array");
    if (j.front().is_number()) {
        require(layout.modes() == 1, ErrorKind::InvalidInput,
                "a bare probability list needs a single-mode layout");
        return PhotonPmf::single_mode(j.get<std::vector<double>>());
    }
    PhotonPmf pmf = pmf_from_json(j);
    require(pmf.modes() == layout.modes(), ErrorKind::DimensionMismatch,
            "pmf patterns do not match the scene layout");
    return pmf;
}

int cmd_bound(const RunConfig &config, std::ostream &out, std::ostream &err) {
    require(config.pmf.has_value(), ErrorKind::InvalidInput, "bound needs --pmf");
    const SceneSpec scene = resolve_scene(config);
    require(scene.hypotheses() == 2, ErrorKind::UnsupportedArity,
            "bound needs a two-image scene");
    require(scene.cost().is_error_probability(), ErrorKind::InvalidInput,
            "bound needs the error-probability cost");
    const PhotonPmf pmf = parse_pmf(*config.pmf, scene.layout());

    const auto subs = sub_ensembles(pmf, scene, config.prune);
    const double bound = nds_bound_binary(subs);
    double pruned_mass = 0.0;
    for (const auto &s : sub_ensembles(pmf, scene)) {
        if (s.lambda < config.prune) {
            pruned_mass += s.lambda;
        }
    }
    const double oracle_value =
        oracle::oracle_min_error(oracle::make_nds_state(pmf, scene.layout()), scene);
    const double diff = std::abs(bound - oracle_value);
    const double tol = config.tol.value_or(kCrossCheckTolerance) + 0.5 * pruned_mass;
    const bool ok = diff <= tol;

    const std::string format = format_or(config, "text");
    emit(config, out, [&](std::ostream &os) {
        if (format == "json") {
            json rows = json::array();
            for (const auto &s : subs) {
                rows.push_back({{"l", s.leak.counts()},
                                {"lambda", s.lambda},
                                {"cond_priors", s.cond_priors},
                                {"abs_overlap", std::abs(s.normalized_overlap())},
                                {"gram", linalg::matrix_to_json(s.gram)}});
            }
            json report{{"nds_bound", bound},
                        {"oracle_nds_min_error", oracle_value},
                        {"cross_check", {{"ok", ok}, {"abs_diff", diff}, {"tolerance", tol}}},
                        {"prune_below", config.prune},
                        {"pruned_mass", pruned_mass},
                        {"pmf", pmf_to_json(pmf)},
                        {"sub_ensembles", rows}};
            os << report.dump(2) << '\n';
        } else if (format == "csv") {
            write_sub_ensembles_csv(os, subs, 2);
        } else {
            os << "nds_bound: " << fmt_sig(bound) << '\n'
               << "oracle_nds_min_error: " << fmt_sig(oracle_value) << '\n'
               << (ok ? "cross-check OK" : "cross-check FAILED") << " (|diff| = "
               << fmt_sig(diff, 3) << ")\n";
            if (config.prune > 0.0) {
                os << "pruned lambda < " << fmt_sig(config.prune) << " (mass "
                   << fmt_sig(pruned_mass) << ")\n";
            }
            os << "l,lambda,pi_1,pi_2,abs_overlap\n";
            for (const auto &s : subs) {
                os << s.leak.to_string() << ',' << fmt_sig(s.lambda) << ','
                   << fmt_sig(s.cond_priors[0]) << ',' << fmt_sig(s.cond_priors[1]) << ','
                   << fmt_sig(std::abs(s.normalized_overlap())) << '\n';
            }
        }
    });
    if (!ok) {
        err << "cross-check mismatch: bound " << fmt_sig(bound) << " vs oracle "
            << fmt_sig(oracle_value) << '\n';
        return kCheckFailed;
    }
    return kOk;
}

int cmd_sweep_triangle(const RunConfig &config, std::ostream &out, std::ostream &) {
    require(config.scene == "phase01pi", ErrorKind::InvalidInput,
            "sweep-triangle only runs on the phase01pi scene");
    require(format_or(config, "csv") == "csv", ErrorKind::InvalidInput,
            "sweep-triangle writes CSV only");
    emit(config, out, [&](std::ostream &os) {
        phase::write_triangle_csv(os, config.eta, config.grid_step);
    });
    return kOk;
}

int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err) {
    require(config.trials >= 0, ErrorKind::InvalidInput, "--trials must be >= 0");
    VerifyOptions options;
    options.seed = config.seed;
    options.trials = config.trials;
    if (config.tol) {
        require(*config.tol >= 0.0, ErrorKind::InvalidInput, "--tol must be >= 0");
        options.tol = *config.tol;
        options.identity_tol = *config.tol;
    }
    const auto reports = run_verification(options);
    bool all_ok = true;
    const nlohmann::json *first = nullptr;
    emit(config, out, [&](std::ostream &os) {
        for (const auto &r : reports) {
            os << std::left << std::setw(22) << r.name << " passed " << r.passed << '/'
               << (r.passed + r.failed) << '\n';
            if (r.failed > 0) {
                all_ok = false;
                if (!first) {
                    first = &*r.first_failure;
                }
            }
        }
        os << (all_ok ? "all suites passed" : "FAILURES") << '\n';
    });
    if (first) {
        err << "first counterexample (replay):\n" << first->dump(2) << '\n';
    }
    return all_ok ? kOk : kCheckFailed;
}

int cmd_optimize(const RunConfig &config, std::ostream &out, std::ostream &) {
    const auto started = std::chrono::steady_clock::now();
    const SceneSpec scene = resolve_scene(config);
    opt::EnergyConstraint constraint{config.mean_energy, config.peak, config.per_mode_peak};
    const auto grid = opt::grid_minimize(scene, constraint, config.grid_step);
    const auto refined = opt::local_refine(scene, constraint, grid.best.pmf);
    const opt::Candidate &best =
        refined.best.cost < grid.best.cost ? refined.best : grid.best;
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();

    json ties = json::array();
    for (const auto &t : grid.ties) {
        ties.push_back(opt::candidate_to_json(t));
    }
    json result{{"constraint", opt::constraint_to_json(constraint)},
                {"grid_step", config.grid_step},
                {"best", opt::candidate_to_json(best)},
                {"grid_best", opt::candidate_to_json(grid.best)},
                {"refine_iterations", refined.iterations},
                {"ties", ties},
                {"evaluations", grid.evaluations},
                {"wall_time_ms", elapsed}};
    emit(config, out, [&](std::ostream &os) { os << result.dump(2) << '\n'; });
    return kOk;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        if (config.command == "bound") {
            return cmd_bound(config, out, err);
        }
        if (config.command == "sweep-triangle") {
            return cmd_sweep_triangle(config, out, err);
        }
        if (config.command == "verify") {
            return cmd_verify(config, out, err);
        }
        if (config.command == "optimize") {
            return cmd_optimize(config, out, err);
        }
        err << "unknown command: " << config.command << '\n';
        return kUsageError;
    } catch (const Error &ex) {
        err << "error [" << to_string(ex.kind()) << "]: " << ex.what() << '\n';
        return ex.kind() == ErrorKind::VerificationFailed ? kCheckFailed : kUsageError;
    } catch (const std::exception &ex) {
        err << "internal error: " << ex.what() << '\n';
        return kCheckFailed;
    }
}

} // namespace ndsense::cli
