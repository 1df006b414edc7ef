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

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ndsense/fock.hpp"
#include "ndsense/scene.hpp"

namespace ndsense::opt {

/// Signal energy limits. A mean limit alone leaves the support unbounded, so
/// at least one peak cap is needed before a search can run.
struct EnergyConstraint {
    std::optional<double> mean_at_most;
    std::optional<int> peak_at_most;
    std::optional<std::vector<int>> per_mode_peak;

    static EnergyConstraint peak(int n) { return {std::nullopt, n, std::nullopt}; }

    [[nodiscard]] bool admits(const ModePattern &n) const;
    /// Support and mean-energy check of a pmf, with `tol` slack on the mean.
    [[nodiscard]] bool admits(const PhotonPmf &pmf, double tol = 1e-12) const;
};

nlohmann::json constraint_to_json(const EnergyConstraint &c);

/// Every pattern admitted by the peak caps, in canonical order.
[[nodiscard]] std::vector<ModePattern> feasible_support(const ModeLayout &layout,
                                                        const EnergyConstraint &constraint);

struct Candidate {
    PhotonPmf pmf;
    double cost;
};

struct GridResult {
    Candidate best;
    /// Every lattice point within 1e-9 of the best cost, in lattice order.
    std::vector<Candidate> ties;
    std::size_t evaluations = 0;
};

inline constexpr double kTieTolerance = 1e-9;

/// Exhaustive simplex lattice over the feasible support, minimizing the
/// binary NDS bound. Lattice order is lexicographic in the probability
/// vector (ascending), which also fixes tie order.
[[nodiscard]] GridResult grid_minimize(const SceneSpec &scene,
                                       const EnergyConstraint &constraint,
                                       double grid_step);

struct RefineOptions {
    double diameter_tolerance = 1e-10;
    double improvement_tolerance = 1e-12;
    /// Iterations over which the best cost must improve by more than
    /// `improvement_tolerance`, as a multiple of (free coordinates + 1).
    int stall_window_factor = 20;
    int max_iterations = 20000;
};

struct RefineResult {
    Candidate best;
    int iterations = 0;
};

/// Nelder-Mead descent over the free simplex coordinates starting from a
/// feasible pmf; infeasible trial points are rejected so the search shrinks
/// back inside. Never returns a cost above the start cost.
[[nodiscard]] RefineResult local_refine(const SceneSpec &scene,
                                        const EnergyConstraint &constraint,
                                        const PhotonPmf &start,
                                        const RefineOptions &options = {});

nlohmann::json candidate_to_json(const Candidate &c);

} // namespace ndsense::opt
