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

#include <iosfwd>
#include <vector>

#include "ndsense/fock.hpp"
#include "ndsense/linalg.hpp"
#include "ndsense/scene.hpp"

namespace ndsense {

/// Conditional sub-ensemble for one leak pattern: its weight, the posterior
/// over hypotheses, and the unnormalized Gram matrix of the conditional
/// return+idler states.
struct SubEnsembleGram {
    ModePattern leak;
    double lambda = 0.0;
    std::vector<double> cond_priors;
    CMatrix gram;

    /// G_12 / sqrt(G_11 G_22); zero when either hypothesis has no mass.
    [[nodiscard]] Complex normalized_overlap(std::size_t a = 0, std::size_t b = 1) const;
};

[[nodiscard]] SubEnsembleGram gram_for_leak(const ModePattern &leak,
                                            const PhotonPmf &pmf,
                                            const SceneSpec &scene);

/// Sub-ensembles for every leak pattern reachable from the pmf support, in
/// canonical order. Patterns with lambda < `prune_below` are dropped.
[[nodiscard]] std::vector<SubEnsembleGram>
sub_ensembles(const PhotonPmf &pmf, const SceneSpec &scene, double prune_below = 0.0);

/// sum_l G^(l)_mm for every hypothesis m; each should equal one.
[[nodiscard]] std::vector<double> gram_diagonal_mass(const PhotonPmf &pmf,
                                                     const SceneSpec &scene);

/// Minimum error probability of the number-diagonal-signal state with this
/// pmf, which lower-bounds every input state sharing it. Binary scenes only.
[[nodiscard]] double nds_bound_binary(const PhotonPmf &pmf, const SceneSpec &scene);

/// Same bound from precomputed sub-ensembles.
[[nodiscard]] double nds_bound_binary(const std::vector<SubEnsembleGram> &subs);

/// Gram matrix of a lossless scene from the pixel-aggregated photon pmf and
/// the image phase differences.
[[nodiscard]] CMatrix lossless_gram(const PhotonPmf &pmf, const SceneSpec &scene);

/// CSV dump: l, lambda, pi_1..pi_M, then Re/Im of the upper-triangle Gram
/// entries. Floats use 12 significant digits.
void write_sub_ensembles_csv(std::ostream &os, const std::vector<SubEnsembleGram> &subs,
                             std::size_t hypotheses);

} // namespace ndsense
