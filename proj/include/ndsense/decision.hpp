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
#include <string>
#include <vector>

#include "ndsense/linalg.hpp"
#include "ndsense/scene.hpp"

namespace ndsense {

/// Prior-weighted states over one shared basis. A hypothesis whose prior is
/// zero may carry no state (std::nullopt); it then contributes nothing to any
/// cost.
class Ensemble {
  public:
    Ensemble(std::vector<double> priors, std::vector<std::optional<CMatrix>> states);
    Ensemble(std::vector<double> priors, const std::vector<CMatrix> &states);

    [[nodiscard]] const std::vector<double> &priors() const noexcept { return priors_; }
    [[nodiscard]] const std::vector<std::optional<CMatrix>> &states() const noexcept {
        return states_;
    }
    [[nodiscard]] std::size_t hypotheses() const noexcept { return priors_.size(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return dim_; }
    [[nodiscard]] bool present(std::size_t m) const { return states_[m].has_value(); }

  private:
    std::vector<double> priors_;
    std::vector<std::optional<CMatrix>> states_;
    Eigen::Index dim_ = 0;
};

/// Pure-state ensemble built from (possibly unnormalized) vectors; zero
/// vectors become absent states.
Ensemble pure_ensemble(std::vector<double> priors, const std::vector<CVector> &vectors);

class Povm {
  public:
    static constexpr double kCompletenessTolerance = 1e-10;

    Povm(std::vector<std::string> outcomes, std::vector<CMatrix> elements);

    [[nodiscard]] const std::vector<std::string> &outcomes() const noexcept {
        return outcomes_;
    }
    [[nodiscard]] const std::vector<CMatrix> &elements() const noexcept {
        return elements_;
    }
    [[nodiscard]] Eigen::Index dimension() const noexcept {
        return elements_.front().rows();
    }

  private:
    std::vector<std::string> outcomes_;
    std::vector<CMatrix> elements_;
};

/// Minimum error probability for two pure states with the given priors and
/// normalized overlap. |overlap| is capped at one.
[[nodiscard]] double helstrom_binary_pure(double pi1, double pi2, Complex overlap);

/// (1 - ||pi1 rho1 - pi2 rho2||_1) / 2.
[[nodiscard]] double helstrom_binary_mixed(const Ensemble &ens);

/// The Helstrom measurement: projector onto the positive eigenspace of
/// pi1 rho1 - pi2 rho2 decides "1", its complement decides "2".
[[nodiscard]] Povm helstrom_povm(const Ensemble &ens);

/// Average cost of a fixed measurement (no minimization).
[[nodiscard]] double bayes_cost(const Ensemble &ens, const Povm &povm,
                                const CostFunction &cost);

/// Square-root measurement error probability for a pure-state ensemble given
/// by its normalized Gram matrix. Upper-bounds the minimum error probability.
[[nodiscard]] double srm_error_probability(const CMatrix &gram,
                                           const std::vector<double> &priors);

/// Mixture sum_l w_l E_l of ensembles sharing M and basis.
[[nodiscard]] Ensemble mix_ensembles(const std::vector<double> &weights,
                                     const std::vector<Ensemble> &ensembles);

/// True iff every cross product of states has max |entry| < `tol`.
[[nodiscard]] bool ensembles_orthogonal(const Ensemble &a, const Ensemble &b,
                                        double tol = 1e-10);

/// Projector onto supp E, the sum of the ranges of the present states.
[[nodiscard]] CMatrix support_projector(const Ensemble &ens);

/// Assembles E_x = sum_l Pi_l E_x^(l) Pi_l from pairwise orthogonal block
/// projectors and per-block POVMs. Any part of the space outside every block
/// is added to the first outcome so the result is complete.
[[nodiscard]] Povm block_povm(const std::vector<CMatrix> &projectors,
                              const std::vector<Povm> &sub_povms);

} // namespace ndsense
