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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ndsense/fock.hpp"

namespace ndsense {

/// Beam-splitter parameters of one pixel: transmittance and phase shift.
/// The phase is reduced to [0, 2pi) on construction.
class Pixel {
  public:
    Pixel(double eta, double theta);

    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }

  private:
    double eta_;
    double theta_;
};

struct Image {
    std::vector<Pixel> pixels;
};

/// Dense cost matrix C(m, x) over an ordered observation space.
class CostFunction {
  public:
    CostFunction(std::vector<std::string> outcomes,
                 std::vector<std::vector<double>> matrix);

    /// C(m, x) = 1 - delta(m, x) over outcomes "1".."M".
    static CostFunction error_probability(std::size_t hypotheses);

    [[nodiscard]] const std::vector<std::string> &outcomes() const noexcept {
        return outcomes_;
    }
    [[nodiscard]] std::size_t hypotheses() const noexcept { return matrix_.size(); }
    [[nodiscard]] double operator()(std::size_t m, std::size_t x) const {
        return matrix_[m][x];
    }
    [[nodiscard]] bool is_error_probability() const;

  private:
    std::vector<std::string> outcomes_;
    std::vector<std::vector<double>> matrix_;
};

/// M images over a common pixel/mode layout, with priors and a task cost.
class SceneSpec {
  public:
    SceneSpec(ModeLayout layout, std::vector<Image> images,
              std::vector<double> priors, CostFunction cost);
    /// Error-probability cost.
    SceneSpec(ModeLayout layout, std::vector<Image> images,
              std::vector<double> priors);

    [[nodiscard]] const ModeLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const std::vector<Image> &images() const noexcept {
        return images_;
    }
    [[nodiscard]] const std::vector<double> &priors() const noexcept {
        return priors_;
    }
    [[nodiscard]] const CostFunction &cost() const noexcept { return cost_; }
    [[nodiscard]] std::size_t hypotheses() const noexcept { return images_.size(); }
    [[nodiscard]] bool lossless() const;

  private:
    ModeLayout layout_;
    std::vector<Image> images_;
    std::vector<double> priors_;
    CostFunction cost_;
};

/// Binary 0-vs-pi phase discrimination on one single-mode pixel with common
/// transmittance and equal priors.
SceneSpec phase01pi_scene(double eta);

/// Quantum-reading style scene: one single-mode pixel, zero phase, the two
/// hypotheses differ only in transmittance.
SceneSpec reading_scene(double eta1, double eta2);

/// Transition amplitude of signal pattern n when pattern l leaks to the
/// environment, for image m.
[[nodiscard]] std::complex<double> amplitude(std::size_t m, const ModePattern &n,
                                             const ModePattern &l,
                                             const SceneSpec &scene);

/// Probability that the leaked photon pattern is l.
[[nodiscard]] double leak_weight(const ModePattern &l, const PhotonPmf &pmf,
                                 const SceneSpec &scene);

/// Posterior over hypotheses given leak pattern l. Throws
/// DegenerateLeakPattern when l has zero weight.
[[nodiscard]] std::vector<double> conditional_priors(const ModePattern &l,
                                                     const PhotonPmf &pmf,
                                                     const SceneSpec &scene);

nlohmann::json scene_to_json(const SceneSpec &scene);
SceneSpec scene_from_json(const nlohmann::json &j);

} // namespace ndsense
