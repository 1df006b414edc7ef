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
#include <random>

#include "ndsense/fock.hpp"
#include "ndsense/scene.hpp"

namespace ndsense::rnd {

/// A scene and a pmf drawn together so their layouts agree.
struct Problem {
    SceneSpec scene;
    PhotonPmf pmf;
};

/// Binary equal-prior scene on one or two modes (one or two pixels) with
/// random transmittances and phases, and a random pmf on patterns of at most
/// `max_photons` total photons. Transmittances occasionally land exactly on 0
/// or 1.
Problem random_binary_problem(std::mt19937_64 &rng, int max_photons = 3);

/// Dirichlet(1, ..., 1) draw.
std::vector<double> random_simplex_point(std::mt19937_64 &rng, std::size_t size);

/// Per-trial generator derived from a base seed.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

} // namespace ndsense::rnd
