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

#include "ndsense/random.hpp"

#include <algorithm>
#include <numbers>

namespace ndsense::rnd {

std::vector<double> random_simplex_point(std::mt19937_64 &rng, std::size_t size) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(size);
    double total = 0.0;
    do {
        total = 0.0;
        for (auto &x : p) {
            x = expo(rng);
            total += x;
        }
    } while (total == 0.0);
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

Problem random_binary_problem(std::mt19937_64 &rng, int max_photons) {
    std::uniform_int_distribution<int> layout_pick(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    const int kind = layout_pick(rng);
    ModeLayout layout = kind == 0   ? ModeLayout({1})
                        : kind == 1 ? ModeLayout({2})
                                    : ModeLayout({1, 1});

    std::vector<ModePattern> candidates;
    const ModePattern cap(std::vector<int>(layout.modes(), max_photons));
    for (const auto &n : enumerate_leak_patterns(cap)) {
        if (total_photons(n) <= max_photons) {
            candidates.push_back(n);
        }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_int_distribution<std::size_t> count(
        1, std::min<std::size_t>(4, candidates.size()));
    candidates.resize(count(rng));
    const auto probs = random_simplex_point(rng, candidates.size());
    std::vector<PmfEntry> entries;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        entries.push_back({candidates[i], probs[i]});
    }

    auto draw_eta = [&] {
        const double u = unit(rng);
        if (u < 0.05) {
            return 0.0;
        }
        if (u < 0.10) {
            return 1.0;
        }
        return unit(rng);
    };
    std::vector<Image> images(2);
    for (auto &img : images) {
        for (std::size_t p = 0; p < layout.pixels(); ++p) {
            const double eta = draw_eta();
            img.pixels.emplace_back(eta, angle(rng));
        }
    }
    return {SceneSpec(layout, std::move(images), {0.5, 0.5}),
            PhotonPmf(std::move(entries))};
}

} // namespace ndsense::rnd
