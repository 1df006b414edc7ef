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

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ndsense {

/// Number of signal modes interrogating each pixel.
class ModeLayout {
  public:
    explicit ModeLayout(std::vector<int> modes_per_pixel);

    /// P pixels, one mode each.
    static ModeLayout single_mode_pixels(std::size_t pixels);

    [[nodiscard]] std::size_t pixels() const noexcept { return modes_.size(); }
    [[nodiscard]] std::size_t modes() const noexcept { return total_; }
    [[nodiscard]] const std::vector<int> &modes_per_pixel() const noexcept {
        return modes_;
    }
    /// Pixel owning mode `j` (modes are grouped by pixel in layout order).
    [[nodiscard]] std::size_t pixel_of_mode(std::size_t j) const;

    bool operator==(const ModeLayout &) const = default;

  private:
    std::vector<int> modes_;
    std::vector<std::size_t> pixel_index_;
    std::size_t total_ = 0;
};

/// Per-mode photon counts. Ordering is lexicographic with the leftmost mode
/// most significant.
class ModePattern {
  public:
    ModePattern() = default;
    explicit ModePattern(std::vector<int> counts);
    ModePattern(std::initializer_list<int> counts)
        : ModePattern(std::vector<int>(counts)) {}

    static ModePattern zeros(std::size_t modes) {
        return ModePattern(std::vector<int>(modes, 0));
    }

    [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
    [[nodiscard]] int operator[](std::size_t j) const { return counts_[j]; }
    [[nodiscard]] const std::vector<int> &counts() const noexcept {
        return counts_;
    }

    /// Componentwise `other <= *this`.
    [[nodiscard]] bool dominates(const ModePattern &other) const;
    [[nodiscard]] ModePattern minus(const ModePattern &other) const;
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const ModePattern &) const = default;
    bool operator==(const ModePattern &) const = default;

  private:
    std::vector<int> counts_;
};

[[nodiscard]] int total_photons(const ModePattern &n);

/// Every l with 0 <= l <= n componentwise, in canonical order.
[[nodiscard]] std::vector<ModePattern>
enumerate_leak_patterns(const ModePattern &n);

/// Per-pixel photon totals.
[[nodiscard]] std::vector<int> aggregate_by_pixel(const ModePattern &n,
                                                  const ModeLayout &layout);

struct PmfEntry {
    ModePattern pattern;
    double p = 0.0;
};

/// Finite-support photon-number distribution over multimode patterns.
///
/// Construction sorts the support into canonical order, rejects duplicates
/// and totals further than 1e-12 from one, and renormalizes the rest.
class PhotonPmf {
  public:
    static constexpr double kNormTolerance = 1e-12;

    explicit PhotonPmf(std::vector<PmfEntry> entries);

    /// Single-mode pmf from (p_0, p_1, ...).
    static PhotonPmf single_mode(const std::vector<double> &probs);

    [[nodiscard]] const std::vector<PmfEntry> &support() const noexcept {
        return entries_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
    /// Probability of `n`, zero when outside the support.
    [[nodiscard]] double probability(const ModePattern &n) const;
    /// Largest total photon number in the support.
    [[nodiscard]] int max_photons() const;

  private:
    std::vector<PmfEntry> entries_;
    std::size_t modes_ = 0;
};

[[nodiscard]] double mean_energy(const PhotonPmf &pmf);

/// Sorted union of the leak sub-patterns of every support pattern. The same
/// set indexes both the leak patterns and the reachable return patterns.
[[nodiscard]] std::vector<ModePattern> leak_closure(const PhotonPmf &pmf);

nlohmann::json pmf_to_json(const PhotonPmf &pmf);
PhotonPmf pmf_from_json(const nlohmann::json &j);

} // namespace ndsense
