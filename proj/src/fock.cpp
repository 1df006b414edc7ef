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

#include "ndsense/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ndsense/errors.hpp"

namespace ndsense {

ModeLayout::ModeLayout(std::vector<int> modes_per_pixel)
    : modes_(std::move(modes_per_pixel)) {
    require(!modes_.empty(), ErrorKind::InvalidInput,
            "layout needs at least one pixel");
    for (std::size_t p = 0; p < modes_.size(); ++p) {
        require(modes_[p] >= 1, ErrorKind::InvalidInput,
                "every pixel needs at least one mode");
        for (int j = 0; j < modes_[p]; ++j) {
            pixel_index_.push_back(p);
        }
    }
    total_ = pixel_index_.size();
}

ModeLayout ModeLayout::single_mode_pixels(std::size_t pixels) {
    return ModeLayout(std::vector<int>(pixels, 1));
}

std::size_t ModeLayout::pixel_of_mode(std::size_t j) const {
    require(j < total_, ErrorKind::DimensionMismatch, "mode index out of range");
    return pixel_index_[j];
}

ModePattern::ModePattern(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        require(c >= 0, ErrorKind::InvalidInput,
                "photon counts must be non-negative");
    }
}

bool ModePattern::dominates(const ModePattern &other) const {
    require(other.size() == size(), ErrorKind::DimensionMismatch,
            "pattern lengths differ");
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        if (other.counts_[j] > counts_[j]) {
            return false;
        }
    }
    return true;
}

ModePattern ModePattern::minus(const ModePattern &other) const {
    require(dominates(other), ErrorKind::InvalidInput,
            "subtracted pattern exceeds minuend");
    std::vector<int> out(counts_);
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] -= other.counts_[j];
    }
    return ModePattern(std::move(out));
}

std::string ModePattern::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        os << (j ? "," : "") << counts_[j];
    }
    os << ')';
    return os.str();
}

int total_photons(const ModePattern &n) {
    return std::accumulate(n.counts().begin(), n.counts().end(), 0);
}

std::vector<ModePattern> enumerate_leak_patterns(const ModePattern &n) {
    // Odometer with the rightmost digit fastest yields canonical order.
    std::vector<ModePattern> out;
    std::vector<int> digits(n.size(), 0);
    while (true) {
        out.emplace_back(digits);
        std::size_t j = digits.size();
        while (j > 0) {
            --j;
            if (digits[j] < n[j]) {
                ++digits[j];
                std::fill(digits.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                          digits.end(), 0);
                break;
            }
            if (j == 0) {
                return out;
            }
        }
        if (digits.empty()) {
            return out;
        }
    }
}

std::vector<int> aggregate_by_pixel(const ModePattern &n,
                                    const ModeLayout &layout) {
    require(n.size() == layout.modes(), ErrorKind::DimensionMismatch,
            "pattern does not match layout");
    std::vector<int> totals(layout.pixels(), 0);
    for (std::size_t j = 0; j < n.size(); ++j) {
        totals[layout.pixel_of_mode(j)] += n[j];
    }
    return totals;
}

PhotonPmf::PhotonPmf(std::vector<PmfEntry> entries)
    : entries_(std::move(entries)) {
    require(!entries_.empty(), ErrorKind::InvalidInput, "pmf support is empty");
    modes_ = entries_.front().pattern.size();
    double total = 0.0;
    for (const auto &e : entries_) {
        require(e.pattern.size() == modes_, ErrorKind::DimensionMismatch,
                "pmf patterns have different mode counts");
        require(std::isfinite(e.p) && e.p >= 0.0 && e.p <= 1.0 + kNormTolerance,
                ErrorKind::InvalidInput, "pmf probabilities must lie in [0,1]");
        total += e.p;
    }
    require(std::abs(total - 1.0) <= kNormTolerance, ErrorKind::InvalidInput,
            "pmf does not sum to one");
    std::sort(entries_.begin(), entries_.end(),
              [](const PmfEntry &a, const PmfEntry &b) {
                  return a.pattern < b.pattern;
              });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        require(entries_[i - 1].pattern != entries_[i].pattern,
                ErrorKind::InvalidInput,
                "duplicate pmf pattern " + entries_[i].pattern.to_string());
    }
    for (auto &e : entries_) {
        e.p = std::min(e.p / total, 1.0);
    }
}

PhotonPmf PhotonPmf::single_mode(const std::vector<double> &probs) {
    std::vector<PmfEntry> entries;
    entries.reserve(probs.size());
    for (std::size_t n = 0; n < probs.size(); ++n) {
        entries.push_back({ModePattern{static_cast<int>(n)}, probs[n]});
    }
    return PhotonPmf(std::move(entries));
}

double PhotonPmf::probability(const ModePattern &n) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), n,
        [](const PmfEntry &e, const ModePattern &key) { return e.pattern < key; });
    return (it != entries_.end() && it->pattern == n) ? it->p : 0.0;
}

int PhotonPmf::max_photons() const {
    int best = 0;
    for (const auto &e : entries_) {
        best = std::max(best, total_photons(e.pattern));
    }
    return best;
}

double mean_energy(const PhotonPmf &pmf) {
    double acc = 0.0;
    for (const auto &e : pmf.support()) {
        acc += total_photons(e.pattern) * e.p;
    }
    return acc;
}

std::vector<ModePattern> leak_closure(const PhotonPmf &pmf) {
    std::vector<ModePattern> out;
    for (const auto &e : pmf.support()) {
        auto sub = enumerate_leak_patterns(e.pattern);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nlohmann::json pmf_to_json(const PhotonPmf &pmf) {
    auto arr = nlohmann::json::array();
    for (const auto &e : pmf.support()) {
        arr.push_back({{"pattern", e.pattern.counts()}, {"p", e.p}});
    }
    return arr;
}

PhotonPmf pmf_from_json(const nlohmann::json &j) {
    require(j.is_array(), ErrorKind::InvalidInput, "pmf JSON must be an array");
    std::vector<PmfEntry> entries;
    try {
        for (const auto &item : j) {
            entries.push_back({ModePattern(item.at("pattern").get<std::vector<int>>()),
                               item.at("p").get<double>()});
        }
    } catch (const nlohmann::json::exception &ex) {
        fail(ErrorKind::InvalidInput, std::string("malformed pmf JSON: ") + ex.what());
    }
    return PhotonPmf(std::move(entries));
}

} // namespace ndsense
