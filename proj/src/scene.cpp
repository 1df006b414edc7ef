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

#include "ndsense/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ndsense/errors.hpp"

namespace ndsense {

namespace {

constexpr double kPriorTolerance = 1e-12;

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// 0^0 = 1 so the eta endpoints stay exact.
double power(double base, int exponent) {
    return exponent == 0 ? 1.0 : std::pow(base, exponent);
}

std::vector<double> checked_priors(std::vector<double> priors) {
    double total = 0.0;
    for (double p : priors) {
        require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidInput,
                "priors must be non-negative");
        total += p;
    }
    require(std::abs(total - 1.0) <= kPriorTolerance, ErrorKind::InvalidInput,
            "priors do not sum to one");
    for (auto &p : priors) {
        p /= total;
    }
    return priors;
}

// <psi_m^(l)|psi_m^(l)> for every hypothesis m.
std::vector<double> leak_norms(const ModePattern &l, const PhotonPmf &pmf,
                               const SceneSpec &scene) {
    std::vector<double> norms(scene.hypotheses(), 0.0);
    for (const auto &e : pmf.support()) {
        if (e.p == 0.0 || !e.pattern.dominates(l)) {
            continue;
        }
        for (std::size_t m = 0; m < norms.size(); ++m) {
            norms[m] += e.p * std::norm(amplitude(m, e.pattern, l, scene));
        }
    }
    return norms;
}

} // namespace

Pixel::Pixel(double eta, double theta) : eta_(eta) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0,
            ErrorKind::InvalidInput, "transmittance must lie in [0,1]");
    require(std::isfinite(theta), ErrorKind::InvalidInput, "phase must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta_ = std::fmod(theta, two_pi);
    if (theta_ < 0.0) {
        theta_ += two_pi;
    }
    if (theta_ >= two_pi) {
        theta_ = 0.0;
    }
}

CostFunction::CostFunction(std::vector<std::string> outcomes,
                           std::vector<std::vector<double>> matrix)
    : outcomes_(std::move(outcomes)), matrix_(std::move(matrix)) {
    require(!outcomes_.empty(), ErrorKind::InvalidInput,
            "observation space must be non-empty");
    require(!matrix_.empty(), ErrorKind::InvalidInput, "cost matrix is empty");
    for (const auto &row : matrix_) {
        require(row.size() == outcomes_.size(), ErrorKind::DimensionMismatch,
                "cost row length differs from outcome count");
        for (double c : row) {
            require(std::isfinite(c), ErrorKind::InvalidInput,
                    "cost entries must be finite");
        }
    }
}

CostFunction CostFunction::error_probability(std::size_t hypotheses) {
    std::vector<std::string> outcomes;
    std::vector<std::vector<double>> matrix(hypotheses,
                                            std::vector<double>(hypotheses, 1.0));
    for (std::size_t m = 0; m < hypotheses; ++m) {
        outcomes.push_back(std::to_string(m + 1));
        matrix[m][m] = 0.0;
    }
    return CostFunction(std::move(outcomes), std::move(matrix));
}

bool CostFunction::is_error_probability() const {
    if (outcomes_.size() != matrix_.size()) {
        return false;
    }
    for (std::size_t m = 0; m < matrix_.size(); ++m) {
        for (std::size_t x = 0; x < outcomes_.size(); ++x) {
            if (matrix_[m][x] != (m == x ? 0.0 : 1.0)) {
                return false;
            }
        }
    }
    return true;
}

SceneSpec::SceneSpec(ModeLayout layout, std::vector<Image> images,
                     std::vector<double> priors, CostFunction cost)
    : layout_(std::move(layout)), images_(std::move(images)),
      priors_(checked_priors(std::move(priors))), cost_(std::move(cost)) {
    require(images_.size() >= 2, ErrorKind::InvalidInput,
            "a scene needs at least two images");
    require(priors_.size() == images_.size(), ErrorKind::DimensionMismatch,
            "one prior per image required");
    require(cost_.hypotheses() == images_.size(), ErrorKind::DimensionMismatch,
            "cost matrix needs one row per image");
    for (const auto &img : images_) {
        require(img.pixels.size() == layout_.pixels(), ErrorKind::DimensionMismatch,
                "image pixel count differs from layout");
    }
}

SceneSpec::SceneSpec(ModeLayout layout, std::vector<Image> images,
                     std::vector<double> priors)
    : SceneSpec(layout, images, priors,
                CostFunction::error_probability(images.size())) {}

bool SceneSpec::lossless() const {
    return std::all_of(images_.begin(), images_.end(), [](const Image &img) {
        return std::all_of(img.pixels.begin(), img.pixels.end(),
                           [](const Pixel &px) { return px.eta() == 1.0; });
    });
}

SceneSpec phase01pi_scene(double eta) {
    return SceneSpec(ModeLayout({1}),
                     {Image{{Pixel(eta, 0.0)}}, Image{{Pixel(eta, std::numbers::pi)}}},
                     {0.5, 0.5});
}

SceneSpec reading_scene(double eta1, double eta2) {
    return SceneSpec(ModeLayout({1}),
                     {Image{{Pixel(eta1, 0.0)}}, Image{{Pixel(eta2, 0.0)}}},
                     {0.5, 0.5});
}

std::complex<double> amplitude(std::size_t m, const ModePattern &n,
                               const ModePattern &l, const SceneSpec &scene) {
    const auto &layout = scene.layout();
    require(m < scene.hypotheses(), ErrorKind::DimensionMismatch,
            "image index out of range");
    require(n.size() == layout.modes() && l.size() == layout.modes(),
            ErrorKind::DimensionMismatch, "pattern does not match layout");
    require(n.dominates(l), ErrorKind::InvalidInput,
            "leak pattern " + l.to_string() + " exceeds " + n.to_string());

    const auto &pixels = scene.images()[m].pixels;
    double magnitude2 = 1.0;
    double phase = 0.0;
    for (std::size_t j = 0; j < n.size(); ++j) {
        const Pixel &px = pixels[layout.pixel_of_mode(j)];
        magnitude2 *= static_cast<double>(binomial(n[j], l[j])) *
                      power(px.eta(), n[j] - l[j]) * power(1.0 - px.eta(), l[j]);
        phase += px.theta() * n[j];
    }
    return std::polar(std::sqrt(magnitude2), phase);
}

double leak_weight(const ModePattern &l, const PhotonPmf &pmf,
                   const SceneSpec &scene) {
    const auto norms = leak_norms(l, pmf, scene);
    double lambda = 0.0;
    for (std::size_t m = 0; m < norms.size(); ++m) {
        lambda += scene.priors()[m] * norms[m];
    }
    return lambda;
}

std::vector<double> conditional_priors(const ModePattern &l, const PhotonPmf &pmf,
                                       const SceneSpec &scene) {
    auto weighted = leak_norms(l, pmf, scene);
    double lambda = 0.0;
    for (std::size_t m = 0; m < weighted.size(); ++m) {
        weighted[m] *= scene.priors()[m];
        lambda += weighted[m];
    }
    require(lambda > 0.0, ErrorKind::DegenerateLeakPattern,
            "leak pattern " + l.to_string() + " has zero probability");
    for (auto &w : weighted) {
        w /= lambda;
    }
    return weighted;
}

nlohmann::json scene_to_json(const SceneSpec &scene) {
    nlohmann::json images = nlohmann::json::array();
    for (const auto &img : scene.images()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto &px : img.pixels) {
            row.push_back({{"eta", px.eta()}, {"theta", px.theta()}});
        }
        images.push_back(std::move(row));
    }
    nlohmann::json matrix = nlohmann::json::array();
    const auto &cost = scene.cost();
    for (std::size_t m = 0; m < cost.hypotheses(); ++m) {
        std::vector<double> row;
        for (std::size_t x = 0; x < cost.outcomes().size(); ++x) {
            row.push_back(cost(m, x));
        }
        matrix.push_back(row);
    }
    return {{"layout", {{"modes_per_pixel", scene.layout().modes_per_pixel()}}},
            {"images", images},
            {"priors", scene.priors()},
            {"cost", {{"outcomes", cost.outcomes()}, {"matrix", matrix}}}};
}

SceneSpec scene_from_json(const nlohmann::json &j) {
    try {
        ModeLayout layout(j.at("layout").at("modes_per_pixel").get<std::vector<int>>());
        std::vector<Image> images;
        for (const auto &row : j.at("images")) {
            Image img;
            for (const auto &px : row) {
                img.pixels.emplace_back(px.at("eta").get<double>(),
                                        px.value("theta", 0.0));
            }
            images.push_back(std::move(img));
        }
        std::vector<double> priors;
        if (j.contains("priors")) {
            priors = j.at("priors").get<std::vector<double>>();
        } else {
            priors.assign(images.size(), 1.0 / static_cast<double>(images.size()));
        }
        if (!j.contains("cost")) {
            return SceneSpec(std::move(layout), std::move(images), std::move(priors));
        }
        std::vector<std::string> outcomes;
        for (const auto &x : j.at("cost").at("outcomes")) {
            outcomes.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        }
        auto matrix = j.at("cost").at("matrix").get<std::vector<std::vector<double>>>();
        return SceneSpec(std::move(layout), std::move(images), std::move(priors),
                         CostFunction(std::move(outcomes), std::move(matrix)));
    } catch (const nlohmann::json::exception &ex) {
        fail(ErrorKind::InvalidInput, std::string("malformed scene JSON: ") + ex.what());
    }
}

} // namespace ndsense
