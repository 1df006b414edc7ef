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

#include "ndsense/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <nlohmann/json.hpp>

#include "ndsense/errors.hpp"
#include "ndsense/gram.hpp"

namespace ndsense::opt {

namespace {

constexpr double kClip = 1e-15;

// Lattice compositions of `total` into `parts` non-negative integers, in
// ascending lexicographic order.
template <class Visit>
void for_each_composition(std::size_t parts, int total, std::vector<int> &prefix,
                          Visit &&visit) {
    if (prefix.size() + 1 == parts) {
        prefix.push_back(total);
        visit(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        prefix.push_back(k);
        for_each_composition(parts, total - k, prefix, visit);
        prefix.pop_back();
    }
}

PhotonPmf pmf_on(const std::vector<ModePattern> &support, const std::vector<double> &p) {
    std::vector<PmfEntry> entries;
    entries.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        entries.push_back({support[i], p[i]});
    }
    return PhotonPmf(std::move(entries));
}

} // namespace

bool EnergyConstraint::admits(const ModePattern &n) const {
    if (peak_at_most && total_photons(n) > *peak_at_most) {
        return false;
    }
    if (per_mode_peak) {
        if (per_mode_peak->size() != n.size()) {
            return false;
        }
        for (std::size_t j = 0; j < n.size(); ++j) {
            if (n[j] > (*per_mode_peak)[j]) {
                return false;
            }
        }
    }
    return true;
}

bool EnergyConstraint::admits(const PhotonPmf &pmf, double tol) const {
    for (const auto &e : pmf.support()) {
        if (e.p > 0.0 && !admits(e.pattern)) {
            return false;
        }
    }
    return !mean_at_most || mean_energy(pmf) <= *mean_at_most + tol;
}

nlohmann::json constraint_to_json(const EnergyConstraint &c) {
    nlohmann::json j = nlohmann::json::object();
    if (c.mean_at_most) {
        j["mean_at_most"] = *c.mean_at_most;
    }
    if (c.peak_at_most) {
        j["peak_at_most"] = *c.peak_at_most;
    }
    if (c.per_mode_peak) {
        j["per_mode_peak"] = *c.per_mode_peak;
    }
    return j;
}

std::vector<ModePattern> feasible_support(const ModeLayout &layout,
                                          const EnergyConstraint &constraint) {
    require(constraint.peak_at_most || constraint.per_mode_peak,
            ErrorKind::UnboundedSupport,
            "a mean-energy constraint needs a peak cap to bound the support");
    if (constraint.mean_at_most) {
        require(std::isfinite(*constraint.mean_at_most) && *constraint.mean_at_most >= 0.0,
                ErrorKind::InvalidInput, "mean energy cap must be finite and >= 0");
    }
    std::vector<int> caps(layout.modes(), std::numeric_limits<int>::max());
    if (constraint.peak_at_most) {
        require(*constraint.peak_at_most >= 0, ErrorKind::InvalidInput,
                "peak cap must be >= 0");
        std::fill(caps.begin(), caps.end(), *constraint.peak_at_most);
    }
    if (constraint.per_mode_peak) {
        require(constraint.per_mode_peak->size() == layout.modes(),
                ErrorKind::DimensionMismatch, "one per-mode cap per mode required");
        for (std::size_t j = 0; j < caps.size(); ++j) {
            require((*constraint.per_mode_peak)[j] >= 0, ErrorKind::InvalidInput,
                    "per-mode caps must be >= 0");
            caps[j] = std::min(caps[j], (*constraint.per_mode_peak)[j]);
        }
    }
    std::vector<ModePattern> out;
    for (const auto &n : enumerate_leak_patterns(ModePattern(caps))) {
        if (constraint.admits(n)) {
            out.push_back(n);
        }
    }
    return out;
}

GridResult grid_minimize(const SceneSpec &scene, const EnergyConstraint &constraint,
                         double grid_step) {
    require(std::isfinite(grid_step) && grid_step > 0.0 && grid_step <= 1.0,
            ErrorKind::InvalidInput, "grid step must lie in (0,1]");
    const double divisions = std::round(1.0 / grid_step);
    require(std::abs(divisions * grid_step - 1.0) <= 1e-9, ErrorKind::InvalidInput,
            "grid step must divide one");
    const auto support = feasible_support(scene.layout(), constraint);
    const int total = static_cast<int>(divisions);

    std::vector<Candidate> scored;
    std::size_t evaluations = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> prefix;
    std::vector<double> p(support.size());
    for_each_composition(support.size(), total, prefix, [&](const std::vector<int> &k) {
        for (std::size_t i = 0; i < k.size(); ++i) {
            p[i] = static_cast<double>(k[i]) / divisions;
        }
        PhotonPmf pmf = pmf_on(support, p);
        if (!constraint.admits(pmf)) {
            return;
        }
        const double cost = nds_bound_binary(pmf, scene);
        ++evaluations;
        if (cost <= best + kTieTolerance) {
            best = std::min(best, cost);
            scored.push_back({std::move(pmf), cost});
        }
    });
    require(evaluations > 0, ErrorKind::InvalidInput,
            "no lattice point satisfies the constraint");

    GridResult result{scored.front(), {}, evaluations};
    for (auto &c : scored) {
        if (c.cost <= best + kTieTolerance) {
            if (c.cost == best && result.best.cost != best) {
                result.best = c;
            }
            result.ties.push_back(std::move(c));
        }
    }
    return result;
}

RefineResult local_refine(const SceneSpec &scene, const EnergyConstraint &constraint,
                          const PhotonPmf &start, const RefineOptions &options) {
    require(constraint.admits(start), ErrorKind::InvalidInput,
            "starting pmf violates the constraint");
    const std::vector<ModePattern> support = [&] {
        std::vector<ModePattern> s;
        for (const auto &e : start.support()) {
            s.push_back(e.pattern);
        }
        return s;
    }();
    const std::size_t k = support.size();
    const double start_cost = nds_bound_binary(start, scene);
    if (k < 2) {
        return {{start, start_cost}, 0};
    }
    const std::size_t dim = k - 1;
    using Point = std::vector<double>;

    auto to_probs = [&](const Point &x) -> std::optional<std::vector<double>> {
        std::vector<double> p(k);
        double rest = 1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i] < -kClip) {
                return std::nullopt;
            }
            p[i] = std::max(x[i], 0.0);
            rest -= p[i];
        }
        if (rest < -kClip) {
            return std::nullopt;
        }
        p[dim] = std::max(rest, 0.0);
        return p;
    };
    auto evaluate = [&](const Point &x) {
        const auto p = to_probs(x);
        if (!p) {
            return std::numeric_limits<double>::infinity();
        }
        const PhotonPmf pmf = pmf_on(support, *p);
        if (!constraint.admits(pmf)) {
            return std::numeric_limits<double>::infinity();
        }
        return nds_bound_binary(pmf, scene);
    };

    // Initial simplex: step a tenth of the way toward each simplex vertex,
    // skipping the vertex carrying the most mass.
    Point x0(dim);
    std::vector<double> p0(k);
    for (std::size_t i = 0; i < k; ++i) {
        p0[i] = start.support()[i].p;
        if (i < dim) {
            x0[i] = p0[i];
        }
    }
    const auto heaviest =
        static_cast<std::size_t>(std::max_element(p0.begin(), p0.end()) - p0.begin());
    std::vector<Point> verts{x0};
    std::vector<double> vals{start_cost};
    for (std::size_t v = 0; v < k; ++v) {
        if (v == heaviest) {
            continue;
        }
        Point target(dim, 0.0);
        if (v < dim) {
            target[v] = 1.0;
        }
        double t = 0.1;
        Point x(dim);
        double fx = std::numeric_limits<double>::infinity();
        for (int attempt = 0; attempt < 40 && !std::isfinite(fx); ++attempt, t *= 0.5) {
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = x0[i] + t * (target[i] - x0[i]);
            }
            fx = evaluate(x);
        }
        if (!std::isfinite(fx)) {
            x = x0;
            fx = start_cost;
        }
        verts.push_back(x);
        vals.push_back(fx);
    }

    std::deque<double> history;
    const auto window = static_cast<std::size_t>(options.stall_window_factor) * (dim + 1);
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::vector<std::size_t> order(verts.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t ib = order.front();
        const std::size_t iw = order.back();
        const std::size_t isw = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto &v : verts) {
            for (std::size_t i = 0; i < dim; ++i) {
                diameter = std::max(diameter, std::abs(v[i] - verts[ib][i]));
            }
        }
        if (diameter < options.diameter_tolerance) {
            break;
        }
        history.push_back(vals[ib]);
        if (history.size() > window) {
            history.pop_front();
            if (history.front() - history.back() <= options.improvement_tolerance) {
                break;
            }
        }

        Point centroid(dim, 0.0);
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (v == iw) {
                continue;
            }
            for (std::size_t i = 0; i < dim; ++i) {
                centroid[i] += verts[v][i] / static_cast<double>(dim);
            }
        }
        auto along = [&](double coeff) {
            Point x(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = centroid[i] + coeff * (verts[iw][i] - centroid[i]);
            }
            return x;
        };

        const Point xr = along(-1.0);
        const double fr = evaluate(xr);
        if (fr < vals[ib]) {
            const Point xe = along(-2.0);
            const double fe = evaluate(xe);
            if (fe < fr) {
                verts[iw] = xe;
                vals[iw] = fe;
            } else {
                verts[iw] = xr;
                vals[iw] = fr;
            }
            continue;
        }
        if (fr < vals[isw]) {
            verts[iw] = xr;
            vals[iw] = fr;
            continue;
        }
        const bool outside = fr < vals[iw];
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = evaluate(xc);
        if (fc < (outside ? fr : vals[iw])) {
            verts[iw] = xc;
            vals[iw] = fc;
            continue;
        }
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (v == ib) {
                continue;
            }
            for (std::size_t i = 0; i < dim; ++i) {
                verts[v][i] = verts[ib][i] + 0.5 * (verts[v][i] - verts[ib][i]);
            }
            vals[v] = evaluate(verts[v]);
        }
    }

    const auto ib = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) -
                                             vals.begin());
    if (!(vals[ib] < start_cost)) {
        return {{start, start_cost}, iter};
    }
    return {{pmf_on(support, *to_probs(verts[ib])), vals[ib]}, iter};
}

nlohmann::json candidate_to_json(const Candidate &c) {
    return {{"pmf", pmf_to_json(c.pmf)}, {"cost", c.cost}};
}

} // namespace ndsense::opt
