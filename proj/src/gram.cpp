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

#include "ndsense/gram.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "ndsense/decision.hpp"
#include "ndsense/errors.hpp"
#include "ndsense/format.hpp"

namespace ndsense {

Complex SubEnsembleGram::normalized_overlap(std::size_t a, std::size_t b) const {
    const double ga = gram(a, a).real();
    const double gb = gram(b, b).real();
    if (ga <= 0.0 || gb <= 0.0) {
        return {0.0, 0.0};
    }
    return gram(a, b) / std::sqrt(ga * gb);
}

SubEnsembleGram gram_for_leak(const ModePattern &leak, const PhotonPmf &pmf,
                              const SceneSpec &scene) {
    const std::size_t hyp = scene.hypotheses();
    const auto dim = static_cast<Eigen::Index>(hyp);
    SubEnsembleGram out{leak, 0.0, std::vector<double>(hyp, 0.0),
                        CMatrix::Zero(dim, dim)};
    CVector amps(dim);
    for (const auto &e : pmf.support()) {
        if (e.p == 0.0 || !e.pattern.dominates(leak)) {
            continue;
        }
        for (std::size_t m = 0; m < hyp; ++m) {
            amps[static_cast<Eigen::Index>(m)] = amplitude(m, e.pattern, leak, scene);
        }
        out.gram.noalias() += e.p * (amps.conjugate() * amps.transpose());
    }
    for (Eigen::Index m = 0; m < dim; ++m) {
        out.gram(m, m) = out.gram(m, m).real();
        out.cond_priors[m] = scene.priors()[m] * out.gram(m, m).real();
        out.lambda += out.cond_priors[m];
    }
    if (out.lambda > 0.0) {
        for (auto &p : out.cond_priors) {
            p /= out.lambda;
        }
    }
    return out;
}

std::vector<SubEnsembleGram> sub_ensembles(const PhotonPmf &pmf, const SceneSpec &scene,
                                           double prune_below) {
    require(pmf.modes() == scene.layout().modes(), ErrorKind::DimensionMismatch,
            "pmf patterns do not match the scene layout");
    std::vector<SubEnsembleGram> out;
    for (const auto &l : leak_closure(pmf)) {
        auto sub = gram_for_leak(l, pmf, scene);
        if (sub.lambda > 0.0 && sub.lambda >= prune_below) {
            out.push_back(std::move(sub));
        }
    }
    return out;
}

std::vector<double> gram_diagonal_mass(const PhotonPmf &pmf, const SceneSpec &scene) {
    std::vector<double> mass(scene.hypotheses(), 0.0);
    for (const auto &sub : sub_ensembles(pmf, scene)) {
        for (std::size_t m = 0; m < mass.size(); ++m) {
            const auto i = static_cast<Eigen::Index>(m);
            mass[m] += sub.gram(i, i).real();
        }
    }
    return mass;
}

double nds_bound_binary(const std::vector<SubEnsembleGram> &subs) {
    double bound = 0.0;
    for (const auto &sub : subs) {
        require(sub.cond_priors.size() == 2, ErrorKind::UnsupportedArity,
                "the binary bound needs exactly two hypotheses");
        if (sub.lambda <= 0.0) {
            continue;
        }
        bound += sub.lambda * helstrom_binary_pure(sub.cond_priors[0], sub.cond_priors[1],
                                                   sub.normalized_overlap());
    }
    return bound;
}

double nds_bound_binary(const PhotonPmf &pmf, const SceneSpec &scene) {
    require(scene.hypotheses() == 2, ErrorKind::UnsupportedArity,
            "the binary bound needs exactly two hypotheses");
    require(scene.cost().is_error_probability(), ErrorKind::InvalidInput,
            "the binary bound is defined for the error-probability cost");
    return nds_bound_binary(sub_ensembles(pmf, scene));
}

CMatrix lossless_gram(const PhotonPmf &pmf, const SceneSpec &scene) {
    require(scene.lossless(), ErrorKind::NotLossless,
            "lossless Gram requires every transmittance to equal one");
    const auto &layout = scene.layout();
    require(pmf.modes() == layout.modes(), ErrorKind::DimensionMismatch,
            "pmf patterns do not match the scene layout");

    // Only the per-pixel totals matter without loss.
    std::map<std::vector<int>, double> aggregated;
    for (const auto &e : pmf.support()) {
        aggregated[aggregate_by_pixel(e.pattern, layout)] += e.p;
    }

    const auto dim = static_cast<Eigen::Index>(scene.hypotheses());
    CMatrix g = CMatrix::Zero(dim, dim);
    const auto &images = scene.images();
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            Complex acc{0.0, 0.0};
            for (const auto &[nu, p] : aggregated) {
                double phase = 0.0;
                for (std::size_t px = 0; px < nu.size(); ++px) {
                    phase += (images[b].pixels[px].theta() - images[a].pixels[px].theta()) *
                             nu[px];
                }
                acc += p * std::polar(1.0, phase);
            }
            g(a, b) = acc;
        }
    }
    return g;
}

void write_sub_ensembles_csv(std::ostream &os, const std::vector<SubEnsembleGram> &subs,
                             std::size_t hypotheses) {
    os << "l,lambda";
    for (std::size_t m = 1; m <= hypotheses; ++m) {
        os << ",pi_" << m;
    }
    for (std::size_t a = 1; a <= hypotheses; ++a) {
        for (std::size_t b = a; b <= hypotheses; ++b) {
            os << ",G_" << a << '_' << b << "_re,G_" << a << '_' << b << "_im";
        }
    }
    os << '\n';
    for (const auto &sub : subs) {
        std::string label;
        for (std::size_t j = 0; j < sub.leak.size(); ++j) {
            label += (j ? ";" : "") + std::to_string(sub.leak[j]);
        }
        os << label << ',' << fmt_sig(sub.lambda);
        for (double p : sub.cond_priors) {
            os << ',' << fmt_sig(p);
        }
        const auto dim = static_cast<Eigen::Index>(hypotheses);
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index b = a; b < dim; ++b) {
                os << ',' << fmt_sig(sub.gram(a, b).real()) << ','
                   << fmt_sig(sub.gram(a, b).imag());
            }
        }
        os << '\n';
    }
}

} // namespace ndsense
