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

#include "ndsense/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ndsense/decision.hpp"
#include "ndsense/errors.hpp"

namespace ndsense::oracle {

namespace {

constexpr double kUnitTolerance = 1e-12;

struct ReturnSpace {
    std::vector<ModePattern> patterns;
    Eigen::Index idler_dim;

    [[nodiscard]] Eigen::Index size() const {
        return idler_dim * static_cast<Eigen::Index>(patterns.size());
    }
    [[nodiscard]] Eigen::Index index(Eigen::Index idler, const ModePattern &r) const {
        auto it = std::lower_bound(patterns.begin(), patterns.end(), r);
        return idler * static_cast<Eigen::Index>(patterns.size()) +
               static_cast<Eigen::Index>(it - patterns.begin());
    }
};

ReturnSpace return_space(const PureInputState &state) {
    return {leak_closure(state.pmf()), state.idler_dimension()};
}

} // namespace

PureInputState::PureInputState(ModeLayout layout, std::vector<SignalTerm> terms)
    : layout_(std::move(layout)), terms_(std::move(terms)) {
    require(!terms_.empty(), ErrorKind::InvalidInput, "input state has no terms");
    std::sort(terms_.begin(), terms_.end(),
              [](const SignalTerm &a, const SignalTerm &b) { return a.pattern < b.pattern; });
    idler_dim_ = terms_.front().idler.size();
    require(idler_dim_ >= 1, ErrorKind::InvalidInput, "idler dimension must be >= 1");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &t = terms_[i];
        require(t.pattern.size() == layout_.modes(), ErrorKind::DimensionMismatch,
                "signal pattern does not match layout");
        require(i == 0 || terms_[i - 1].pattern != t.pattern, ErrorKind::InvalidInput,
                "duplicate signal pattern " + t.pattern.to_string());
        require(t.idler.size() == idler_dim_, ErrorKind::DimensionMismatch,
                "idler vectors differ in dimension");
        require(std::abs(t.idler.norm() - 1.0) <= kUnitTolerance, ErrorKind::InvalidInput,
                "idler vectors must be normalized");
        norm2 += std::norm(t.amplitude);
    }
    require(std::abs(norm2 - 1.0) <= kUnitTolerance, ErrorKind::InvalidInput,
            "signal amplitudes are not normalized");
}

PhotonPmf PureInputState::pmf() const {
    std::vector<PmfEntry> entries;
    entries.reserve(terms_.size());
    for (const auto &t : terms_) {
        entries.push_back({t.pattern, std::norm(t.amplitude)});
    }
    return PhotonPmf(std::move(entries));
}

PureInputState make_nds_state(const PhotonPmf &pmf, const ModeLayout &layout) {
    const auto dim = static_cast<Eigen::Index>(pmf.size());
    std::vector<SignalTerm> terms;
    Eigen::Index k = 0;
    for (const auto &e : pmf.support()) {
        terms.push_back({e.pattern, Complex(std::sqrt(e.p), 0.0), CVector::Unit(dim, k++)});
    }
    return PureInputState(layout, std::move(terms));
}

PureInputState make_nds_state(const PhotonPmf &pmf) {
    return make_nds_state(pmf, ModeLayout::single_mode_pixels(pmf.modes()));
}

PureInputState make_signal_only_state(const PhotonPmf &pmf, const ModeLayout &layout) {
    std::vector<SignalTerm> terms;
    for (const auto &e : pmf.support()) {
        terms.push_back({e.pattern, Complex(std::sqrt(e.p), 0.0), CVector::Ones(1)});
    }
    return PureInputState(layout, std::move(terms));
}

PureInputState random_input(std::uint64_t seed, const PhotonPmf &pmf,
                            const ModeLayout &layout, Eigen::Index idler_dim) {
    require(idler_dim >= 1, ErrorKind::InvalidInput, "idler dimension must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<SignalTerm> terms;
    for (const auto &e : pmf.support()) {
        CVector idler(idler_dim);
        do {
            for (Eigen::Index k = 0; k < idler_dim; ++k) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                idler[k] = Complex(re, im);
            }
        } while (idler.norm() == 0.0);
        idler.normalize();
        terms.push_back({e.pattern, std::polar(std::sqrt(e.p), phase(rng)), idler});
    }
    return PureInputState(layout, std::move(terms));
}

Propagation propagate(const PureInputState &state, std::size_t image,
                      const SceneSpec &scene) {
    require(state.layout() == scene.layout(), ErrorKind::DimensionMismatch,
            "input state layout differs from the scene layout");
    const ReturnSpace space = return_space(state);

    Propagation out;
    out.state.basis.reserve(static_cast<std::size_t>(space.size()));
    for (Eigen::Index d = 0; d < space.idler_dim; ++d) {
        for (const auto &r : space.patterns) {
            out.state.basis.push_back({d, r});
        }
    }
    out.state.rho = CMatrix::Zero(space.size(), space.size());

    for (const auto &l : space.patterns) {
        CVector psi = CVector::Zero(space.size());
        for (const auto &t : state.terms()) {
            if (!t.pattern.dominates(l)) {
                continue;
            }
            const Complex coeff = t.amplitude * amplitude(image, t.pattern, l, scene);
            const ModePattern r = t.pattern.minus(l);
            for (Eigen::Index d = 0; d < space.idler_dim; ++d) {
                psi[space.index(d, r)] += coeff * t.idler[d];
            }
        }
        out.state.rho.noalias() += psi * psi.adjoint();
        out.by_leak.emplace(l, std::move(psi));
    }
    return out;
}

double oracle_min_error(const PureInputState &state, const SceneSpec &scene) {
    require(scene.hypotheses() == 2, ErrorKind::UnsupportedArity,
            "oracle Helstrom needs exactly two hypotheses");
    std::vector<CMatrix> states;
    for (std::size_t m = 0; m < 2; ++m) {
        states.push_back(linalg::hermitian_part(propagate(state, m, scene).state.rho));
    }
    return helstrom_binary_mixed(Ensemble(scene.priors(), states));
}

OracleSubEnsembles sub_ensemble_vectors(const PureInputState &state,
                                        const SceneSpec &scene) {
    const std::size_t hyp = scene.hypotheses();
    std::vector<Propagation> props;
    for (std::size_t m = 0; m < hyp; ++m) {
        props.push_back(propagate(state, m, scene));
    }

    OracleSubEnsembles out;
    const auto dim = static_cast<Eigen::Index>(hyp);
    for (const auto &[l, unused] : props.front().by_leak) {
        SubEnsembleGram sub{l, 0.0, std::vector<double>(hyp, 0.0), CMatrix(dim, dim)};
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index b = 0; b < dim; ++b) {
                sub.gram(a, b) = props[a].by_leak.at(l).dot(props[b].by_leak.at(l));
            }
            sub.cond_priors[a] = scene.priors()[a] * sub.gram(a, a).real();
            sub.lambda += sub.cond_priors[a];
        }
        if (sub.lambda > 0.0) {
            for (auto &p : sub.cond_priors) {
                p /= sub.lambda;
            }
        }
        out.grams.push_back(std::move(sub));
    }

    for (const auto &[l1, unused1] : props.front().by_leak) {
        for (const auto &[l2, unused2] : props.front().by_leak) {
            if (l1 == l2) {
                continue;
            }
            for (std::size_t a = 0; a < hyp; ++a) {
                for (std::size_t b = 0; b < hyp; ++b) {
                    const double ov =
                        std::abs(props[a].by_leak.at(l1).dot(props[b].by_leak.at(l2)));
                    out.max_cross_overlap = std::max(out.max_cross_overlap, ov);
                }
            }
        }
    }
    return out;
}

} // namespace ndsense::oracle
