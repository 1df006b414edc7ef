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

#include "ndsense/decision.hpp"

#include <algorithm>
#include <cmath>

#include "ndsense/errors.hpp"

namespace ndsense {

namespace {

constexpr double kPriorTolerance = 1e-12;
constexpr double kStateTolerance = 1e-10;
constexpr double kProjectorTolerance = 1e-10;

void check_probability_vector(const std::vector<double> &p, const char *what) {
    double total = 0.0;
    for (double x : p) {
        require(std::isfinite(x) && x >= 0.0, ErrorKind::InvalidInput,
                std::string(what) + " must be non-negative");
        total += x;
    }
    require(std::abs(total - 1.0) <= kPriorTolerance, ErrorKind::InvalidInput,
            std::string(what) + " must sum to one");
}

} // namespace

Ensemble::Ensemble(std::vector<double> priors, std::vector<std::optional<CMatrix>> states)
    : priors_(std::move(priors)), states_(std::move(states)) {
    require(priors_.size() == states_.size(), ErrorKind::DimensionMismatch,
            "one state per prior required");
    require(!priors_.empty(), ErrorKind::InvalidInput, "ensemble is empty");
    check_probability_vector(priors_, "ensemble priors");
    dim_ = -1;
    for (std::size_t m = 0; m < states_.size(); ++m) {
        if (!states_[m]) {
            require(priors_[m] == 0.0, ErrorKind::InvalidInput,
                    "absent state must have zero prior");
            continue;
        }
        const CMatrix &rho = *states_[m];
        require(rho.rows() == rho.cols(), ErrorKind::DimensionMismatch,
                "state is not square");
        require(dim_ < 0 || rho.rows() == dim_, ErrorKind::DimensionMismatch,
                "states live in different spaces");
        dim_ = rho.rows();
        require(linalg::is_hermitian(rho, kStateTolerance), ErrorKind::InvalidInput,
                "state is not Hermitian");
        require(std::abs(rho.trace() - Complex(1.0)) <= kStateTolerance,
                ErrorKind::InvalidInput, "state trace differs from one");
        require(linalg::is_psd(rho, kStateTolerance),
                ErrorKind::NotPositiveSemidefinite, "state is not PSD");
    }
    require(dim_ > 0, ErrorKind::InvalidInput, "ensemble has no states");
}

Ensemble::Ensemble(std::vector<double> priors, const std::vector<CMatrix> &states)
    : Ensemble(std::move(priors),
               std::vector<std::optional<CMatrix>>(states.begin(), states.end())) {}

Ensemble pure_ensemble(std::vector<double> priors, const std::vector<CVector> &vectors) {
    std::vector<std::optional<CMatrix>> states;
    for (const auto &v : vectors) {
        const double n2 = v.squaredNorm();
        if (n2 == 0.0) {
            states.emplace_back(std::nullopt);
        } else {
            states.emplace_back(CMatrix(v * v.adjoint() / n2));
        }
    }
    return Ensemble(std::move(priors), std::move(states));
}

Povm::Povm(std::vector<std::string> outcomes, std::vector<CMatrix> elements)
    : outcomes_(std::move(outcomes)), elements_(std::move(elements)) {
    require(!elements_.empty(), ErrorKind::InvalidInput, "POVM has no elements");
    require(outcomes_.size() == elements_.size(), ErrorKind::DimensionMismatch,
            "one outcome label per POVM element required");
    const Eigen::Index dim = elements_.front().rows();
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const auto &e : elements_) {
        require(e.rows() == dim && e.cols() == dim, ErrorKind::DimensionMismatch,
                "POVM elements differ in dimension");
        require(linalg::is_hermitian(e, kCompletenessTolerance),
                ErrorKind::InvalidInput, "POVM element is not Hermitian");
        require(linalg::is_psd(e, kCompletenessTolerance),
                ErrorKind::NotPositiveSemidefinite, "POVM element is not PSD");
        total += e;
    }
    require(linalg::max_abs_entry(total - CMatrix::Identity(dim, dim)) <=
                kCompletenessTolerance,
            ErrorKind::InvalidInput, "POVM elements do not sum to identity");
}

double helstrom_binary_pure(double pi1, double pi2, Complex overlap) {
    const double g = std::min(std::abs(overlap), 1.0);
    // Same as 1 - 4 pi1 pi2 g^2 when pi1 + pi2 = 1, without cancellation near g = 1.
    const double disc = std::max(
        (pi1 - pi2) * (pi1 - pi2) + 4.0 * pi1 * pi2 * (1.0 - g) * (1.0 + g), 0.0);
    return 0.5 * (1.0 - std::sqrt(disc));
}

namespace {

CMatrix weighted_difference(const Ensemble &ens) {
    require(ens.hypotheses() == 2, ErrorKind::UnsupportedArity,
            "binary Helstrom needs exactly two hypotheses");
    CMatrix diff = CMatrix::Zero(ens.dimension(), ens.dimension());
    if (ens.present(0)) {
        diff += ens.priors()[0] * *ens.states()[0];
    }
    if (ens.present(1)) {
        diff -= ens.priors()[1] * *ens.states()[1];
    }
    return diff;
}

} // namespace

double helstrom_binary_mixed(const Ensemble &ens) {
    return 0.5 * (1.0 - linalg::trace_norm(weighted_difference(ens)));
}

Povm helstrom_povm(const Ensemble &ens) {
    const CMatrix diff = linalg::hermitian_part(weighted_difference(ens));
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff);
    const Eigen::Index dim = diff.rows();
    CMatrix decide1 = CMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (solver.eigenvalues()[k] > 0.0) {
            decide1 += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
        }
    }
    CMatrix decide2 = CMatrix::Identity(dim, dim) - decide1;
    return Povm({"1", "2"}, {linalg::hermitian_part(decide1),
                             linalg::hermitian_part(decide2)});
}

double bayes_cost(const Ensemble &ens, const Povm &povm, const CostFunction &cost) {
    require(povm.dimension() == ens.dimension(), ErrorKind::DimensionMismatch,
            "POVM and ensemble dimensions differ");
    require(cost.hypotheses() == ens.hypotheses(), ErrorKind::DimensionMismatch,
            "cost rows differ from hypothesis count");
    require(povm.outcomes() == cost.outcomes(), ErrorKind::DimensionMismatch,
            "POVM outcomes differ from cost outcomes");
    double total = 0.0;
    for (std::size_t m = 0; m < ens.hypotheses(); ++m) {
        if (!ens.present(m) || ens.priors()[m] == 0.0) {
            continue;
        }
        const CMatrix &rho = *ens.states()[m];
        for (std::size_t x = 0; x < povm.elements().size(); ++x) {
            const double p = (rho * povm.elements()[x]).trace().real();
            total += ens.priors()[m] * p * cost(m, x);
        }
    }
    return total;
}

double srm_error_probability(const CMatrix &gram, const std::vector<double> &priors) {
    const auto m = static_cast<Eigen::Index>(priors.size());
    require(gram.rows() == m && gram.cols() == m, ErrorKind::DimensionMismatch,
            "Gram matrix size differs from prior count");
    check_probability_vector(priors, "priors");
    for (Eigen::Index i = 0; i < m; ++i) {
        require(std::abs(gram(i, i) - Complex(1.0)) <= linalg::kPsdTolerance,
                ErrorKind::InvalidInput, "Gram matrix must have unit diagonal");
    }
    require(linalg::is_hermitian(gram, linalg::kPsdTolerance), ErrorKind::InvalidInput,
            "Gram matrix is not Hermitian");
    CMatrix w(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            w(i, j) = std::sqrt(priors[i] * priors[j]) * gram(i, j);
        }
    }
    const CMatrix root = linalg::psd_sqrt(w);
    double success = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        success += std::norm(root(i, i));
    }
    return 1.0 - success;
}

Ensemble mix_ensembles(const std::vector<double> &weights,
                       const std::vector<Ensemble> &ensembles) {
    require(!ensembles.empty(), ErrorKind::InvalidInput, "nothing to mix");
    require(weights.size() == ensembles.size(), ErrorKind::DimensionMismatch,
            "one weight per ensemble required");
    check_probability_vector(weights, "mixture weights");
    const std::size_t hyp = ensembles.front().hypotheses();
    const Eigen::Index dim = ensembles.front().dimension();
    for (const auto &e : ensembles) {
        require(e.hypotheses() == hyp && e.dimension() == dim,
                ErrorKind::DimensionMismatch, "ensembles differ in shape");
    }

    std::vector<double> priors(hyp, 0.0);
    std::vector<CMatrix> sums(hyp, CMatrix::Zero(dim, dim));
    for (std::size_t l = 0; l < ensembles.size(); ++l) {
        for (std::size_t m = 0; m < hyp; ++m) {
            const double w = weights[l] * ensembles[l].priors()[m];
            if (w == 0.0 || !ensembles[l].present(m)) {
                continue;
            }
            priors[m] += w;
            sums[m] += w * *ensembles[l].states()[m];
        }
    }
    std::vector<std::optional<CMatrix>> states(hyp);
    double total = 0.0;
    for (double p : priors) {
        total += p;
    }
    for (std::size_t m = 0; m < hyp; ++m) {
        if (priors[m] > 0.0) {
            states[m] = CMatrix(sums[m] / priors[m]);
        }
        priors[m] /= total;
    }
    return Ensemble(std::move(priors), std::move(states));
}

bool ensembles_orthogonal(const Ensemble &a, const Ensemble &b, double tol) {
    require(a.dimension() == b.dimension(), ErrorKind::DimensionMismatch,
            "ensembles live in different spaces");
    for (const auto &ra : a.states()) {
        for (const auto &rb : b.states()) {
            if (ra && rb && linalg::max_abs_entry(*ra * *rb) >= tol) {
                return false;
            }
        }
    }
    return true;
}

CMatrix support_projector(const Ensemble &ens) {
    CMatrix sum = CMatrix::Zero(ens.dimension(), ens.dimension());
    for (const auto &rho : ens.states()) {
        if (rho) {
            sum += *rho;
        }
    }
    return linalg::range_projector(linalg::hermitian_part(sum));
}

Povm block_povm(const std::vector<CMatrix> &projectors,
                const std::vector<Povm> &sub_povms) {
    require(!projectors.empty(), ErrorKind::InvalidInput, "no blocks given");
    require(projectors.size() == sub_povms.size(), ErrorKind::DimensionMismatch,
            "one sub-POVM per block required");
    const Eigen::Index dim = projectors.front().rows();
    const auto &outcomes = sub_povms.front().outcomes();
    for (std::size_t l = 0; l < projectors.size(); ++l) {
        const CMatrix &p = projectors[l];
        require(p.rows() == dim && p.cols() == dim && sub_povms[l].dimension() == dim,
                ErrorKind::DimensionMismatch, "block dimensions differ");
        require(sub_povms[l].outcomes() == outcomes, ErrorKind::DimensionMismatch,
                "sub-POVMs have different outcome spaces");
        for (std::size_t k = l; k < projectors.size(); ++k) {
            const CMatrix expected = (k == l) ? p : CMatrix::Zero(dim, dim);
            require(linalg::max_abs_entry(p * projectors[k] - expected) <=
                        kProjectorTolerance,
                    ErrorKind::NonOrthogonalProjectors,
                    "block projectors are not pairwise orthogonal projectors");
        }
    }

    std::vector<CMatrix> elements(outcomes.size(), CMatrix::Zero(dim, dim));
    CMatrix covered = CMatrix::Zero(dim, dim);
    for (std::size_t l = 0; l < projectors.size(); ++l) {
        const CMatrix &p = projectors[l];
        for (std::size_t x = 0; x < outcomes.size(); ++x) {
            elements[x] += p * sub_povms[l].elements()[x] * p;
        }
        covered += p;
    }
    elements.front() += CMatrix::Identity(dim, dim) - covered;
    for (auto &e : elements) {
        e = linalg::hermitian_part(e);
    }
    return Povm(outcomes, std::move(elements));
}

} // namespace ndsense
