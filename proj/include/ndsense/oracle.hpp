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
#include <map>
#include <vector>

#include "ndsense/fock.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/linalg.hpp"
#include "ndsense/scene.hpp"

namespace ndsense::oracle {

struct SignalTerm {
    ModePattern pattern;
    Complex amplitude;
    CVector idler;
};

/// sum_n c_n |phi_n>_I |n>_S with unit idler vectors in a shared space.
class PureInputState {
  public:
    PureInputState(ModeLayout layout, std::vector<SignalTerm> terms);

    [[nodiscard]] const ModeLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const std::vector<SignalTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] Eigen::Index idler_dimension() const noexcept { return idler_dim_; }
    /// Signal photon pmf p_n = |c_n|^2.
    [[nodiscard]] PhotonPmf pmf() const;

  private:
    ModeLayout layout_;
    std::vector<SignalTerm> terms_;
    Eigen::Index idler_dim_ = 0;
};

/// Orthonormal idlers, one standard basis vector per support pattern.
PureInputState make_nds_state(const PhotonPmf &pmf, const ModeLayout &layout);
PureInputState make_nds_state(const PhotonPmf &pmf);

/// One-dimensional idler shared by every term: a signal-only state with real
/// amplitudes sqrt(p_n).
PureInputState make_signal_only_state(const PhotonPmf &pmf, const ModeLayout &layout);

/// Amplitudes sqrt(p_n) times uniform random phases; idlers are normalized
/// complex Gaussian vectors of length `idler_dim`. Reproducible per seed.
PureInputState random_input(std::uint64_t seed, const PhotonPmf &pmf,
                            const ModeLayout &layout, Eigen::Index idler_dim);

/// Return+idler basis element: idler index and return photon pattern.
struct BasisLabel {
    Eigen::Index idler;
    ModePattern pattern;
};

struct DensityMatrix {
    std::vector<BasisLabel> basis;
    CMatrix rho;
};

struct Propagation {
    DensityMatrix state;
    /// Unnormalized conditional vectors |psi_m^(l)>, keyed by leak pattern.
    std::map<ModePattern, CVector> by_leak;
};

/// Output of image m: the partial trace over the environment computed as the
/// sum over leak patterns of |psi_m^(l)><psi_m^(l)|.
Propagation propagate(const PureInputState &state, std::size_t image,
                      const SceneSpec &scene);

/// Helstrom error probability of the propagated binary ensemble.
double oracle_min_error(const PureInputState &state, const SceneSpec &scene);

struct OracleSubEnsembles {
    std::vector<SubEnsembleGram> grams;
    /// max |<psi_m^(l)|psi_m'^(l')>| over l != l'.
    double max_cross_overlap = 0.0;
};

/// Per-leak Gram data from explicit inner products of the propagated vectors.
OracleSubEnsembles sub_ensemble_vectors(const PureInputState &state,
                                        const SceneSpec &scene);

} // namespace ndsense::oracle
