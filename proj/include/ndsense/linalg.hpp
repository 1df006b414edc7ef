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

#include <complex>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace ndsense {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace linalg {

inline constexpr double kPsdTolerance = 1e-10;

/// (A + A^dagger) / 2.
[[nodiscard]] CMatrix hermitian_part(const CMatrix &a);

[[nodiscard]] bool is_hermitian(const CMatrix &a, double tol);

/// Eigenvalues (ascending) of the Hermitian part of `a`.
[[nodiscard]] RVector hermitian_eigenvalues(const CMatrix &a);

/// Sum of |eigenvalues| of the Hermitian part of `a`.
[[nodiscard]] double trace_norm(const CMatrix &a);

/// Smallest eigenvalue >= -tol after symmetrization.
[[nodiscard]] bool is_psd(const CMatrix &a, double tol = kPsdTolerance);

/// PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero; anything
/// more negative throws NotPositiveSemidefinite.
[[nodiscard]] CMatrix psd_sqrt(const CMatrix &a);

/// Orthogonal projector onto the span of the columns of `vectors`.
[[nodiscard]] CMatrix range_projector(const CMatrix &vectors,
                                      double rel_tol = 1e-12);

[[nodiscard]] double max_abs_entry(const CMatrix &a);

/// Row-major [[re, im], ...] rows.
nlohmann::json matrix_to_json(const CMatrix &a);
CMatrix matrix_from_json(const nlohmann::json &j);

} // namespace linalg
} // namespace ndsense
