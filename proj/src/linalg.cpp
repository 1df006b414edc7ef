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

#include "ndsense/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "ndsense/errors.hpp"

namespace ndsense::linalg {

CMatrix hermitian_part(const CMatrix &a) {
    require(a.rows() == a.cols(), ErrorKind::DimensionMismatch,
            "matrix is not square");
    return (a + a.adjoint()) * 0.5;
}

bool is_hermitian(const CMatrix &a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return a.size() == 0 || max_abs_entry(a - a.adjoint()) <= tol;
}

RVector hermitian_eigenvalues(const CMatrix &a) {
    if (a.size() == 0) {
        return RVector(0);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a),
                                                  Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double trace_norm(const CMatrix &a) {
    return hermitian_eigenvalues(a).cwiseAbs().sum();
}

bool is_psd(const CMatrix &a, double tol) {
    const RVector ev = hermitian_eigenvalues(a);
    return ev.size() == 0 || ev.minCoeff() >= -tol;
}

CMatrix psd_sqrt(const CMatrix &a) {
    if (a.size() == 0) {
        return a;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    RVector ev = solver.eigenvalues();
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         static_cast<double>(ev.size()) * ev.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        require(ev[i] >= -kPsdTolerance, ErrorKind::NotPositiveSemidefinite,
                "matrix has eigenvalue " + std::to_string(ev[i]));
        ev[i] = ev[i] <= floor ? 0.0 : std::sqrt(ev[i]);
    }
    const CMatrix &v = solver.eigenvectors();
    return v * ev.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix range_projector(const CMatrix &vectors, double rel_tol) {
    const Eigen::Index dim = vectors.rows();
    if (vectors.cols() == 0 || dim == 0) {
        return CMatrix::Zero(dim, dim);
    }
    Eigen::JacobiSVD<CMatrix> svd(vectors, Eigen::ComputeThinU);
    const RVector &s = svd.singularValues();
    const double cutoff = rel_tol * std::max(s.maxCoeff(), 1.0);
    CMatrix proj = CMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s[k] > cutoff) {
            proj += svd.matrixU().col(k) * svd.matrixU().col(k).adjoint();
        }
    }
    return proj;
}

double max_abs_entry(const CMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

nlohmann::json matrix_to_json(const CMatrix &a) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            row.push_back({a(i, j).real(), a(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const nlohmann::json &j) {
    require(j.is_array(), ErrorKind::InvalidInput, "matrix JSON must be an array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        require(static_cast<Eigen::Index>(j[i].size()) == cols,
                ErrorKind::DimensionMismatch, "ragged matrix JSON");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto &z = j[i][k];
            a(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return a;
}

} // namespace ndsense::linalg
