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

// Test-only reference computations. Nothing here calls into the leak-pattern
// machinery: beam splitters act through explicit two-mode Fock operators,
// the environment is kept as a real tensor factor and traced out by hand,
// and trace norms come from singular values.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace brute {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Creation operator on a single mode truncated at `cutoff` photons.
inline CMatrix creation(int cutoff) {
    CMatrix a = CMatrix::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k < cutoff; ++k) {
        a(k + 1, k) = std::sqrt(static_cast<double>(k + 1));
    }
    return a;
}

/// Output amplitudes <n-l|_b <l|_f U |n>_a |0>_e of the pixel beam splitter,
/// indexed by l = 0..n. Uses a^dagger = sqrt(eta) e^{i theta} b^dagger +
/// sqrt(1-eta) e^{i theta} f^dagger on the (b, f) two-mode space.
inline std::vector<Complex> beam_splitter_amplitudes(int n, double eta, double theta) {
    const int cut = n;
    const int dim = cut + 1;
    const CMatrix ad = creation(cut);
    const CMatrix id = CMatrix::Identity(dim, dim);
    // Two-mode ordering: index = b * dim + f.
    CMatrix bdag(dim * dim, dim * dim), fdag(dim * dim, dim * dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) {
                for (int m = 0; m < dim; ++m) {
                    bdag(i * dim + k, j * dim + m) = ad(i, j) * id(k, m);
                    fdag(i * dim + k, j * dim + m) = id(i, j) * ad(k, m);
                }
            }
        }
    }
    const Complex phase = std::polar(1.0, theta);
    const CMatrix adag_out =
        std::sqrt(eta) * phase * bdag + std::sqrt(1.0 - eta) * phase * fdag;
    CVector psi = CVector::Zero(dim * dim);
    psi[0] = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        psi = adag_out * psi;
        fact *= k;
    }
    psi /= std::sqrt(fact);
    std::vector<Complex> out;
    for (int l = 0; l <= n; ++l) {
        out.push_back(psi[(n - l) * dim + l]);
    }
    return out;
}

struct Term {
    int n;
    Complex c;
    CVector idler;
};

/// Single-mode pixel: builds idler (x) return (x) environment explicitly and
/// traces out the environment. Returned on idler (x) return with return
/// photon numbers 0..cutoff.
inline CMatrix output_state(const std::vector<Term> &terms, double eta, double theta,
                            int cutoff) {
    const auto di = terms.front().idler.size();
    const int dr = cutoff + 1;
    const int de = cutoff + 1;
    CVector full = CVector::Zero(di * dr * de);
    for (const auto &t : terms) {
        const auto amps = beam_splitter_amplitudes(t.n, eta, theta);
        for (int l = 0; l <= t.n; ++l) {
            for (Eigen::Index d = 0; d < di; ++d) {
                full[(d * dr + (t.n - l)) * de + l] += t.c * amps[l] * t.idler[d];
            }
        }
    }
    CMatrix rho = CMatrix::Zero(di * dr, di * dr);
    for (Eigen::Index a = 0; a < di * dr; ++a) {
        for (Eigen::Index b = 0; b < di * dr; ++b) {
            Complex acc = 0.0;
            for (int e = 0; e < de; ++e) {
                acc += full[a * de + e] * std::conj(full[b * de + e]);
            }
            rho(a, b) = acc;
        }
    }
    return rho;
}

inline double trace_norm_svd(const CMatrix &a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().sum();
}

inline double helstrom(const CMatrix &rho1, const CMatrix &rho2, double pi1 = 0.5) {
    return 0.5 * (1.0 - trace_norm_svd(pi1 * rho1 - (1.0 - pi1) * rho2));
}

/// Pure-pair Helstrom from the 2x2 operator pi1|a><a| - pi2|b><b| with
/// |a> = (1, 0), |b> = (g, sqrt(1 - g^2)); eigenvalues by the quadratic formula.
inline double helstrom_pure_2x2(double pi1, double pi2, double g) {
    const double s = std::sqrt(std::max(1.0 - g * g, 0.0));
    const double a = pi1 - pi2 * g * g;
    const double b = -pi2 * g * s;
    const double d = -pi2 * s * s;
    const double tr = a + d;
    const double det = a * d - b * b;
    const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    const double l1 = tr / 2.0 + disc;
    const double l2 = tr / 2.0 - disc;
    return 0.5 * (1.0 - (std::abs(l1) + std::abs(l2)));
}

/// Straight transcription of the closed-form NDS error for 0-vs-pi at peak two.
inline double closed_form(double p0, double p1, double p2, double eta) {
    return 0.5 - std::sqrt(p1) * (std::sqrt(p0 * eta + p2 * eta * eta * eta) +
                                  std::sqrt(2.0 * p2 * eta * (1.0 - eta) * (1.0 - eta)));
}

} // namespace brute
