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

#include <iosfwd>
#include <vector>

#include "ndsense/fock.hpp"
#include "ndsense/scene.hpp"

namespace ndsense::phase {

/// Point (p0, p1, p2) of the peak-two photon simplex.
class TrianglePoint {
  public:
    static constexpr double kSimplexTolerance = 1e-12;

    TrianglePoint(double p0, double p1, double p2);
    /// Chart (p0, p1) -> (p0, p1, 1 - p0 - p1), clipped at zero.
    static TrianglePoint from_chart(double p0, double p1);

    [[nodiscard]] double p0() const noexcept { return p_[0]; }
    [[nodiscard]] double p1() const noexcept { return p_[1]; }
    [[nodiscard]] double p2() const noexcept { return p_[2]; }
    [[nodiscard]] PhotonPmf pmf() const;

  private:
    double p_[3];
};

/// Closed-form NDS error probability for 0-vs-pi discrimination at common
/// transmittance eta.
[[nodiscard]] double nds_pe_closed_form(const TrianglePoint &pt, double eta);

/// Interior stationary point of the closed form. p1 is always 1/2.
[[nodiscard]] TrianglePoint interior_extremum(double eta);

/// Helstrom error probability of the idler-free state
/// sqrt(p0)|0> + sqrt(p1)|1> + sqrt(p2)|2>, by brute-force propagation.
[[nodiscard]] double signal_only_pe(const TrianglePoint &pt, double eta);

struct EdgeMinimum {
    TrianglePoint point;
    double value;
};

/// The two boundary minima, at (0, 1/2, 1/2) on the p0 = 0 edge and at
/// (1/2, 1/2, 0) on the p2 = 0 edge. Each is checked against its edge
/// neighbours at distance 1e-4 and throws VerificationFailed when a
/// neighbour is lower by more than 1e-8.
[[nodiscard]] std::vector<EdgeMinimum> boundary_local_minima(double eta);

/// Central finite-difference gradient of the closed form in the (p0, p1) chart.
[[nodiscard]] std::vector<double> chart_gradient(const TrianglePoint &pt, double eta,
                                                 double step = 1e-5);

/// Lattice of the triangle with spacing `step`, ordered by (p0, p1).
[[nodiscard]] std::vector<TrianglePoint> triangle_lattice(double step);

/// One CSV row per lattice point: p0, p1, pe_nds, pe_signal_only, difference.
void write_triangle_csv(std::ostream &os, double eta, double step);

} // namespace ndsense::phase
