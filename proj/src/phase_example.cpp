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

#include "ndsense/phase_example.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ndsense/errors.hpp"
#include "ndsense/format.hpp"
#include "ndsense/oracle.hpp"

namespace ndsense::phase {

namespace {

void check_eta(double eta) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, ErrorKind::InvalidInput,
            "transmittance must lie in [0,1]");
}

std::size_t lattice_divisions(double step) {
    require(std::isfinite(step) && step > 0.0 && step <= 1.0, ErrorKind::InvalidInput,
            "grid step must lie in (0,1]");
    const double n = std::round(1.0 / step);
    require(std::abs(n * step - 1.0) <= 1e-9, ErrorKind::InvalidInput,
            "grid step must divide one");
    return static_cast<std::size_t>(n);
}

} // namespace

TrianglePoint::TrianglePoint(double p0, double p1, double p2) : p_{p0, p1, p2} {
    for (double p : p_) {
        require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidInput,
                "triangle coordinates must be non-negative");
    }
    require(std::abs(p0 + p1 + p2 - 1.0) <= kSimplexTolerance, ErrorKind::InvalidInput,
            "triangle coordinates must sum to one");
}

TrianglePoint TrianglePoint::from_chart(double p0, double p1) {
    p0 = std::max(p0, 0.0);
    p1 = std::max(p1, 0.0);
    return {p0, p1, std::max(1.0 - p0 - p1, 0.0)};
}

PhotonPmf TrianglePoint::pmf() const {
    return PhotonPmf::single_mode({p_[0], p_[1], p_[2]});
}

double nds_pe_closed_form(const TrianglePoint &pt, double eta) {
    check_eta(eta);
    const double loss = 1.0 - eta;
    const double direct = std::max(pt.p0() * eta + pt.p2() * eta * eta * eta, 0.0);
    const double leaked = std::max(2.0 * pt.p2() * eta * loss * loss, 0.0);
    return 0.5 - std::sqrt(pt.p1()) * (std::sqrt(direct) + std::sqrt(leaked));
}

TrianglePoint interior_extremum(double eta) {
    check_eta(eta);
    const double denom = (1.0 + eta) * (3.0 - eta);
    const double p0 = (1.0 + 2.0 * eta - eta * eta) / (2.0 * denom);
    const double p2 = 1.0 / denom;
    return {p0, 0.5, p2};
}

double signal_only_pe(const TrianglePoint &pt, double eta) {
    const SceneSpec scene = phase01pi_scene(eta);
    const auto state = oracle::make_signal_only_state(pt.pmf(), scene.layout());
    return oracle::oracle_min_error(state, scene);
}

std::vector<double> chart_gradient(const TrianglePoint &pt, double eta, double step) {
    auto f = [eta](double p0, double p1) {
        return nds_pe_closed_form(TrianglePoint::from_chart(p0, p1), eta);
    };
    const double d0 = (f(pt.p0() + step, pt.p1()) - f(pt.p0() - step, pt.p1())) / (2 * step);
    const double d1 = (f(pt.p0(), pt.p1() + step) - f(pt.p0(), pt.p1() - step)) / (2 * step);
    return {d0, d1};
}

std::vector<EdgeMinimum> boundary_local_minima(double eta) {
    check_eta(eta);
    constexpr double h = 1e-4;
    constexpr double tol = 1e-8;

    std::vector<EdgeMinimum> out;
    // p0 = 0 edge, parametrized by p1.
    {
        const TrianglePoint pt(0.0, 0.5, 0.5);
        const double v = nds_pe_closed_form(pt, eta);
        const double lo = nds_pe_closed_form(TrianglePoint(0.0, 0.5 - h, 0.5 + h), eta);
        const double hi = nds_pe_closed_form(TrianglePoint(0.0, 0.5 + h, 0.5 - h), eta);
        require(lo >= v - tol && hi >= v - tol, ErrorKind::VerificationFailed,
                "(0,1/2,1/2) is not an edge minimum");
        out.push_back({pt, v});
    }
    // p2 = 0 edge, parametrized by p1.
    {
        const TrianglePoint pt(0.5, 0.5, 0.0);
        const double v = nds_pe_closed_form(pt, eta);
        const double lo = nds_pe_closed_form(TrianglePoint(0.5 + h, 0.5 - h, 0.0), eta);
        const double hi = nds_pe_closed_form(TrianglePoint(0.5 - h, 0.5 + h, 0.0), eta);
        require(lo >= v - tol && hi >= v - tol, ErrorKind::VerificationFailed,
                "(1/2,1/2,0) is not an edge minimum");
        out.push_back({pt, v});
    }
    return out;
}

std::vector<TrianglePoint> triangle_lattice(double step) {
    const std::size_t n = lattice_divisions(step);
    const double dn = static_cast<double>(n);
    std::vector<TrianglePoint> out;
    out.reserve((n + 1) * (n + 2) / 2);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; i + j <= n; ++j) {
            const double p0 = static_cast<double>(i) / dn;
            const double p1 = static_cast<double>(j) / dn;
            const double p2 = static_cast<double>(n - i - j) / dn;
            out.emplace_back(p0, p1, p2);
        }
    }
    return out;
}

void write_triangle_csv(std::ostream &os, double eta, double step) {
    check_eta(eta);
    const auto points = triangle_lattice(step);
    os << "p0,p1,pe_nds,pe_signal_only,difference\n";
    for (const auto &pt : points) {
        const double nds = nds_pe_closed_form(pt, eta);
        const double so = signal_only_pe(pt, eta);
        os << fmt_sig(pt.p0()) << ',' << fmt_sig(pt.p1()) << ',' << fmt_sig(nds) << ','
           << fmt_sig(so) << ',' << fmt_sig(so - nds) << '\n';
    }
}

} // namespace ndsense::phase
