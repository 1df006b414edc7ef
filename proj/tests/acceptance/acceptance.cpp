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

// Acceptance gate: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "brute_force.hpp"
#include "ndsense/cli.hpp"
#include "ndsense/decision.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/oracle.hpp"
#include "ndsense/phase_example.hpp"
#include "ndsense/random.hpp"

using namespace ndsense;
using phase::TrianglePoint;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string &title, double limit_s, const std::function<Result()> &fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = fn();
    } catch (const std::exception &ex) {
        r = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        r.pass = false;
        r.detail += " [over time limit]";
    }
    failures += r.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s  (%s; %.2fs)\n", id, r.pass ? "PASS" : "FAIL", title.c_str(),
                r.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double closed_form(const TrianglePoint &p, double eta) {
    return brute::closed_form(p.p0(), p.p1(), p.p2(), eta);
}

CMatrix random_density(std::mt19937_64 &rng, Eigen::Index dim, Eigen::Index rank) {
    std::normal_distribution<double> g;
    CMatrix a(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < rank; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

Result criterion1() {
    double worst = 0.0;
    for (double eta : {0.2, 0.6, 0.9}) {
        const auto scene = phase01pi_scene(eta);
        for (const auto &pt : phase::triangle_lattice(0.01)) {
            worst = std::max(worst, std::abs(phase::nds_pe_closed_form(pt, eta) -
                                             nds_bound_binary(pt.pmf(), scene)));
        }
    }
    return {worst < 1e-12, "max |diff| = " + num(worst)};
}

Result criterion2() {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto rng = rnd::trial_rng(2002, t);
        const auto prob = rnd::random_binary_problem(rng, 3);
        const double oracle_value = oracle::oracle_min_error(
            oracle::make_nds_state(prob.pmf, prob.scene.layout()), prob.scene);
        worst = std::max(worst, std::abs(oracle_value - nds_bound_binary(prob.pmf, prob.scene)));
    }
    return {worst <= 1e-9, "50 problems, max |diff| = " + num(worst)};
}

Result criterion3() {
    int violations = 0;
    double slack = 1.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        auto rng = rnd::trial_rng(3003, static_cast<std::uint64_t>(t));
        const auto prob = rnd::random_binary_problem(rng, 3);
        const int dim = 1 + t % 4;
        const auto st = oracle::random_input(static_cast<std::uint64_t>(t) + 1, prob.pmf,
                                             prob.scene.layout(), dim);
        const double gap = oracle::oracle_min_error(st, prob.scene) -
                           nds_bound_binary(prob.pmf, prob.scene);
        slack = std::min(slack, gap);
        violations += gap < -1e-9 ? 1 : 0;
    }
    return {violations == 0, std::to_string(trials) + " inputs, D_I in 1..4, violations " +
                                 std::to_string(violations) + ", min gap " + num(slack)};
}

Result criterion4() {
    const double eta = 0.6;
    const auto scene = phase01pi_scene(eta);
    std::string detail;
    bool ok = true;

    double axis = 0.0;
    for (const auto &pt : phase::triangle_lattice(0.01)) {
        if (pt.p1() == 0.0) {
            axis = std::max(axis, std::abs(phase::nds_pe_closed_form(pt, eta) - 0.5));
            axis = std::max(axis, std::abs(nds_bound_binary(pt.pmf(), scene) - 0.5));
        }
    }
    ok = ok && axis <= 1e-12;
    detail += "p0-axis dev " + num(axis);

    // Along the p1-axis (p0=0) and the p2=0 edge, the stated points must be
    // edge-local minima under a central finite difference.
    const double h = 1e-4;
    const auto edge_a = [&](double s) { return closed_form(TrianglePoint(0, s, 1 - s), eta); };
    const auto edge_b = [&](double s) { return closed_form(TrianglePoint(1 - s, s, 0), eta); };
    bool edges = true;
    for (const auto &edge : {std::function<double(double)>(edge_a), std::function<double(double)>(edge_b)}) {
        const double d1 = (edge(0.5 + h) - edge(0.5 - h)) / (2 * h);
        edges = edges && std::abs(d1) < 1e-8 && edge(0.5 + h) > edge(0.5) && edge(0.5 - h) > edge(0.5);
    }
    const auto mins = phase::boundary_local_minima(eta);
    edges = edges && mins.size() == 2 &&
            std::abs(mins[0].value - edge_a(0.5)) < 1e-15 &&
            std::abs(mins[1].value - edge_b(0.5)) < 1e-15;
    ok = ok && edges;
    detail += edges ? ", edge minima confirmed" : ", edge minima NOT confirmed";

    const TrianglePoint expected(1.84 / 7.68, 0.5, 1.0 / 3.84);
    const auto x = phase::interior_extremum(eta);
    const double loc = std::max({std::abs(x.p0() - expected.p0()), std::abs(x.p1() - expected.p1()),
                                 std::abs(x.p2() - expected.p2())});
    const double hh = 1e-5;
    const double g0 = (closed_form(TrianglePoint::from_chart(x.p0() + hh, x.p1()), eta) -
                       closed_form(TrianglePoint::from_chart(x.p0() - hh, x.p1()), eta)) /
                      (2 * hh);
    const double g1 = (closed_form(TrianglePoint::from_chart(x.p0(), x.p1() + hh), eta) -
                       closed_form(TrianglePoint::from_chart(x.p0(), x.p1() - hh), eta)) /
                      (2 * hh);
    const double grad = std::hypot(g0, g1);
    const double value = nds_bound_binary(x.pmf(), scene);
    const double vs_closed = std::abs(value - phase::nds_pe_closed_form(x, eta));
    const double vs_oracle =
        std::abs(value - oracle::oracle_min_error(oracle::make_nds_state(x.pmf()), scene));
    const bool interior = loc < 1e-15 && grad < 1e-6 && vs_closed <= 1e-9 && vs_oracle <= 1e-9 &&
                          std::abs(value - 0.0256584) < 5e-8;
    ok = ok && interior;
    detail += ", extremum value " + num(value) + " grad " + num(grad) + " |cf| " + num(vs_closed) +
              " |oracle| " + num(vs_oracle);
    return {ok, detail};
}

Result criterion5() {
    const double eta = 0.6;
    double worst = 0.0;
    double edge = 0.0;
    for (const auto &pt : phase::triangle_lattice(0.01)) {
        const double d = phase::signal_only_pe(pt, eta) - phase::nds_pe_closed_form(pt, eta);
        worst = std::min(worst, d);
        if (pt.p1() == 0.0 || pt.p2() == 0.0) {
            edge = std::max(edge, std::abs(d));
        }
    }
    return {worst >= -1e-9 && edge < 1e-6,
            "min difference " + num(worst) + ", max |difference| on p1=0,p2=0 edges " + num(edge)};
}

Result criterion6() {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto rng = rnd::trial_rng(6006, t);
        const auto prob = rnd::random_binary_problem(rng, 3);
        const auto a = oracle::sub_ensemble_vectors(
            oracle::random_input(2 * t + 1, prob.pmf, prob.scene.layout(), 1 + t % 4), prob.scene);
        const auto b = oracle::sub_ensemble_vectors(
            oracle::random_input(2 * t + 2, prob.pmf, prob.scene.layout(), 4), prob.scene);
        if (a.grams.size() != b.grams.size()) {
            return {false, "leak sets differ"};
        }
        for (std::size_t i = 0; i < a.grams.size(); ++i) {
            worst = std::max(worst, std::abs(a.grams[i].lambda - b.grams[i].lambda));
            worst = std::max(worst, linalg::max_abs_entry(a.grams[i].gram - b.grams[i].gram));
            if (a.grams[i].lambda > 0.0) {
                for (std::size_t m = 0; m < 2; ++m) {
                    worst = std::max(worst, std::abs(a.grams[i].cond_priors[m] -
                                                     b.grams[i].cond_priors[m]));
                }
            }
        }
    }
    return {worst <= 1e-12, "50 trials, max entry diff " + num(worst)};
}

Result criterion7() {
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> parts(2, 4), dims(1, 3);
    const auto cost = CostFunction::error_probability(2);
    double concavity = 1.0;
    double equality = 0.0;
    double constructive = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int L = parts(rng);
        const auto weights = rnd::random_simplex_point(rng, static_cast<std::size_t>(L));
        const Eigen::Index d = dims(rng) + 1;
        std::vector<Ensemble> plain, embedded;
        std::vector<CMatrix> projectors;
        double lower = 0.0;
        for (int l = 0; l < L; ++l) {
            const double q = u(rng);
            const CMatrix r1 = random_density(rng, d, 1 + t % 2);
            const CMatrix r2 = random_density(rng, d, d);
            plain.emplace_back(std::vector<double>{q, 1 - q}, std::vector<CMatrix>{r1, r2});
            lower += weights[l] * brute::helstrom(r1, r2, q);

            const Eigen::Index total = d * L;
            CMatrix e1 = CMatrix::Zero(total, total), e2 = e1, proj = e1;
            e1.block(l * d, l * d, d, d) = r1;
            e2.block(l * d, l * d, d, d) = r2;
            proj.block(l * d, l * d, d, d) = CMatrix::Identity(d, d);
            embedded.emplace_back(std::vector<double>{q, 1 - q}, std::vector<CMatrix>{e1, e2});
            projectors.push_back(proj);
        }
        const double mixed = helstrom_binary_mixed(mix_ensembles(weights, plain));
        concavity = std::min(concavity, mixed - lower);

        const Ensemble block_mix = mix_ensembles(weights, embedded);
        equality = std::max(equality, std::abs(helstrom_binary_mixed(block_mix) - lower));
        std::vector<Povm> subs;
        for (const auto &e : embedded) {
            subs.push_back(helstrom_povm(e));
        }
        const Povm assembled = block_povm(projectors, subs);
        constructive = std::max(constructive, std::abs(bayes_cost(block_mix, assembled, cost) - lower));
    }
    return {concavity >= -1e-9 && equality <= 1e-9 && constructive <= 1e-9,
            "min concavity gap " + num(concavity) + ", orthogonal |diff| " + num(equality) +
                ", block POVM |diff| " + num(constructive)};
}

Result criterion8() {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 60; ++t) {
        auto rng = rnd::trial_rng(8008, t);
        const auto prob = rnd::random_binary_problem(rng, 3);
        std::vector<Image> images = prob.scene.images();
        for (auto &img : images) {
            for (auto &px : img.pixels) {
                px = Pixel(1.0, px.theta());
            }
        }
        const SceneSpec scene(prob.scene.layout(), images, prob.scene.priors());
        const auto zero = ModePattern::zeros(scene.layout().modes());
        const auto g0 = gram_for_leak(zero, prob.pmf, scene);
        worst = std::max(worst, std::abs(g0.lambda - 1.0));
        worst = std::max(worst, linalg::max_abs_entry(lossless_gram(prob.pmf, scene) - g0.gram));
        const double overlap = std::abs(g0.gram(0, 1)) /
                               std::sqrt(g0.gram(0, 0).real() * g0.gram(1, 1).real());
        const double bound = nds_bound_binary(prob.pmf, scene);
        const double literal =
            helstrom_binary_pure(g0.cond_priors[0], g0.cond_priors[1], g0.normalized_overlap());
        const double eigen = brute::helstrom_pure_2x2(0.5, 0.5, std::min(overlap, 1.0));
        worst = std::max({worst, std::abs(bound - literal), std::abs(bound - eigen)});
    }
    return {worst <= 1e-12, "60 lossless scenes, max |diff| " + num(worst)};
}

Result criterion9() {
    double unitarity = 0.0, mass = 0.0, weights = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto rng = rnd::trial_rng(9009, t);
        const auto prob = rnd::random_binary_problem(rng, 3);
        for (const auto &e : prob.pmf.support()) {
            for (std::size_t m = 0; m < 2; ++m) {
                double s = 0.0;
                for (const auto &l : enumerate_leak_patterns(e.pattern)) {
                    s += std::norm(amplitude(m, e.pattern, l, prob.scene));
                }
                unitarity = std::max(unitarity, std::abs(s - 1.0));
            }
        }
        for (double d : gram_diagonal_mass(prob.pmf, prob.scene)) {
            mass = std::max(mass, std::abs(d - 1.0));
        }
        double total = 0.0;
        for (const auto &l : leak_closure(prob.pmf)) {
            total += leak_weight(l, prob.pmf, prob.scene);
        }
        weights = std::max(weights, std::abs(total - 1.0));
    }
    return {unitarity <= 1e-12 && mass <= 1e-10 && weights <= 1e-10,
            "unitarity " + num(unitarity) + ", diagonal mass " + num(mass) + ", sum lambda " +
                num(weights)};
}

Result criterion10() {
    double worst = 0.0;
    std::mt19937_64 rng(1010);
    for (int t = 0; t < 50; ++t) {
        auto prob = rnd::random_binary_problem(rng, 3);
        const auto st = oracle::make_nds_state(prob.pmf, prob.scene.layout());
        // Idler basis vector i carries the Fock pattern of the i-th support entry.
        const auto &support = prob.pmf.support();
        double signal = 0.0;
        double idler = 0.0;
        for (const auto &term : st.terms()) {
            signal += std::norm(term.amplitude) * total_photons(term.pattern);
        }
        for (Eigen::Index i = 0; i < st.idler_dimension(); ++i) {
            double weight = 0.0;
            for (const auto &term : st.terms()) {
                weight += std::norm(term.amplitude * term.idler[i]);
            }
            idler += weight * total_photons(support[static_cast<std::size_t>(i)].pattern);
        }
        worst = std::max(worst, std::abs(signal + idler - 2.0 * mean_energy(prob.pmf)));
    }
    const double e = mean_energy(phase::interior_extremum(0.6).pmf());
    return {worst <= 1e-14 && std::abs(e - 1.020833) <= 1e-6,
            "max |E_total - 2 N_S| " + num(worst) + ", extremum mean energy " + num(e)};
}

Result criterion11() {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "ndsense_accept_sweep_a.csv";
    const auto b = dir / "ndsense_accept_sweep_b.csv";
    cli::RunConfig cfg;
    cfg.command = "sweep-triangle";
    cfg.eta = 0.6;
    cfg.grid_step = 0.01;
    std::ostringstream sink;
    cfg.out = a.string();
    const int ca = cli::run(cfg, sink, sink);
    cfg.out = b.string();
    const int cb = cli::run(cfg, sink, sink);
    const auto slurp = [](const std::filesystem::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string sa = slurp(a), sb = slurp(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    return {ca == 0 && cb == 0 && !sa.empty() && sa == sb,
            std::to_string(sa.size()) + " bytes, identical: " + (sa == sb ? "yes" : "no")};
}

} // namespace

int main() {
    report(1, "closed form equals general bound on the lattice", 10.0, criterion1);
    report(2, "oracle equals bound for NDS inputs", 30.0, criterion2);
    report(3, "arbitrary inputs never beat the bound", 60.0, criterion3);
    report(4, "left-panel anchors at eta=0.6", 0.0, criterion4);
    report(5, "signal-only minus NDS is non-negative", 120.0, criterion5);
    report(6, "sub-ensemble data is idler-independent", 0.0, criterion6);
    report(7, "mixing concavity and orthogonal equality", 0.0, criterion7);
    report(8, "lossless reduction", 0.0, criterion8);
    report(9, "unitarity and mass conservation", 0.0, criterion9);
    report(10, "energy bookkeeping", 0.0, criterion10);
    report(11, "sweep output is byte-identical across runs", 0.0, criterion11);
    std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
