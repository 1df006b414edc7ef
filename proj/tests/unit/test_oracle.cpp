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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brute_force.hpp"
#include "ndsense/decision.hpp"
#include "ndsense/errors.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/oracle.hpp"
#include "ndsense/random.hpp"

using namespace ndsense;
using std::numbers::pi;

namespace {

PhotonPmf extremum_pmf() {
    return PhotonPmf::single_mode({1.84 / 7.68, 0.5, 1.0 / 3.84});
}

std::vector<brute::Term> brute_terms(const oracle::PureInputState &st) {
    std::vector<brute::Term> out;
    for (const auto &t : st.terms()) {
        out.push_back({t.pattern[0], t.amplitude, t.idler});
    }
    return out;
}

} // namespace

TEST_CASE("make_nds_state") {
    const auto vac = oracle::make_nds_state(PhotonPmf::single_mode({1.0}));
    CHECK(vac.terms().size() == 1);
    CHECK(vac.idler_dimension() == 1);

    const auto half = oracle::make_nds_state(PhotonPmf::single_mode({0.5, 0.5}));
    REQUIRE(half.terms().size() == 2);
    CHECK(half.idler_dimension() == 2);
    CHECK(half.terms()[0].idler.dot(half.terms()[1].idler) == Complex(0.0));
    CHECK(half.terms()[0].idler.squaredNorm() == 1.0);
    CHECK(half.terms()[1].amplitude == Complex(std::sqrt(0.5)));
}

TEST_CASE("PureInputState validation") {
    CVector e(1);
    e << 1.0;
    CHECK_THROWS_AS(oracle::PureInputState(ModeLayout({1}), {{ModePattern{0}, 0.5, e}}), Error);
    CVector bad(1);
    bad << 0.5;
    CHECK_THROWS_AS(oracle::PureInputState(ModeLayout({1}), {{ModePattern{0}, 1.0, bad}}), Error);
}

TEST_CASE("propagate matches the explicit environment trace") {
    for (std::uint64_t t = 0; t < 25; ++t) {
        auto rng = rnd::trial_rng(77, t);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double eta = u(rng);
        const double theta = 2 * pi * u(rng);
        const SceneSpec s(ModeLayout({1}), {Image{{Pixel(eta, theta)}}, Image{{Pixel(0.5, 0.0)}}},
                          {0.5, 0.5});
        const auto pmf = PhotonPmf::single_mode(rnd::random_simplex_point(rng, 4));
        const auto st = oracle::random_input(t, pmf, ModeLayout({1}), 1 + static_cast<int>(t % 3));
        const auto prop = oracle::propagate(st, 0, s);
        const CMatrix ref = brute::output_state(brute_terms(st), eta, theta, pmf.max_photons());
        REQUIRE(prop.state.rho.rows() == ref.rows());
        CHECK(linalg::max_abs_entry(prop.state.rho - ref) < 1e-12);
        CHECK(prop.state.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(linalg::is_psd(prop.state.rho));
    }
}

TEST_CASE("propagate examples") {
    const auto vac = oracle::make_nds_state(PhotonPmf::single_mode({1.0}));
    const auto out = oracle::propagate(vac, 1, phase01pi_scene(0.3));
    CHECK(out.state.rho.rows() == 1);
    CHECK(std::abs(out.state.rho(0, 0) - 1.0) < 1e-15);

    const auto st = oracle::make_nds_state(extremum_pmf());
    const auto lossless = oracle::propagate(st, 1, phase01pi_scene(1.0));
    for (const auto &[l, v] : lossless.by_leak) {
        CHECK((l == ModePattern{0} || v.isZero(0.0)));
    }
    const CMatrix rho = lossless.state.rho;
    CHECK(std::abs((rho * rho).trace() - 1.0) < 1e-12);
}

TEST_CASE("oracle_min_error examples") {
    SUBCASE("identical images") {
        const SceneSpec s(ModeLayout({1}), {Image{{Pixel(0.4, 1.0)}}, Image{{Pixel(0.4, 1.0)}}},
                          {0.5, 0.5});
        CHECK(oracle::oracle_min_error(oracle::make_nds_state(extremum_pmf()), s) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("lossless 0/pi") {
        CHECK(oracle::oracle_min_error(
                  oracle::make_nds_state(PhotonPmf::single_mode({0.5, 0.5})),
                  phase01pi_scene(1.0)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("extremum at eta 0.6 matches the bound") {
        CHECK(oracle::oracle_min_error(oracle::make_nds_state(extremum_pmf()),
                                       phase01pi_scene(0.6)) ==
              doctest::Approx(0.0256583509747).epsilon(1e-11));
    }
    SUBCASE("signal-only strictly worse in the interior") {
        const auto pmf = PhotonPmf::single_mode({0.25, 0.5, 0.25});
        const double so = oracle::oracle_min_error(
            oracle::make_signal_only_state(pmf, ModeLayout({1})), phase01pi_scene(0.6));
        CHECK(so > nds_bound_binary(pmf, phase01pi_scene(0.6)) + 1e-6);
    }
}

TEST_CASE("sub_ensemble_vectors agree with gram_for_leak for any input") {
    for (std::uint64_t t = 0; t < 40; ++t) {
        auto rng = rnd::trial_rng(31, t);
        const auto prob = rnd::random_binary_problem(rng);
        const auto st = oracle::random_input(t, prob.pmf, prob.scene.layout(),
                                             1 + static_cast<int>(t % 4));
        const auto ref = oracle::sub_ensemble_vectors(st, prob.scene);
        for (const auto &g : ref.grams) {
            const auto direct = gram_for_leak(g.leak, prob.pmf, prob.scene);
            CHECK(std::abs(direct.lambda - g.lambda) < 1e-12);
            CHECK(linalg::max_abs_entry(direct.gram - g.gram) < 1e-12);
        }
        const auto nds = oracle::sub_ensemble_vectors(oracle::make_nds_state(prob.pmf, prob.scene.layout()),
                                                      prob.scene);
        CHECK(nds.max_cross_overlap < 1e-12);
    }
}

TEST_CASE("lossless propagation has only the l=0 vector") {
    const auto st = oracle::make_nds_state(extremum_pmf());
    const auto subs = oracle::sub_ensemble_vectors(st, phase01pi_scene(1.0));
    for (const auto &g : subs.grams) {
        if (g.leak != ModePattern{0}) {
            CHECK(g.gram.isZero(0.0));
        }
    }
}

TEST_CASE("random_input") {
    const auto pmf = extremum_pmf();
    const auto a = oracle::random_input(5, pmf, ModeLayout({1}), 3);
    const auto b = oracle::random_input(5, pmf, ModeLayout({1}), 3);
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        CHECK(a.terms()[i].amplitude == b.terms()[i].amplitude);
        CHECK(a.terms()[i].idler == b.terms()[i].idler);
    }
    const auto d1 = oracle::random_input(9, pmf, ModeLayout({1}), 1);
    for (const auto &t : d1.terms()) {
        CHECK(std::abs(std::abs(t.idler[0]) - 1.0) < 1e-15);
    }
    const auto c = oracle::random_input(6, pmf, ModeLayout({1}), 3);
    const auto scene = phase01pi_scene(0.45);
    const auto ga = oracle::sub_ensemble_vectors(a, scene).grams;
    const auto gc = oracle::sub_ensemble_vectors(c, scene).grams;
    REQUIRE(ga.size() == gc.size());
    for (std::size_t i = 0; i < ga.size(); ++i) {
        CHECK(std::abs(ga[i].lambda - gc[i].lambda) < 1e-12);
        CHECK(linalg::max_abs_entry(ga[i].gram - gc[i].gram) < 1e-12);
    }
    CHECK_THROWS_AS(oracle::random_input(1, pmf, ModeLayout({1}), 0), Error);
}

TEST_CASE("oracle arity") {
    const SceneSpec three(ModeLayout({1}),
                          {Image{{Pixel(1, 0)}}, Image{{Pixel(1, 1)}}, Image{{Pixel(1, 2)}}},
                          {0.2, 0.3, 0.5});
    CHECK_THROWS_AS((void)oracle::oracle_min_error(
                        oracle::make_nds_state(PhotonPmf::single_mode({1.0})), three),
                    Error);
}
