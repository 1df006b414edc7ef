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

#include <algorithm>
#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "ndsense/cli.hpp"
#include "ndsense/decision.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/oracle.hpp"
#include "ndsense/random.hpp"

namespace ndsense::cli {

namespace {

using nlohmann::json;

json problem_json(const rnd::Problem &pr) {
    return {{"scene", scene_to_json(pr.scene)}, {"pmf", pmf_to_json(pr.pmf)}};
}

// Largest entrywise deviation between two sub-ensemble lists over the same
// leak patterns; infinity when the patterns differ.
double max_deviation(const std::vector<SubEnsembleGram> &a,
                     const std::vector<SubEnsembleGram> &b) {
    if (a.size() != b.size()) {
        return INFINITY;
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].leak != b[i].leak) {
            return INFINITY;
        }
        dev = std::max(dev, std::abs(a[i].lambda - b[i].lambda));
        for (std::size_t m = 0; m < a[i].cond_priors.size(); ++m) {
            dev = std::max(dev, std::abs(a[i].cond_priors[m] - b[i].cond_priors[m]));
        }
        dev = std::max(dev, linalg::max_abs_entry(a[i].gram - b[i].gram));
    }
    return dev;
}

// Oracle sub-ensembles restricted to patterns with nonzero weight, matching
// what sub_ensembles() returns.
std::vector<SubEnsembleGram> weighted_only(std::vector<SubEnsembleGram> subs) {
    std::erase_if(subs, [](const SubEnsembleGram &s) { return !(s.lambda > 0.0); });
    return subs;
}

struct Outcome {
    bool ok;
    json detail;
};

using Trial = std::function<Outcome(std::mt19937_64 &)>;

SuiteReport run_suite(const std::string &name, std::uint64_t stream,
                      const VerifyOptions &opt, const Trial &trial) {
    SuiteReport report{name, 0, 0, std::nullopt};
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = rnd::trial_rng(opt.seed, stream * 1000003ULL + static_cast<std::uint64_t>(t));
        Outcome o = trial(rng);
        if (o.ok) {
            ++report.passed;
            continue;
        }
        ++report.failed;
        if (!report.first_failure) {
            o.detail["suite"] = name;
            o.detail["trial"] = t;
            o.detail["seed"] = opt.seed;
            report.first_failure = std::move(o.detail);
        }
    }
    return report;
}

} // namespace

std::vector<SuiteReport> run_verification(const VerifyOptions &opt) {
    std::vector<SuiteReport> reports;
    std::uniform_int_distribution<int> idler_dim(1, 4);
    std::uniform_int_distribution<std::uint64_t> seeds;

    reports.push_back(run_suite("bound_inequality", 1, opt, [&](std::mt19937_64 &rng) {
        const auto pr = rnd::random_binary_problem(rng);
        const int dim = idler_dim(rng);
        const std::uint64_t input_seed = seeds(rng);
        const auto state = oracle::random_input(input_seed, pr.pmf, pr.scene.layout(), dim);
        const double actual = oracle::oracle_min_error(state, pr.scene);
        const double bound = nds_bound_binary(pr.pmf, pr.scene);
        json detail = problem_json(pr);
        detail.update({{"idler_dim", dim}, {"input_seed", input_seed},
                       {"oracle_min_error", actual}, {"nds_bound", bound}});
        return Outcome{actual >= bound - opt.tol, detail};
    }));

    reports.push_back(run_suite("nds_equality", 2, opt, [&](std::mt19937_64 &rng) {
        const auto pr = rnd::random_binary_problem(rng);
        const auto state = oracle::make_nds_state(pr.pmf, pr.scene.layout());
        const double actual = oracle::oracle_min_error(state, pr.scene);
        const double bound = nds_bound_binary(pr.pmf, pr.scene);
        json detail = problem_json(pr);
        detail.update({{"oracle_min_error", actual}, {"nds_bound", bound}});
        return Outcome{std::abs(actual - bound) <= opt.tol, detail};
    }));

    reports.push_back(run_suite("idler_independence", 3, opt, [&](std::mt19937_64 &rng) {
        const auto pr = rnd::random_binary_problem(rng);
        const int dim_a = idler_dim(rng);
        const int dim_b = idler_dim(rng);
        const std::uint64_t seed_a = seeds(rng);
        const std::uint64_t seed_b = seeds(rng);
        const auto a = oracle::sub_ensemble_vectors(
            oracle::random_input(seed_a, pr.pmf, pr.scene.layout(), dim_a), pr.scene);
        const auto b = oracle::sub_ensemble_vectors(
            oracle::random_input(seed_b, pr.pmf, pr.scene.layout(), dim_b), pr.scene);
        const double dev = max_deviation(a.grams, b.grams);
        json detail = problem_json(pr);
        detail.update({{"idler_dims", {dim_a, dim_b}},
                       {"input_seeds", {seed_a, seed_b}},
                       {"max_deviation", dev}});
        return Outcome{dev <= opt.identity_tol, detail};
    }));

    reports.push_back(run_suite("gram_vs_oracle", 4, opt, [&](std::mt19937_64 &rng) {
        const auto pr = rnd::random_binary_problem(rng);
        const int dim = idler_dim(rng);
        const std::uint64_t input_seed = seeds(rng);
        const auto explicit_subs = oracle::sub_ensemble_vectors(
            oracle::random_input(input_seed, pr.pmf, pr.scene.layout(), dim), pr.scene);
        const auto nds_subs = oracle::sub_ensemble_vectors(
            oracle::make_nds_state(pr.pmf, pr.scene.layout()), pr.scene);
        const double dev = max_deviation(weighted_only(explicit_subs.grams),
                                         sub_ensembles(pr.pmf, pr.scene));
        json detail = problem_json(pr);
        detail.update({{"idler_dim", dim},
                       {"input_seed", input_seed},
                       {"max_deviation", dev},
                       {"nds_cross_overlap", nds_subs.max_cross_overlap}});
        return Outcome{dev <= opt.identity_tol &&
                           nds_subs.max_cross_overlap <= opt.identity_tol,
                       detail};
    }));

    reports.push_back(run_suite("block_povm", 5, opt, [&](std::mt19937_64 &rng) {
        const auto pr = rnd::random_binary_problem(rng);
        const auto state = oracle::make_nds_state(pr.pmf, pr.scene.layout());
        std::vector<oracle::Propagation> props;
        for (std::size_t m = 0; m < 2; ++m) {
            props.push_back(oracle::propagate(state, m, pr.scene));
        }
        std::vector<CMatrix> projectors;
        std::vector<Povm> povms;
        double sub_costs = 0.0;
        for (const auto &sub : weighted_only(oracle::sub_ensemble_vectors(state, pr.scene).grams)) {
            const Ensemble block = pure_ensemble(
                sub.cond_priors, {props[0].by_leak.at(sub.leak), props[1].by_leak.at(sub.leak)});
            projectors.push_back(support_projector(block));
            povms.push_back(helstrom_povm(block));
            sub_costs += sub.lambda * helstrom_binary_mixed(block);
        }
        const Povm joint = block_povm(projectors, povms);
        const Ensemble mixture(pr.scene.priors(),
                               std::vector<CMatrix>{linalg::hermitian_part(props[0].state.rho),
                                                    linalg::hermitian_part(props[1].state.rho)});
        const double achieved = bayes_cost(mixture, joint, pr.scene.cost());
        json detail = problem_json(pr);
        detail.update({{"block_povm_cost", achieved}, {"sum_sub_costs", sub_costs}});
        return Outcome{std::abs(achieved - sub_costs) <= opt.tol, detail};
    }));

    return reports;
}

} // namespace ndsense::cli
