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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ndsense/decision.hpp"
#include "ndsense/errors.hpp"
#include "ndsense/fock.hpp"
#include "ndsense/gram.hpp"
#include "ndsense/optimizer.hpp"
#include "ndsense/oracle.hpp"
#include "ndsense/phase_example.hpp"
#include "ndsense/scene.hpp"

namespace py = pybind11;
using namespace ndsense;

namespace {

using PatternList = std::vector<std::vector<int>>;

PhotonPmf make_pmf(const std::vector<std::pair<std::vector<int>, double>> &items) {
    std::vector<PmfEntry> entries;
    for (const auto &[pattern, p] : items) {
        entries.push_back({ModePattern(pattern), p});
    }
    return PhotonPmf(std::move(entries));
}

PatternList to_lists(const std::vector<ModePattern> &patterns) {
    PatternList out;
    for (const auto &n : patterns) {
        out.push_back(n.counts());
    }
    return out;
}

py::dict candidate_dict(const opt::Candidate &c) {
    py::dict d;
    py::list support;
    for (const auto &e : c.pmf.support()) {
        support.append(py::make_tuple(e.pattern.counts(), e.p));
    }
    d["pmf"] = support;
    d["cost"] = c.cost;
    return d;
}

opt::EnergyConstraint make_constraint(std::optional<int> peak, std::optional<double> mean,
                                      std::optional<std::vector<int>> per_mode) {
    return {mean, peak, std::move(per_mode)};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = R"pbdoc(
    Minimum-cost performance of probe states for pixelated lossy-phase image
    sensing: number-diagonal-signal bounds from leak-pattern Gram matrices,
    a brute-force Fock-space oracle, and photon-pmf optimization.
  )pbdoc";

    static py::exception<Error> error_type(m, "NdsenseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::set_error(error_type, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<PhotonPmf>(m, "PhotonPmf")
        .def(py::init(&make_pmf), py::arg("entries"),
             "Build from [(pattern, probability), ...]; order is canonicalized.")
        .def_static("single_mode", &PhotonPmf::single_mode, py::arg("probs"))
        .def_property_readonly("support",
                               [](const PhotonPmf &pmf) {
                                   std::vector<std::pair<std::vector<int>, double>> out;
                                   for (const auto &e : pmf.support()) {
                                       out.emplace_back(e.pattern.counts(), e.p);
                                   }
                                   return out;
                               })
        .def_property_readonly("modes", &PhotonPmf::modes)
        .def("__len__", &PhotonPmf::size);

    py::class_<SceneSpec>(m, "SceneSpec")
        .def_static("phase01pi", &phase01pi_scene, py::arg("eta"))
        .def_static("reading", &reading_scene, py::arg("eta1"), py::arg("eta2"))
        .def_static("from_json",
                    [](const std::string &text) {
                        try {
                            return scene_from_json(nlohmann::json::parse(text));
                        } catch (const nlohmann::json::exception &ex) {
                            throw Error(ErrorKind::InvalidInput, ex.what());
                        }
                    },
                    py::arg("text"))
        .def("to_json", [](const SceneSpec &s) { return scene_to_json(s).dump(); })
        .def_property_readonly("hypotheses", &SceneSpec::hypotheses)
        .def_property_readonly("priors", &SceneSpec::priors)
        .def_property_readonly("lossless", &SceneSpec::lossless);

    py::class_<SubEnsembleGram>(m, "SubEnsembleGram")
        .def_property_readonly("leak", [](const SubEnsembleGram &s) { return s.leak.counts(); })
        .def_readonly("weight", &SubEnsembleGram::lambda)
        .def_readonly("cond_priors", &SubEnsembleGram::cond_priors)
        .def_readonly("gram", &SubEnsembleGram::gram)
        .def("normalized_overlap", &SubEnsembleGram::normalized_overlap, py::arg("a") = 0,
             py::arg("b") = 1);

    m.def("enumerate_leak_patterns",
          [](const std::vector<int> &n) { return to_lists(enumerate_leak_patterns(ModePattern(n))); },
          py::arg("n"));
    m.def("total_photons", [](const std::vector<int> &n) { return total_photons(ModePattern(n)); },
          py::arg("n"));
    m.def("mean_energy", &mean_energy, py::arg("pmf"));
    m.def("amplitude",
          [](std::size_t image, const std::vector<int> &n, const std::vector<int> &l,
             const SceneSpec &scene) {
              return amplitude(image, ModePattern(n), ModePattern(l), scene);
          },
          py::arg("image"), py::arg("n"), py::arg("l"), py::arg("scene"));
    m.def("leak_weight",
          [](const std::vector<int> &l, const PhotonPmf &pmf, const SceneSpec &scene) {
              return leak_weight(ModePattern(l), pmf, scene);
          },
          py::arg("l"), py::arg("pmf"), py::arg("scene"));
    m.def("conditional_priors",
          [](const std::vector<int> &l, const PhotonPmf &pmf, const SceneSpec &scene) {
              return conditional_priors(ModePattern(l), pmf, scene);
          },
          py::arg("l"), py::arg("pmf"), py::arg("scene"));
    m.def("gram_for_leak",
          [](const std::vector<int> &l, const PhotonPmf &pmf, const SceneSpec &scene) {
              return gram_for_leak(ModePattern(l), pmf, scene);
          },
          py::arg("l"), py::arg("pmf"), py::arg("scene"));
    m.def("sub_ensembles", &sub_ensembles, py::arg("pmf"), py::arg("scene"),
          py::arg("prune_below") = 0.0);
    m.def("gram_diagonal_mass", &gram_diagonal_mass, py::arg("pmf"), py::arg("scene"));
    m.def("nds_bound_binary",
          py::overload_cast<const PhotonPmf &, const SceneSpec &>(&nds_bound_binary),
          py::arg("pmf"), py::arg("scene"));
    m.def("lossless_gram", &lossless_gram, py::arg("pmf"), py::arg("scene"));

    m.def("helstrom_binary_pure", &helstrom_binary_pure, py::arg("pi1"), py::arg("pi2"),
          py::arg("overlap"));
    m.def("helstrom_binary_mixed",
          [](const CMatrix &rho1, const CMatrix &rho2, double pi1) {
              return helstrom_binary_mixed(
                  Ensemble({pi1, 1.0 - pi1}, std::vector<CMatrix>{rho1, rho2}));
          },
          py::arg("rho1"), py::arg("rho2"), py::arg("pi1") = 0.5);
    m.def("srm_error_probability", &srm_error_probability, py::arg("gram"), py::arg("priors"));

    m.def("oracle_nds_min_error",
          [](const PhotonPmf &pmf, const SceneSpec &scene) {
              return oracle::oracle_min_error(oracle::make_nds_state(pmf, scene.layout()), scene);
          },
          py::arg("pmf"), py::arg("scene"));
    m.def("oracle_random_min_error",
          [](std::uint64_t seed, const PhotonPmf &pmf, const SceneSpec &scene, int idler_dim) {
              return oracle::oracle_min_error(
                  oracle::random_input(seed, pmf, scene.layout(), idler_dim), scene);
          },
          py::arg("seed"), py::arg("pmf"), py::arg("scene"), py::arg("idler_dim"));

    m.def("nds_pe_closed_form",
          [](double p0, double p1, double p2, double eta) {
              return phase::nds_pe_closed_form(phase::TrianglePoint(p0, p1, p2), eta);
          },
          py::arg("p0"), py::arg("p1"), py::arg("p2"), py::arg("eta"));
    m.def("interior_extremum",
          [](double eta) {
              const auto pt = phase::interior_extremum(eta);
              return py::make_tuple(pt.p0(), pt.p1(), pt.p2());
          },
          py::arg("eta"));
    m.def("signal_only_pe",
          [](double p0, double p1, double p2, double eta) {
              return phase::signal_only_pe(phase::TrianglePoint(p0, p1, p2), eta);
          },
          py::arg("p0"), py::arg("p1"), py::arg("p2"), py::arg("eta"));

    m.def("feasible_support",
          [](const std::vector<int> &modes_per_pixel, std::optional<int> peak,
             std::optional<double> mean, std::optional<std::vector<int>> per_mode) {
              return to_lists(opt::feasible_support(ModeLayout(modes_per_pixel),
                                                    make_constraint(peak, mean, per_mode)));
          },
          py::arg("modes_per_pixel"), py::arg("peak") = py::none(),
          py::arg("mean_energy") = py::none(), py::arg("per_mode_peak") = py::none());
    m.def("grid_minimize",
          [](const SceneSpec &scene, double grid_step, std::optional<int> peak,
             std::optional<double> mean, std::optional<std::vector<int>> per_mode) {
              const auto r = opt::grid_minimize(scene, make_constraint(peak, mean, per_mode),
                                                grid_step);
              py::dict d;
              d["best"] = candidate_dict(r.best);
              py::list ties;
              for (const auto &t : r.ties) {
                  ties.append(candidate_dict(t));
              }
              d["ties"] = ties;
              d["evaluations"] = r.evaluations;
              return d;
          },
          py::arg("scene"), py::arg("grid_step"), py::arg("peak") = py::none(),
          py::arg("mean_energy") = py::none(), py::arg("per_mode_peak") = py::none());
    m.def("local_refine",
          [](const SceneSpec &scene, const PhotonPmf &start, std::optional<int> peak,
             std::optional<double> mean, std::optional<std::vector<int>> per_mode) {
              const auto r =
                  opt::local_refine(scene, make_constraint(peak, mean, per_mode), start);
              return candidate_dict(r.best);
          },
          py::arg("scene"), py::arg("start"), py::arg("peak") = py::none(),
          py::arg("mean_energy") = py::none(), py::arg("per_mode_peak") = py::none());

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
