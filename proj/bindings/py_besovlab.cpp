// Python bindings over the main operations of the laboratory.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "besovlab/besov_core.hpp"
#include "besovlab/hedgehog.hpp"
#include "besovlab/levy_measure.hpp"
#include "besovlab/records.hpp"
#include "besovlab/regions.hpp"
#include "besovlab/sampler.hpp"
#include "besovlab/stable_analysis.hpp"

namespace py = pybind11;
using namespace besovlab;

namespace {

LevyMeasure1D measure_of(const std::string& tag, double a, double b) {
    return LevyMeasure1D::from_tag(tag, a, b);
}

}  // namespace

PYBIND11_MODULE(_besovlab, m) {
    m.doc() = "weighted Besov regularisation laboratory for cylindrical Levy processes";

    py::class_<BesovParams>(m, "BesovParams")
        .def(py::init([](double p, double s, double w, int d) {
                 BesovParams bp{p, s, w, d};
                 bp.validate();
                 return bp;
             }),
             py::arg("p"), py::arg("s"), py::arg("w"), py::arg("d") = 1)
        .def_readonly("p", &BesovParams::p)
        .def_readonly("s", &BesovParams::s)
        .def_readonly("w", &BesovParams::w)
        .def_readonly("d", &BesovParams::d)
        .def("__repr__", [](const BesovParams& bp) {
            return "BesovParams(p=" + format_double(bp.p) + ", s=" + format_double(bp.s) +
                   ", w=" + format_double(bp.w) + ", d=" + std::to_string(bp.d) + ")";
        });

    m.def("dual_params", &dual_params, py::arg("params"));

    py::class_<IndexEnumeration>(m, "IndexEnumeration")
        .def(py::init([](int d, int max_scale, int max_shift) {
                 IndexEnumeration e{d, max_scale, max_shift};
                 e.validate();
                 return e;
             }),
             py::arg("d"), py::arg("max_scale"), py::arg("max_shift"))
        .def("size", &IndexEnumeration::size)
        .def("indices", [](const IndexEnumeration& e) {
            py::list out;
            e.for_each([&](const WaveletIndex& idx) {
                py::list m;
                for (int i = 0; i < idx.d; ++i) m.append(idx.m[i]);
                out.append(py::make_tuple(idx.j, idx.gender, m));
                return true;
            });
            return out;
        });

    m.def(
        "weight",
        [](const BesovParams& bp, int j, const std::vector<std::int32_t>& mvec,
           std::uint32_t gender) {
            WaveletIndex idx;
            idx.j = j;
            idx.d = bp.d;
            idx.gender = gender;
            require(mvec.size() == static_cast<std::size_t>(bp.d), "weight: |m| must equal d");
            for (int i = 0; i < bp.d; ++i) idx.m[i] = mvec[i];
            return weight(bp, idx);
        },
        py::arg("params"), py::arg("j"), py::arg("m"), py::arg("gender") = 1);

    m.def(
        "seq_norm",
        [](const BesovParams& bp, const std::vector<std::tuple<int, std::uint32_t,
                                                               std::vector<std::int32_t>, double>>&
               entries) {
            CoefficientField field;
            for (const auto& [j, g, mvec, value] : entries) {
                WaveletIndex idx;
                idx.j = j;
                idx.gender = g;
                idx.d = bp.d;
                for (int i = 0; i < bp.d && i < static_cast<int>(mvec.size()); ++i)
                    idx.m[i] = mvec[i];
                field.add(idx, value);
            }
            return seq_norm(bp, field);
        },
        py::arg("params"), py::arg("entries"));

    m.def("weight_summability_threshold", &weight_summability_threshold, py::arg("params"));
    m.def(
        "weight_power_sum",
        [](const BesovParams& bp, double k, int max_scale, int max_shift) {
            const auto rep = weight_power_sum(bp, k, IndexEnumeration{bp.d, max_scale, max_shift});
            py::dict out;
            out["partial_sums"] = rep.level_partial_sums;
            out["verdict"] = std::string(to_string(rep.verdict));
            out["analytic_verdict"] = std::string(to_string(rep.analytic_verdict));
            out["analytic_threshold"] = rep.analytic_threshold;
            return out;
        },
        py::arg("params"), py::arg("k"), py::arg("max_scale") = 12, py::arg("max_shift") = 4096);

    py::class_<RegionVerdict>(m, "RegionVerdict")
        .def_readonly("in_E_p", &RegionVerdict::in_E_p)
        .def_readonly("in_R_p", &RegionVerdict::in_R_p)
        .def_readonly("in_R_p_p", &RegionVerdict::in_R_p_p)
        .def_readonly("in_gaussian_region", &RegionVerdict::in_gaussian_region)
        .def_readonly("margin_E_p", &RegionVerdict::margin_E_p)
        .def_readonly("margin_R_p", &RegionVerdict::margin_R_p)
        .def_readonly("margin_R_p_p", &RegionVerdict::margin_R_p_p)
        .def_readonly("boundary_E_p", &RegionVerdict::boundary_E_p)
        .def_readonly("boundary_R_p", &RegionVerdict::boundary_R_p)
        .def_readonly("boundary_R_p_p", &RegionVerdict::boundary_R_p_p);

    m.def("classify_point", &classify_point, py::arg("params"));
    m.def("besov_embeds", &besov_embeds, py::arg("a"), py::arg("b"));

    m.def("tail_mass",
          [](const std::string& tag, double a, double b, double t) {
              return tail_mass(measure_of(tag, a, b), t);
          },
          py::arg("measure"), py::arg("param1"), py::arg("param2"), py::arg("t"));
    m.def("truncated_moment",
          [](const std::string& tag, double p1, double p2, double q, double a, double b) {
              return truncated_moment(measure_of(tag, p1, p2), q, a, b);
          },
          py::arg("measure"), py::arg("param1"), py::arg("param2"), py::arg("q"), py::arg("a"),
          py::arg("b"));
    m.def("xi_integral",
          [](const std::string& tag, double p1, double p2, double q, double xi) {
              return xi_integral(measure_of(tag, p1, p2), q, xi);
          },
          py::arg("measure"), py::arg("param1"), py::arg("param2"), py::arg("q"), py::arg("xi"));
    m.def("p_max",
          [](const std::string& tag, double p1, double p2) {
              return p_max(measure_of(tag, p1, p2));
          },
          py::arg("measure"), py::arg("param1") = 0.0, py::arg("param2") = 0.0);
    m.def(
        "tau_indices",
        [](const std::string& tag, double p1, double p2, double q, bool numeric) {
            std::optional<TauGridSpec> grid;
            if (numeric) grid = TauGridSpec{};
            const TauIndices t = tau_indices(measure_of(tag, p1, p2), q, grid);
            py::dict out;
            out["tau_upper"] = t.tau_upper;
            out["tau_lower"] = t.tau_lower;
            out["uncertainty"] = t.uncertainty;
            out["ambiguous"] = t.ambiguous;
            return out;
        },
        py::arg("measure"), py::arg("param1"), py::arg("param2"), py::arg("q"),
        py::arg("numeric") = false);
    m.def(
        "symmetric_moment_via_cf",
        [](const std::function<double(double)>& cf, double q) {
            return symmetric_moment_via_cf(cf, q);
        },
        py::arg("cf"), py::arg("q"));

    m.def(
        "stable_constants",
        [](double alpha, std::uint64_t n) {
            const auto c = stable_constants(alpha, n);
            return py::make_tuple(c.c_alpha, c.r_n);
        },
        py::arg("alpha"), py::arg("n") = 1);
    m.def("sphere_coordinate_moment", &sphere_coordinate_moment, py::arg("n"), py::arg("p"));

    auto curve_dict = [](const FunctionalCurve& c) {
        py::dict out;
        out["n"] = c.n;
        out["value"] = c.value;
        out["lower"] = c.lower;
        out["upper"] = c.upper;
        out["mc_stderr"] = c.mc_stderr;
        out["weight_power_sum"] = c.weight_power_sum;
        return out;
    };

    m.def(
        "sigma_n",
        [curve_dict](const BesovParams& bp, double alpha, int max_scale, int max_shift,
                     std::uint64_t samples, std::uint64_t seed, std::uint64_t budget) {
            StableRun run;
            run.params = bp;
            run.alpha = alpha;
            run.trunc = IndexEnumeration{bp.d, max_scale, max_shift};
            run.mc_samples = samples;
            run.seed = seed;
            run.index_budget = budget;
            return curve_dict(sigma_n(run));
        },
        py::arg("params"), py::arg("alpha"), py::arg("max_scale") = 10,
        py::arg("max_shift") = 1024, py::arg("samples") = 4000, py::arg("seed") = 1,
        py::arg("budget") = 1 << 14);

    m.def(
        "stable_verdict",
        [](const BesovParams& bp, double alpha) {
            const auto v = stable_verdict(bp, alpha);
            py::dict out;
            out["induced"] = v.induced;
            out["reason"] = v.reason;
            return out;
        },
        py::arg("params"), py::arg("alpha"));

    m.def(
        "sigma_divergence_certificate",
        [](const BesovParams& bp, double alpha, double target) {
            const auto cert = sigma_divergence_certificate(bp, alpha, target);
            py::dict out;
            out["crossed"] = cert.crossed;
            out["direction"] = cert.direction;
            out["lower_bound"] = cert.lower_bound;
            out["levels"] = cert.levels;
            return out;
        },
        py::arg("params"), py::arg("alpha"), py::arg("target") = 1e4);

    m.def(
        "hedgehog_verdict",
        [](const BesovParams& bp, const std::string& measure, double p1, double p2,
           double gamma) {
            HedgehogSpec spec;
            spec.mode = HedgehogSpec::Mode::Abstract;
            spec.rho = measure_of(measure, p1, p2);
            spec.norm_power_gamma = gamma;
            const auto v = hedgehog_verdict(spec, bp);
            py::dict out;
            out["outcome"] = std::string(to_string(v.outcome));
            out["branch"] = std::string(to_string(v.branch));
            out["q_min"] = v.q_min;
            out["tau_upper"] = v.tau_upper;
            out["tau_lower"] = v.tau_lower;
            return out;
        },
        py::arg("params"), py::arg("measure"), py::arg("param1"), py::arg("param2"),
        py::arg("gamma"));

    m.def(
        "counterexample_sequence",
        [](const BesovParams& bp, double alpha) {
            const auto ce = counterexample_sequence(bp, alpha);
            py::dict out;
            out["q_prime"] = ce.q_prime;
            out["alpha_weighted_partial"] = ce.alpha_weighted_partial;
            out["ell_r_partial"] = ce.ell_r_partial;
            out["ell_r_tail_bound"] = ce.ell_r_tail_bound;
            out["route"] = ce.route;
            out["blocks"] = ce.blocks;
            return out;
        },
        py::arg("params"), py::arg("alpha"));

    m.def(
        "empirical_norm_curve",
        [](const BesovParams& bp, double alpha, int max_scale, int max_shift,
           std::uint64_t replicas, std::uint64_t seed) {
            SimulationConfig config;
            config.model = PathModel::CanonicalStable;
            config.params = bp;
            config.alpha = alpha;
            config.trunc = IndexEnumeration{bp.d, max_scale, max_shift};
            config.replicas = replicas;
            config.seed = seed;
            const NormCurve curve = empirical_norm_curve(config, nullptr);
            const auto diag = divergence_diagnostic(curve);
            py::dict out;
            out["n"] = curve.n;
            out["median"] = curve.median;
            out["q25"] = curve.q25;
            out["q75"] = curve.q75;
            out["diagnostic"] = std::string(to_string(diag.verdict));
            out["slope"] = diag.slope;
            return out;
        },
        py::arg("params"), py::arg("alpha"), py::arg("max_scale") = 10,
        py::arg("max_shift") = 1024, py::arg("replicas") = 64, py::arg("seed") = 1);

    m.attr("__version__") = "0.1.0";
}
