#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fatshatter/bounds.hpp"
#include "fatshatter/chaining.hpp"
#include "fatshatter/class_core.hpp"
#include "fatshatter/dimensions.hpp"
#include "fatshatter/empirical_process.hpp"
#include "fatshatter/errors.hpp"
#include "fatshatter/metric_geometry.hpp"

namespace py = pybind11;
using namespace fatshatter;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-class uniform convergence toolkit: combinatorial dimensions, "
              "separated nets, chaining decompositions, Rademacher tails, and "
              "sample-complexity bounds.";

    py::register_exception<SizeLimitError>(m, "SizeLimitError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<FunctionClass>(m, "FunctionClass")
        .def(py::init([](std::vector<std::vector<double>> values, double range_lo,
                         double range_hi, std::optional<std::vector<double>> labels) {
                 return FunctionClass(std::move(values), range_lo, range_hi, std::move(labels));
             }),
             py::arg("values"), py::arg("range_lo"), py::arg("range_hi"),
             py::arg("domain_labels") = std::nullopt)
        .def_property_readonly("num_functions", &FunctionClass::num_functions)
        .def_property_readonly("num_points", &FunctionClass::num_points)
        .def_property_readonly("range_lo", &FunctionClass::range_lo)
        .def_property_readonly("range_hi", &FunctionClass::range_hi)
        .def_property_readonly("range_width", &FunctionClass::range_width)
        .def_property_readonly("values", &FunctionClass::rows)
        .def_property_readonly("domain_labels", &FunctionClass::domain_labels)
        .def("value", &FunctionClass::value, py::arg("f"), py::arg("x"))
        .def("is_binary", &FunctionClass::is_binary);

    py::class_<Distribution>(m, "Distribution")
        .def(py::init<std::vector<double>>(), py::arg("weights"))
        .def_static("uniform", &Distribution::uniform, py::arg("n"))
        .def_property_readonly("weights", &Distribution::weights);

    py::class_<EmpiricalRestriction>(m, "EmpiricalRestriction")
        .def_readonly("vectors", &EmpiricalRestriction::vectors)
        .def_readonly("provenance", &EmpiricalRestriction::provenance)
        .def_readonly("m", &EmpiricalRestriction::m);

    py::class_<ShatterCertificate>(m, "ShatterCertificate")
        .def_readonly("subset", &ShatterCertificate::subset)
        .def_readonly("witness", &ShatterCertificate::witness)
        .def_readonly("gamma", &ShatterCertificate::gamma)
        .def_readonly("assignment", &ShatterCertificate::assignment);

    py::class_<SeparatedNet>(m, "SeparatedNet")
        .def_readonly("points", &SeparatedNet::points)
        .def_readonly("epsilon", &SeparatedNet::epsilon)
        .def_readonly("cover_map", &SeparatedNet::cover_map);

    py::class_<BoundConstants>(m, "BoundConstants")
        .def(py::init<double, double>(), py::arg("c_tilde") = 1.0, py::arg("C_tilde") = 1.0)
        .def_readonly("c_tilde", &BoundConstants::c_tilde)
        .def_readonly("C_tilde", &BoundConstants::C_tilde);

    py::class_<ChainStructure>(m, "ChainStructure")
        .def_readonly("depth", &ChainStructure::depth)
        .def_readonly("epsilon", &ChainStructure::epsilon)
        .def_readonly("range_width", &ChainStructure::range_width)
        .def_readonly("net_points", &ChainStructure::net_points)
        .def_readonly("levels", &ChainStructure::levels)
        .def_readonly("projections", &ChainStructure::projections)
        .def_readonly("increments", &ChainStructure::increments)
        .def_readonly("decomposition", &ChainStructure::decomposition);

    py::class_<ChainVerification>(m, "ChainVerification")
        .def_readonly("decomposition_ok", &ChainVerification::decomposition_ok)
        .def_readonly("increment_bounds_ok", &ChainVerification::increment_bounds_ok)
        .def_readonly("level_sizes_ok", &ChainVerification::level_sizes_ok)
        .def_readonly("witnesses", &ChainVerification::witnesses)
        .def("all_pass", &ChainVerification::all_pass);

    py::class_<RademacherLaw>(m, "RademacherLaw")
        .def_static("exact", &RademacherLaw::exact)
        .def_static("sampled", &RademacherLaw::sampled, py::arg("trials"), py::arg("seed"));

    py::class_<TailEstimate>(m, "TailEstimate")
        .def_readonly("point_estimate", &TailEstimate::point_estimate)
        .def_readonly("trials", &TailEstimate::trials)
        .def_readonly("half_width_95", &TailEstimate::half_width_95)
        .def_readonly("seed", &TailEstimate::seed)
        .def_readonly("exact", &TailEstimate::exact);

    m.def(
        "restrict",
        [](const FunctionClass& fc, std::vector<std::size_t> indices, std::size_t m) {
            return restrict_class(fc, SampleVector(std::move(indices), m));
        },
        py::arg("function_class"), py::arg("indices"), py::arg("m"),
        "Distinct restriction vectors of the class on a 2m-index sample.");
    m.def("make_threshold_class", &make_threshold_class, py::arg("grid"), py::arg("thresholds"));
    m.def("make_full_binary_class", &make_full_binary_class, py::arg("n"));
    m.def("exact_mean", &exact_mean, py::arg("function_class"), py::arg("row"), py::arg("dist"));

    m.def(
        "is_shattered",
        [](const FunctionClass& fc, const std::vector<std::size_t>& subset, double gamma) {
            return is_shattered(fc, subset, gamma);
        },
        py::arg("function_class"), py::arg("subset"), py::arg("gamma"));
    m.def(
        "fat_dim",
        [](const FunctionClass& fc, double gamma) { return fat_dim(fc, gamma); },
        py::arg("function_class"), py::arg("gamma"));
    m.def("vc_dim", &vc_dim, py::arg("function_class"));
    m.def("check_certificate", &check_certificate, py::arg("function_class"),
          py::arg("certificate"));

    m.def(
        "distance",
        [](const std::vector<double>& g, const std::vector<double>& h, int p) {
            return distance(g, h, p);
        },
        py::arg("g"), py::arg("h"), py::arg("p") = 2);
    m.def("greedy_net", &greedy_net, py::arg("points"), py::arg("epsilon"));
    m.def("packing_number_exact", &packing_number_exact, py::arg("points"), py::arg("zeta"),
          py::arg("cap") = 24);
    m.def("rv_packing_bound", &rv_packing_bound, py::arg("range_width"), py::arg("zeta"),
          py::arg("fat_at_ctilde_zeta"), py::arg("constants"));

    m.def("chain_depth", &chain_depth, py::arg("range_width"), py::arg("epsilon"));
    m.def("build_chain", &build_chain, py::arg("net"), py::arg("range_width"),
          py::arg("epsilon"));
    m.def("verify_chain", &verify_chain, py::arg("chain"), py::arg("m"));
    m.def(
        "increment_halved_norm",
        [](const std::vector<double>& h, std::size_t m) { return increment_halved_norm(h, m); },
        py::arg("h"), py::arg("m"));

    m.def("sup_deviation", &sup_deviation, py::arg("function_class"), py::arg("dist"),
          py::arg("m"), py::arg("seed"));
    m.def("tail_probability_mc", &tail_probability_mc, py::arg("function_class"),
          py::arg("dist"), py::arg("m"), py::arg("epsilon"), py::arg("trials"), py::arg("seed"),
          py::arg("threads") = 1);
    m.def("tail_probability_exact", &tail_probability_exact, py::arg("function_class"),
          py::arg("dist"), py::arg("m"), py::arg("epsilon"));
    m.def("rademacher_sup_tail", &rademacher_sup_tail, py::arg("vectors"), py::arg("m"),
          py::arg("threshold"), py::arg("law"), py::arg("threads") = 1);
    m.def(
        "hoeffding_tail",
        [](const std::vector<double>& h, std::size_t m, double eps_j) {
            return hoeffding_tail(h, m, eps_j);
        },
        py::arg("h"), py::arg("m"), py::arg("eps_j"));
    m.def("multiscale_bound", &multiscale_bound, py::arg("levels"), py::arg("m"),
          py::arg("schedule"), py::arg("epsilon") = std::nullopt);
    m.def("weight_schedule", &weight_schedule, py::arg("l"));
    m.def("weight_schedule_sum", &weight_schedule_sum, py::arg("l"));
    m.def("symmetrization_threshold", &symmetrization_threshold, py::arg("range_width"),
          py::arg("epsilon"));
    m.def("symmetrized_deviation_tail", &symmetrized_deviation_tail, py::arg("function_class"),
          py::arg("dist"), py::arg("m"), py::arg("epsilon"), py::arg("trials"), py::arg("seed"),
          py::arg("threads") = 1);
    m.def("symmetrized_tail_exact", &symmetrized_tail_exact, py::arg("function_class"),
          py::arg("dist"), py::arg("m"), py::arg("epsilon"));
    m.def("sup_rademacher_tail_over_samples", &sup_rademacher_tail_over_samples,
          py::arg("function_class"), py::arg("m"), py::arg("threshold"));

    m.def("theorem_sample_bound", &theorem_sample_bound, py::arg("range_width"),
          py::arg("epsilon"), py::arg("delta"), py::arg("kappa"), py::arg("constants"));
    m.def("legacy_sample_bound", &legacy_sample_bound, py::arg("range_width"),
          py::arg("epsilon"), py::arg("delta"), py::arg("fat_at_eps_over_5"),
          py::arg("scale_constant") = 1.0);
}
