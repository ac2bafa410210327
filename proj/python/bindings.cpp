#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holo/cones.hpp"
#include "holo/covering.hpp"
#include "holo/liegroups.hpp"
#include "holo/polar.hpp"
#include "holo/snf.hpp"
#include "holo/sqrtm.hpp"
#include "holo/suites.hpp"

namespace py = pybind11;
using namespace holo;

namespace {

MatrixNorm parse_norm(const std::string& norm) {
  if (norm == "op") return MatrixNorm::Operator2;
  if (norm == "fro") return MatrixNorm::Frobenius;
  throw InvalidInputError("norm must be 'op' or 'fro', got '" + norm + "'");
}

std::string run_suite_json(const std::string& suite, const std::string& group,
                           int n, std::vector<double> deltas, int trials,
                           std::uint64_t seed, double tol, double radius,
                           const std::string& out) {
  RunConfig cfg;
  cfg.suite = parse_suite(suite);
  cfg.group = group;
  cfg.n = n;
  if (!deltas.empty()) cfg.deltas = std::move(deltas);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.tol = tol;
  cfg.radius = radius;
  cfg.out = out;
  return run_suite(cfg).json.dump();
}

std::string find_counterexample_json(const std::string& claim,
                                     const std::vector<double>& deltas,
                                     long budget, std::uint64_t seed) {
  return find_counterexample(claim, deltas, budget, seed).json.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cone geometry, matrix square roots, polar factorizations, "
            "group actions, covering spaces and integer normal forms.";

  const auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", err.ptr());
  py::register_exception<DomainError>(m, "DomainError", err.ptr());
  const auto invalid =
      py::register_exception<InvalidInputError>(m, "InvalidInputError", err.ptr());
  py::register_exception<UnsupportedSizeError>(m, "UnsupportedSizeError",
                                               invalid.ptr());

  // cones
  m.def(
      "in_right_cone",
      [](Complex z, double delta) { return in_right_cone(z, ConeParams(delta)); },
      py::arg("z"), py::arg("delta"));
  m.def(
      "right_cone_margin",
      [](Complex z, double delta) {
        return right_cone_margin(z, ConeParams(delta));
      },
      py::arg("z"), py::arg("delta"));
  m.def(
      "in_vector_cone",
      [](const VectorXcd& z, double delta) {
        return in_vector_cone(z, ConeParams(delta));
      },
      py::arg("z"), py::arg("delta"));
  m.def(
      "vector_cone_margin",
      [](const VectorXcd& z, double delta) {
        return vector_cone_margin(z, ConeParams(delta));
      },
      py::arg("z"), py::arg("delta"));
  m.def(
      "in_matrix_cone",
      [](const MatrixXcd& a, double delta, const std::string& norm) {
        return in_matrix_cone(a, ConeParams(delta, parse_norm(norm)));
      },
      py::arg("a"), py::arg("delta"), py::arg("norm") = "op");
  m.def(
      "matrix_cone_margin",
      [](const MatrixXcd& a, double delta, const std::string& norm) {
        return matrix_cone_margin(a, ConeParams(delta, parse_norm(norm)));
      },
      py::arg("a"), py::arg("delta"), py::arg("norm") = "op");
  m.def(
      "in_symmetric_cone",
      [](const MatrixXcd& b, double delta) {
        return in_symmetric_cone(b, ConeParams(delta));
      },
      py::arg("b"), py::arg("delta"));
  m.def(
      "symmetric_cone_margin",
      [](const MatrixXcd& b, double delta) {
        return symmetric_cone_margin(b, ConeParams(delta));
      },
      py::arg("b"), py::arg("delta"));
  m.def("symmetric_cone_margin_raw", &symmetric_cone_margin_raw, py::arg("b"),
        py::arg("aperture"));
  m.def(
      "quadratic_form_witness",
      [](const MatrixXcd& b, double delta, int trials,
         std::uint64_t seed) -> py::object {
        const auto w = quadratic_form_witness(b, ConeParams(delta), trials, seed);
        if (!w) return py::none();
        py::dict d;
        d["x"] = w->x;
        d["value"] = w->value;
        d["violated_cone"] = w->violated_cone;
        return d;
      },
      py::arg("b"), py::arg("delta"), py::arg("trials") = 200,
      py::arg("seed") = 1);

  // square roots
  py::class_<SqrtReport>(m, "SqrtReport")
      .def_readonly("S", &SqrtReport::S)
      .def_readonly("residual", &SqrtReport::residual)
      .def_readonly("U", &SqrtReport::U)
      .def_readonly("Lambda", &SqrtReport::Lambda)
      .def_readonly("K", &SqrtReport::K)
      .def_readonly("max_K_entry", &SqrtReport::max_K_entry)
      .def_readonly("re_S_min_eig", &SqrtReport::re_S_min_eig)
      .def_readonly("cone_margin", &SqrtReport::cone_margin)
      .def_readonly("structure_residual", &SqrtReport::structure_residual)
      .def_readonly("input_cone_margin", &SqrtReport::input_cone_margin)
      .def_readonly("violations", &SqrtReport::violations);
  m.def(
      "eigenvalues",
      [](const MatrixXcd& a) { return eigenvalues(a).values; }, py::arg("a"));
  m.def("principal_sqrt", &principal_sqrt, py::arg("b"),
        py::arg("tol") = 1e-12);
  m.def(
      "verify_sqrt_structure",
      [](const MatrixXcd& b, double delta) {
        return verify_sqrt_structure(b, ConeParams(delta));
      },
      py::arg("b"), py::arg("delta"));

  // polar factorizations
  py::class_<RealPolarFactors>(m, "RealPolarFactors")
      .def_readonly("P", &RealPolarFactors::P)
      .def_readonly("U", &RealPolarFactors::U);
  py::class_<PolarFactors>(m, "PolarFactors")
      .def_readonly("S", &PolarFactors::S)
      .def_readonly("Q", &PolarFactors::Q)
      .def_readonly("residual_sq", &PolarFactors::residual_sq)
      .def_readonly("residual_orth", &PolarFactors::residual_orth);
  py::class_<NearestOrthogonal>(m, "NearestOrthogonal")
      .def_readonly("U", &NearestOrthogonal::U)
      .def_readonly("dist", &NearestOrthogonal::dist);
  py::class_<OrthDistanceStats>(m, "OrthDistanceStats")
      .def_readonly("max_dist", &OrthDistanceStats::max_dist)
      .def_readonly("mean_dist", &OrthDistanceStats::mean_dist)
      .def_readonly("c_hat", &OrthDistanceStats::c_hat)
      .def_readonly("trials", &OrthDistanceStats::trials);
  m.def("real_polar", &real_polar, py::arg("g"));
  m.def("complex_polar", &complex_polar, py::arg("h"));
  m.def(
      "nearest_special_orthogonal",
      [](const MatrixXcd& q, const std::string& norm) {
        return nearest_special_orthogonal(q, parse_norm(norm));
      },
      py::arg("q"), py::arg("norm") = "op");
  m.def("image_orth_distance", &image_orth_distance, py::arg("spec"),
        py::arg("delta"), py::arg("trials"), py::arg("seed"),
        py::arg("radius") = 0.5);

  // groups and the domain action
  py::class_<GroupSpec>(m, "GroupSpec")
      .def_readonly("name", &GroupSpec::name)
      .def_readonly("n", &GroupSpec::n)
      .def_readonly("algebra_basis", &GroupSpec::algebra_basis)
      .def("dim", &GroupSpec::dim)
      .def("__repr__",
           [](const GroupSpec& s) { return "GroupSpec(" + s.name + ")"; });
  py::class_<TubeSample>(m, "TubeSample")
      .def_readonly("h", &TubeSample::h)
      .def_readonly("g", &TubeSample::g)
      .def_readonly("p", &TubeSample::p)
      .def_readonly("delta", &TubeSample::delta);
  py::class_<GroupPolarFactors>(m, "GroupPolarFactors")
      .def_readonly("p_factor", &GroupPolarFactors::p_factor)
      .def_readonly("k_factor", &GroupPolarFactors::k_factor)
      .def_readonly("p_residual", &GroupPolarFactors::p_residual)
      .def_readonly("k_residual", &GroupPolarFactors::k_residual);
  py::class_<TangentRank>(m, "TangentRank")
      .def_readonly("rank_real", &TangentRank::rank_real)
      .def_readonly("rank", &TangentRank::rank)
      .def_readonly("kernel_dim", &TangentRank::kernel_dim);
  m.def("parse_group", &parse_group, py::arg("name"));
  m.def(
      "defining_residual",
      [](const GroupSpec& spec, const MatrixXcd& g) {
        if (imag_part(g).norm() == 0.0)
          return defining_residual(spec, MatrixXd(real_part(g)));
        return defining_residual(spec, g);
      },
      py::arg("spec"), py::arg("g"));
  m.def(
      "sample_group",
      [](const GroupSpec& spec, double radius, std::uint64_t seed) {
        return sample_group(spec, radius, seed);
      },
      py::arg("spec"), py::arg("radius"), py::arg("seed"));
  m.def(
      "sample_tube",
      [](const GroupSpec& spec, double delta, double radius,
         std::uint64_t seed) { return sample_tube(spec, delta, radius, seed); },
      py::arg("spec"), py::arg("delta"), py::arg("radius"), py::arg("seed"));
  m.def("group_polar", &group_polar, py::arg("spec"), py::arg("g"));
  m.def(
      "siegel_act",
      [](const MatrixXd& g, const MatrixXcd& z1, const MatrixXcd& z2) {
        const SiegelPoint out = siegel_act(g, SiegelPoint{z1, z2});
        return py::make_tuple(out.z1, out.z2);
      },
      py::arg("g"), py::arg("z1"), py::arg("z2"));
  m.def(
      "tangent_map_rank",
      [](const GroupSpec& spec, const MatrixXcd& z1, const MatrixXcd& z2) {
        return tangent_map_rank(spec, SiegelPoint{z1, z2});
      },
      py::arg("spec"), py::arg("z1"), py::arg("z2"));
  m.def(
      "totally_real_defect",
      [](const GroupSpec& spec, const MatrixXcd& z1, const MatrixXcd& z2) {
        return totally_real_defect(spec, SiegelPoint{z1, z2});
      },
      py::arg("spec"), py::arg("z1"), py::arg("z2"));
  m.def(
      "sample_generic_point",
      [](const GroupSpec& spec, std::uint64_t seed) {
        const GenericPoint gp = sample_generic_point(spec, seed);
        return py::make_tuple(gp.pt.z1, gp.pt.z2, gp.resamples);
      },
      py::arg("spec"), py::arg("seed"));

  // covering spaces
  py::class_<CoverElement>(m, "CoverElement")
      .def_readonly("g", &CoverElement::g)
      .def_readonly("x", &CoverElement::x)
      .def("__repr__", [](const CoverElement& e) {
        return "CoverElement(x=" + std::to_string(e.x) + ")";
      });
  m.def("wrap_angle", &wrap_angle, py::arg("t"));
  m.def("torus_point", &torus_point, py::arg("x"));
  m.def(
      "lift_path",
      [](const std::vector<VectorXcd>& samples, bool closed,
         const VectorXd& start) {
        CirclePath path;
        path.samples = samples;
        path.closed = closed;
        return lift_path(path, start);
      },
      py::arg("samples"), py::arg("closed"), py::arg("start"));
  m.def("psi_angle", &psi_angle, py::arg("g"));
  m.def("winding_number", &winding_number, py::arg("loop"),
        py::arg("closed") = true);
  m.def("canonical_lift", &canonical_lift, py::arg("g"));
  m.def("cover_identity", &cover_identity);
  m.def("make_cover_element", &make_cover_element, py::arg("g"), py::arg("x"),
        py::arg("tol") = 1e-6);
  m.def("cover_multiply", &cover_multiply, py::arg("a"), py::arg("b"));
  m.def("pullback_member", &pullback_member, py::arg("z_image"), py::arg("w"),
        py::arg("tol"));

  // integer normal forms
  py::class_<SNFResult>(m, "SNFResult")
      .def_readonly("U", &SNFResult::U)
      .def_readonly("V", &SNFResult::V)
      .def_readonly("D", &SNFResult::D)
      .def_readonly("U_inv", &SNFResult::U_inv)
      .def_readonly("V_inv", &SNFResult::V_inv);
  py::class_<AbelianSplit>(m, "AbelianSplit")
      .def_readonly("torsion_invariants", &AbelianSplit::torsion_invariants)
      .def_readonly("free_rank", &AbelianSplit::free_rank);
  m.def("smith_normal_form", &smith_normal_form, py::arg("m"));
  m.def("integer_det", &integer_det, py::arg("m"));
  m.def("split_abelian", &split_abelian, py::arg("relations"));
  m.def("extend_lattice_basis", &extend_lattice_basis, py::arg("c"));
  m.def("lattice_contains", &lattice_contains, py::arg("a"), py::arg("b"));
  m.def("same_lattice", &same_lattice, py::arg("a"), py::arg("b"));

  // verification harness
  m.def("run_suite", &run_suite_json, py::arg("suite") = "all",
        py::arg("group") = "gl+:3", py::arg("n") = 0,
        py::arg("deltas") = std::vector<double>{}, py::arg("trials") = 100,
        py::arg("seed") = 42, py::arg("tol") = 1e-9, py::arg("radius") = 0.5,
        py::arg("out") = "");
  m.def("find_counterexample", &find_counterexample_json, py::arg("claim"),
        py::arg("deltas") = std::vector<double>{0.02, 0.05, 0.1, 0.3},
        py::arg("budget") = 100000L, py::arg("seed") = 7);
  m.def("counterexample_claims", [] { return kCounterexampleClaims; });
}
