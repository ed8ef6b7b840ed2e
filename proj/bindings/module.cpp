// Python bindings for the disc-family verification core.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crfolio/catalog.hpp"
#include "crfolio/core.hpp"
#include "crfolio/extension.hpp"
#include "crfolio/family.hpp"
#include "crfolio/hypersurface.hpp"
#include "crfolio/jacobian.hpp"
#include "crfolio/topology.hpp"
#include "crfolio/verify.hpp"

namespace py = pybind11;
using namespace crfolio;

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical verification of Morera-type theorems on families of "
            "analytic discs";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<NearSingularError>(m, "NearSingularError");

  // ---- family ----
  py::enum_<ParamKind>(m, "ParamKind")
      .value("Circle", ParamKind::Circle)
      .value("Interval", ParamKind::Interval)
      .value("Box3", ParamKind::Box3);

  py::class_<ParamSpace>(m, "ParamSpace")
      .def(py::init<ParamKind, int>(), py::arg("kind"), py::arg("resolution"))
      .def_readonly("kind", &ParamSpace::kind)
      .def_readonly("resolution", &ParamSpace::resolution)
      .def("node_count", &ParamSpace::node_count)
      .def("node", &ParamSpace::node)
      .def("mesh", &ParamSpace::mesh);

  py::class_<DiscFamily>(m, "DiscFamily")
      .def_readonly("ambient_dim", &DiscFamily::ambient_dim)
      .def_readonly("params", &DiscFamily::params)
      .def_readonly("builder", &DiscFamily::builder)
      .def_readonly("builder_params", &DiscFamily::builder_params)
      .def("eval", &DiscFamily::eval, py::arg("zeta"), py::arg("t"))
      .def("d_zeta", &DiscFamily::d_zeta, py::arg("zeta"), py::arg("t"))
      .def("d_t", &DiscFamily::d_t, py::arg("zeta"), py::arg("t"))
      .def("eval_node", &DiscFamily::eval_node, py::arg("zeta"),
           py::arg("node"))
      .def("coeff_scale", &DiscFamily::coeff_scale);

  m.def("build_rotating_circles", &build_rotating_circles, py::arg("R"),
        py::arg("r"), py::arg("resolution"));
  m.def("build_translated_circles", &build_translated_circles, py::arg("rho"),
        py::arg("center_path"), py::arg("resolution"));
  m.def("build_tangent_lines", &build_tangent_lines, py::arg("ball_radius"),
        py::arg("inner_radius"), py::arg("resolution"));
  m.def("build_hopf_discs", &build_hopf_discs, py::arg("resolution"));
  m.def(
      "build_custom",
      [](const std::vector<std::vector<std::vector<cx>>>& taylor_table,
         const ParamSpace& params, int ambient_dim) {
        std::vector<std::vector<Poly>> table;
        table.reserve(taylor_table.size());
        for (const auto& node : taylor_table) {
          std::vector<Poly> row;
          row.reserve(node.size());
          for (const auto& coeffs : node) row.push_back(Poly{coeffs});
          table.push_back(std::move(row));
        }
        return build_custom(table, params, ambient_dim);
      },
      py::arg("taylor_table"), py::arg("params"), py::arg("ambient_dim") = 1,
      "taylor_table[node][component] is a list of Taylor coefficients");

  m.def("boundary_jacobian", &boundary_jacobian, py::arg("family"),
        py::arg("psi"), py::arg("t"));

  py::class_<RegularityReport>(m, "RegularityReport")
      .def_readonly("interior_rank_ok", &RegularityReport::interior_rank_ok)
      .def_readonly("boundary_rank_histogram",
                    &RegularityReport::boundary_rank_histogram)
      .def_readonly("critical_on_boundary",
                    &RegularityReport::critical_on_boundary)
      .def_readonly("min_interior_jacobian",
                    &RegularityReport::min_interior_jacobian);
  m.def("regularity_audit", &regularity_audit, py::arg("family"));

  py::class_<IntersectionResult>(m, "IntersectionResult")
      .def_readonly("empty", &IntersectionResult::empty)
      .def_readonly("witness", &IntersectionResult::witness)
      .def_readonly("cell", &IntersectionResult::cell);
  m.def("closure_intersection_empty", &closure_intersection_empty,
        py::arg("family"), py::arg("raster") = 512);
  m.def("disc_contains", &disc_contains, py::arg("family"), py::arg("node"),
        py::arg("b"));

  // ---- catalog ----
  py::class_<BoundaryFunction>(m, "BoundaryFunction")
      .def_readonly("name", &BoundaryFunction::name)
      .def_readonly("arity", &BoundaryFunction::arity)
      .def_readonly("symbolic_derivatives",
                    &BoundaryFunction::symbolic_derivatives)
      .def("value",
           [](const BoundaryFunction& f, const std::vector<cx>& z) {
             return f.value(z);
           })
      .def("dz", [](const BoundaryFunction& f, const std::vector<cx>& z,
                    int j) { return f.dz(z, j); })
      .def("dzbar", [](const BoundaryFunction& f, const std::vector<cx>& z,
                       int j) { return f.dzbar(z, j); });
  m.def("make_function", &make_function, py::arg("spec"), py::arg("arity") = 1);

  py::class_<Hypersurface>(m, "Hypersurface")
      .def_readonly("name", &Hypersurface::name)
      .def("rho", [](const Hypersurface& s, const std::array<cx, 2>& z) {
        return s.rho(z);
      });
  m.def("make_surface", &make_surface, py::arg("spec"));
  m.def("list_catalog", &list_catalog);

  // ---- extension ----
  py::class_<ExtensionField>(m, "ExtensionField")
      .def_readonly("circle_n", &ExtensionField::circle_n)
      .def_readonly("residual_t", &ExtensionField::residual_t)
      .def_readonly("residual", &ExtensionField::residual)
      .def_readonly("boundary_rms", &ExtensionField::boundary_rms)
      .def_readonly("tolerance", &ExtensionField::tolerance)
      .def("extendible", &ExtensionField::extendible);
  m.def("analyze", &analyze, py::arg("f"), py::arg("family"),
        py::arg("circle_n") = 256);
  m.def("eval_extension", &eval_extension, py::arg("ext"), py::arg("zeta"),
        py::arg("t"));
  m.def("eval_extension_dzeta", &eval_extension_dzeta, py::arg("ext"),
        py::arg("zeta"), py::arg("t"));
  m.def("eval_extension_dt", &eval_extension_dt, py::arg("ext"),
        py::arg("zeta"), py::arg("t"));
  m.def("moment_test", &moment_test, py::arg("f"), py::arg("family"),
        py::arg("max_power"), py::arg("circle_n") = 256);

  // ---- jacobian ----
  py::class_<JacobianField>(m, "JacobianField")
      .def_readonly("scale", &JacobianField::scale)
      .def("value",
           [](const JacobianField& J, cx zeta, double t) {
             return J.field.value(zeta, t);
           },
           py::arg("zeta"), py::arg("t"));
  m.def("compute_J", &compute_J, py::arg("ext"));
  m.def("synthetic_J",
        [](const DiscFamily& family,
           const std::function<std::vector<cx>(double)>& taylor_of_t) {
          return synthetic_J(family, [taylor_of_t](double t) {
            return Poly{taylor_of_t(t)};
          });
        },
        py::arg("family"), py::arg("taylor_of_t"),
        "taylor_of_t(t) returns the Taylor coefficients of J(., t)");

  py::class_<ThetaField>(m, "ThetaField")
      .def_readonly("compatibility_residual",
                    &ThetaField::compatibility_residual)
      .def_readonly("pairs_compared", &ThetaField::pairs_compared)
      .def_readonly("sigma_residual", &ThetaField::sigma_residual)
      .def_readonly("degenerate", &ThetaField::degenerate);
  m.def("theta_field", &theta_field, py::arg("J"), py::arg("circle_n") = 256,
        py::arg("f") = nullptr);

  py::class_<ZeroBranch>(m, "ZeroBranch")
      .def_readonly("nodes", &ZeroBranch::nodes)
      .def_readonly("zeta", &ZeroBranch::zeta)
      .def_readonly("kappa", &ZeroBranch::kappa)
      .def_readonly("closed", &ZeroBranch::closed)
      .def_readonly("on_boundary", &ZeroBranch::on_boundary);
  py::class_<ZeroChain>(m, "ZeroChain")
      .def_readonly("branches", &ZeroChain::branches)
      .def_readonly("zero_disc_nodes", &ZeroChain::zero_disc_nodes)
      .def_readonly("central_cycle_present", &ZeroChain::central_cycle_present);
  m.def("track_zeros", &track_zeros, py::arg("J"));

  // ---- topology ----
  py::class_<Fiber>(m, "Fiber")
      .def_readonly("b", &Fiber::b)
      .def_readonly("t", &Fiber::t)
      .def_readonly("zeta", &Fiber::zeta)
      .def_readonly("closed", &Fiber::closed)
      .def_readonly("hit_boundary", &Fiber::hit_boundary);
  m.def("trace_fiber", &trace_fiber, py::arg("family"), py::arg("b"));
  m.def(
      "brouwer_degree",
      [](const DiscFamily& family, cx b) {
        std::vector<int> signs;
        int deg = brouwer_degree(family, b, &signs);
        return py::make_tuple(deg, signs);
      },
      py::arg("family"), py::arg("b"),
      "returns (degree, per-preimage orientation signs)");
  m.def("zero_count_integral", &zero_count_integral, py::arg("family"),
        py::arg("b"), py::arg("t"));

  py::class_<HomologyVerdict>(m, "HomologyVerdict")
      .def_readonly("condition_a", &HomologyVerdict::condition_a)
      .def_readonly("condition_iii", &HomologyVerdict::condition_iii)
      .def_readonly("probes_used", &HomologyVerdict::probes_used)
      .def_readonly("central_image_winding",
                    &HomologyVerdict::central_image_winding)
      .def_readonly("certifying_probe", &HomologyVerdict::certifying_probe)
      .def_readonly("common_point", &HomologyVerdict::common_point)
      .def_readonly("cross_check_ok", &HomologyVerdict::cross_check_ok)
      .def_readonly("raster_cell", &HomologyVerdict::raster_cell);
  m.def("homology_test", &homology_test, py::arg("family"));

  // ---- verify ----
  py::class_<SymmetryReport>(m, "SymmetryReport")
      .def_readonly("b", &SymmetryReport::b)
      .def_readonly("lhs", &SymmetryReport::lhs)
      .def_readonly("rhs", &SymmetryReport::rhs)
      .def_readonly("abs_gap", &SymmetryReport::abs_gap)
      .def_readonly("admissible", &SymmetryReport::admissible)
      .def_readonly("fiber_components", &SymmetryReport::fiber_components);
  m.def("symmetry_relation", &symmetry_relation, py::arg("J"),
        py::arg("chain"), py::arg("family"), py::arg("b"));

  py::class_<JumpProfile::Event>(m, "JumpEvent")
      .def_readonly("segment", &JumpProfile::Event::segment)
      .def_readonly("signed_kappa", &JumpProfile::Event::signed_kappa);
  py::class_<JumpProfile>(m, "JumpProfile")
      .def_readonly("probes", &JumpProfile::probes)
      .def_property_readonly("admissible",
                             [](const JumpProfile& p) {
                               std::vector<bool> out(p.admissible.begin(),
                                                     p.admissible.end());
                               return out;
                             })
      .def_readonly("chi", &JumpProfile::chi)
      .def_readonly("Z", &JumpProfile::Z)
      .def_readonly("N", &JumpProfile::N)
      .def_readonly("jump_events", &JumpProfile::jump_events);
  m.def("jump_profile", &jump_profile, py::arg("J"), py::arg("chain"),
        py::arg("family"), py::arg("path_vertices"), py::arg("n_probes"));

  py::enum_<Verdict>(m, "Verdict")
      .value("HolomorphicConfirmed", Verdict::HolomorphicConfirmed)
      .value("CrConfirmed", Verdict::CrConfirmed)
      .value("ConditionStarFails", Verdict::ConditionStarFails)
      .value("PreconditionFails", Verdict::PreconditionFails)
      .value("NondegenerateWitness", Verdict::NondegenerateWitness)
      .value("Inconclusive", Verdict::Inconclusive);
  m.def("verdict_name", &verdict_name, py::arg("verdict"));

  py::class_<VerdictOptions>(m, "VerdictOptions")
      .def(py::init<>())
      .def_readwrite("circle_n", &VerdictOptions::circle_n)
      .def_readwrite("fiber_probes", &VerdictOptions::fiber_probes)
      .def_readwrite("seed", &VerdictOptions::seed);

  py::class_<VerdictReport>(m, "VerdictReport")
      .def_readonly("builder", &VerdictReport::builder)
      .def_readonly("builder_params", &VerdictReport::builder_params)
      .def_readonly("function_name", &VerdictReport::function_name)
      .def_readonly("ambient_dim", &VerdictReport::ambient_dim)
      .def_readonly("extension_residual", &VerdictReport::extension_residual)
      .def_readonly("extension_tolerance", &VerdictReport::extension_tolerance)
      .def_readonly("regularity", &VerdictReport::regularity)
      .def_readonly("homology", &VerdictReport::homology)
      .def_readonly("condition_a", &VerdictReport::condition_a)
      .def_readonly("j_max_rel", &VerdictReport::j_max_rel)
      .def_readonly("theta_compatibility", &VerdictReport::theta_compatibility)
      .def_readonly("fiber_spread", &VerdictReport::fiber_spread)
      .def_readonly("cr_residual", &VerdictReport::cr_residual)
      .def_readonly("symmetry", &VerdictReport::symmetry)
      .def_readonly("verdict", &VerdictReport::verdict)
      .def_readonly("detail", &VerdictReport::detail);
  m.def("run_verdict", &run_verdict, py::arg("f"), py::arg("family"),
        py::arg("options") = VerdictOptions{});

  py::class_<SuiteAssertion>(m, "SuiteAssertion")
      .def_readonly("name", &SuiteAssertion::name)
      .def_readonly("pass_", &SuiteAssertion::pass)
      .def_readonly("value", &SuiteAssertion::value);
  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("assertions", &SuiteReport::assertions)
      .def_readonly("all_pass", &SuiteReport::all_pass);
  m.def("counterexample_suite", &counterexample_suite);

  // ---- hypersurface ----
  py::class_<MinorField>(m, "MinorField")
      .def_readonly("scale", &MinorField::scale)
      .def_readonly("center_max", &MinorField::center_max);
  m.def("compute_minors", &compute_minors, py::arg("ext"));
  m.def("lemma34_check", &lemma34_check, py::arg("minors"));

  py::class_<KRealityReport>(m, "KRealityReport")
      .def_readonly("max_rel_imag", &KRealityReport::max_rel_imag)
      .def_readonly("max_incidence", &KRealityReport::max_incidence)
      .def_readonly("samples", &KRealityReport::samples);
  m.def("k_mu_reality", &k_mu_reality, py::arg("family"), py::arg("surface"));
  m.def("tangential_cr_residual", &tangential_cr_residual, py::arg("f"),
        py::arg("surface"), py::arg("samples"));
}
