// crfolio: config-driven experiment runner over the disc-family library.
//
//   crfolio <task> --config <path> [--out <dir>] [--seed <u64>]
//   crfolio list
//
// Tasks: extend, jacobian, fibers, homology, symmetry, jumps, verdict,
// counterexamples, hypersurface.  Reports are JSON ({meta, config_echo,
// evidence, verdict?}); curves go to CSV next to the report.
//
// Exit codes: 0 success, 1 task error, 2 config error, 3 nondegenerate
// witness, 4 inconclusive.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "crfolio/catalog.hpp"
#include "crfolio/extension.hpp"
#include "crfolio/hypersurface.hpp"
#include "crfolio/jacobian.hpp"
#include "crfolio/topology.hpp"
#include "crfolio/verify.hpp"

using json = nlohmann::ordered_json;
using namespace crfolio;

namespace {

json to_json(cx z) { return json::array({z.real(), z.imag()}); }

cx cx_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + " must be a [re, im] pair");
  return cx(j[0].get<double>(), j[1].get<double>());
}

double num_or(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number())
    throw ConfigError(std::string("key '") + key + "' must be a number");
  return j[key].get<double>();
}

DiscFamily family_from_config(const json& cfg) {
  if (!cfg.contains("family") || !cfg["family"].is_object())
    throw ConfigError("missing 'family' object");
  const json& f = cfg["family"];
  if (!f.contains("builder") || !f["builder"].is_string())
    throw ConfigError("missing 'family.builder'");
  std::string builder = f["builder"].get<std::string>();
  int res = (int)num_or(f, "resolution", 256);

  if (builder == "rotating_circles")
    return build_rotating_circles(num_or(f, "R", 1.0), num_or(f, "r", 2.0),
                                  res);
  if (builder == "translated_circles") {
    if (!f.contains("center_path") || !f["center_path"].is_array())
      throw ConfigError("'family.center_path' must be an array of [re, im]");
    std::vector<cx> path;
    for (const auto& p : f["center_path"])
      path.push_back(cx_of(p, "center_path entry"));
    return build_translated_circles(num_or(f, "rho", 1.0), path, res);
  }
  if (builder == "tangent_lines")
    return build_tangent_lines(num_or(f, "ball_radius", 1.0),
                               num_or(f, "inner_radius", 0.5), res);
  if (builder == "hopf_discs") return build_hopf_discs(res);
  if (builder == "custom") {
    if (!f.contains("taylor_table") || !f["taylor_table"].is_array())
      throw ConfigError("'family.taylor_table' must be an array");
    int dim = (int)num_or(f, "ambient_dim", 1);
    std::string kind = f.value("params", "Interval");
    ParamKind pk = kind == "Circle" ? ParamKind::Circle : ParamKind::Interval;
    // taylor_table[node][component] = list of [re, im] coefficients
    std::vector<std::vector<Poly>> table;
    for (const auto& row : f["taylor_table"]) {
      if (!row.is_array()) throw ConfigError("taylor_table rows must be arrays");
      std::vector<Poly> comps;
      for (const auto& comp : row) {
        if (!comp.is_array())
          throw ConfigError("taylor_table components must be coefficient arrays");
        Poly p;
        for (const auto& c : comp) p.push_back(cx_of(c, "taylor coefficient"));
        comps.push_back(std::move(p));
      }
      table.push_back(std::move(comps));
    }
    return build_custom(table, ParamSpace(pk, (int)table.size()), dim);
  }
  throw ConfigError("unknown family builder '" + builder + "'");
}

BoundaryFunction function_from_config(const json& cfg, int arity) {
  if (!cfg.contains("function") || !cfg["function"].is_string())
    throw ConfigError("missing 'function' string");
  return make_function(cfg["function"].get<std::string>(), arity);
}

int circle_n_of(const json& cfg) {
  if (!cfg.contains("grids")) return 256;
  return (int)num_or(cfg["grids"], "circle_n", 256);
}

JacobianField jacobian_from_config(const json& cfg, const DiscFamily& fam,
                                   ExtensionField& ext_out, bool& have_ext) {
  have_ext = false;
  if (cfg.contains("synthetic_j")) {
    if (!cfg["synthetic_j"].is_array())
      throw ConfigError("'synthetic_j' must be an array of [re, im]");
    Poly p;
    for (const auto& c : cfg["synthetic_j"])
      p.push_back(cx_of(c, "synthetic_j coefficient"));
    return synthetic_J(fam, [p](double) { return p; });
  }
  BoundaryFunction f = function_from_config(cfg, fam.ambient_dim);
  ext_out = analyze(f, fam, circle_n_of(cfg));
  have_ext = true;
  return compute_J(ext_out);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

json regularity_json(const RegularityReport& r) {
  return json{{"interior_rank_ok", r.interior_rank_ok},
              {"boundary_rank_histogram",
               {r.boundary_rank_histogram[0], r.boundary_rank_histogram[1],
                r.boundary_rank_histogram[2]}},
              {"critical_on_boundary", r.critical_on_boundary},
              {"min_interior_jacobian", r.min_interior_jacobian},
              {"samples_interior", r.samples_interior},
              {"samples_boundary", r.samples_boundary}};
}

json homology_json(const HomologyVerdict& h) {
  json probes = json::array(), windings = json::array();
  for (cx b : h.probes_used) probes.push_back(to_json(b));
  for (int w : h.central_image_winding) windings.push_back(w);
  json out{{"condition_a", h.condition_a},
           {"condition_iii", h.condition_iii},
           {"probes_used", probes},
           {"central_image_winding", windings},
           {"cross_check_ok", h.cross_check_ok},
           {"raster_cell", h.raster_cell}};
  if (h.certifying_probe) out["certifying_probe"] = to_json(*h.certifying_probe);
  if (!h.condition_a) out["common_point"] = to_json(h.common_point);
  return out;
}

json symmetry_json(const SymmetryReport& s) {
  return json{{"b", to_json(s.b)},          {"lhs", s.lhs},
              {"rhs", s.rhs},               {"abs_gap", s.abs_gap},
              {"admissible", s.admissible}, {"fiber_components", s.fiber_components}};
}

struct TaskResult {
  json evidence;
  json verdict;  // null unless the verdict task ran
  int exit_code = 0;
};

TaskResult task_extend(const json& cfg, const std::filesystem::path& out_dir) {
  DiscFamily fam = family_from_config(cfg);
  BoundaryFunction f = function_from_config(cfg, fam.ambient_dim);
  ExtensionField ext = analyze(f, fam, circle_n_of(cfg));
  double moment = moment_test(f, fam, 8, circle_n_of(cfg));
  TaskResult res;
  res.evidence = {{"residual", ext.residual},
                  {"tolerance", ext.tolerance},
                  {"boundary_rms", ext.boundary_rms},
                  {"extendible", ext.extendible()},
                  {"max_moment_power_8", moment}};
  std::ostringstream csv;
  csv << "node,residual\n";
  for (size_t i = 0; i < ext.residual_t.size(); ++i)
    csv << i << "," << ext.residual_t[i] << "\n";
  write_text(out_dir / "extension_residuals.csv", csv.str());
  return res;
}

TaskResult task_jacobian(const json& cfg, const std::filesystem::path& out_dir) {
  DiscFamily fam = family_from_config(cfg);
  ExtensionField ext;
  bool have_ext = false;
  JacobianField J = jacobian_from_config(cfg, fam, ext, have_ext);
  ZeroChain chain = track_zeros(J);
  ThetaField th = theta_field(J, circle_n_of(cfg));
  TaskResult res;
  json branches = json::array();
  std::ostringstream csv;
  csv << "t,re_zeta,im_zeta,kappa,branch_id\n";
  for (size_t bi = 0; bi < chain.branches.size(); ++bi) {
    const auto& br = chain.branches[bi];
    branches.push_back({{"kappa", br.kappa},
                        {"closed", br.closed},
                        {"samples", br.nodes.size()},
                        {"on_boundary", br.on_boundary}});
    for (size_t i = 0; i < br.nodes.size(); ++i)
      csv << fam.params.node(br.nodes[i]) << "," << br.zeta[i].real() << ","
          << br.zeta[i].imag() << "," << br.kappa << "," << bi << "\n";
  }
  write_text(out_dir / "zero_chain.csv", csv.str());
  res.evidence = {{"scale", J.scale},
                  {"central_cycle_present", chain.central_cycle_present},
                  {"zero_disc_nodes", chain.zero_disc_nodes},
                  {"branches", branches},
                  {"theta_degenerate", th.degenerate},
                  {"theta_compatibility_residual", th.compatibility_residual},
                  {"theta_pairs_compared", th.pairs_compared}};
  if (have_ext) res.evidence["extension_residual"] = ext.residual;
  return res;
}

TaskResult task_fibers(const json& cfg, const std::filesystem::path& out_dir) {
  DiscFamily fam = family_from_config(cfg);
  if (!cfg.contains("probes") || !cfg["probes"].is_array())
    throw ConfigError("'probes' must be an array of [re, im]");
  TaskResult res;
  json list = json::array();
  std::ostringstream csv;
  csv << "probe,component,t,re_zeta,im_zeta\n";
  int probe_id = 0;
  for (const auto& pj : cfg["probes"]) {
    cx b = cx_of(pj, "probe");
    auto fibers = trace_fiber(fam, b);
    double defect = 0.0;
    int comp = 0;
    for (const auto& fib : fibers) {
      for (size_t i = 0; i < fib.t.size(); ++i) {
        defect = std::max(
            defect,
            std::abs(fam.eval(fib.zeta[i], std::fmod(fib.t[i], kTwoPi)) - b));
        csv << probe_id << "," << comp << "," << fib.t[i] << ","
            << fib.zeta[i].real() << "," << fib.zeta[i].imag() << "\n";
      }
      ++comp;
    }
    list.push_back({{"b", to_json(b)},
                    {"components", (int)fibers.size()},
                    {"max_defect", defect}});
    ++probe_id;
  }
  write_text(out_dir / "fibers.csv", csv.str());
  res.evidence = {{"fibers", list}};
  return res;
}

TaskResult task_homology(const json& cfg, const std::filesystem::path&) {
  DiscFamily fam = family_from_config(cfg);
  TaskResult res;
  res.evidence = {{"homology", homology_json(homology_test(fam))}};
  return res;
}

TaskResult task_symmetry(const json& cfg, const std::filesystem::path&) {
  DiscFamily fam = family_from_config(cfg);
  ExtensionField ext;
  bool have_ext = false;
  JacobianField J = jacobian_from_config(cfg, fam, ext, have_ext);
  ZeroChain chain = track_zeros(J);
  if (!cfg.contains("probes") || !cfg["probes"].is_array())
    throw ConfigError("'probes' must be an array of [re, im]");
  json reports = json::array();
  for (const auto& pj : cfg["probes"])
    reports.push_back(
        symmetry_json(symmetry_relation(J, chain, fam, cx_of(pj, "probe"))));
  TaskResult res;
  res.evidence = {{"symmetry", reports}};
  return res;
}

TaskResult task_jumps(const json& cfg, const std::filesystem::path& out_dir) {
  DiscFamily fam = family_from_config(cfg);
  ExtensionField ext;
  bool have_ext = false;
  JacobianField J = jacobian_from_config(cfg, fam, ext, have_ext);
  ZeroChain chain = track_zeros(J);
  if (!cfg.contains("path") || !cfg["path"].is_array())
    throw ConfigError("'path' must be an array of [re, im] vertices");
  std::vector<cx> path;
  for (const auto& pj : cfg["path"]) path.push_back(cx_of(pj, "path vertex"));
  int n_probes = (int)num_or(cfg, "n_probes", 50);
  JumpProfile prof = jump_profile(J, chain, fam, path, n_probes);
  json rows = json::array(), events = json::array();
  std::ostringstream csv;
  csv << "re_b,im_b,admissible,re_chi,im_chi,Z,re_N,im_N\n";
  for (size_t i = 0; i < prof.probes.size(); ++i) {
    rows.push_back({{"b", to_json(prof.probes[i])},
                    {"admissible", (bool)prof.admissible[i]},
                    {"chi", to_json(prof.chi[i])},
                    {"Z", prof.Z[i]},
                    {"N", to_json(prof.N[i])}});
    csv << prof.probes[i].real() << "," << prof.probes[i].imag() << ","
        << (int)prof.admissible[i] << "," << prof.chi[i].real() << ","
        << prof.chi[i].imag() << "," << prof.Z[i] << "," << prof.N[i].real()
        << "," << prof.N[i].imag() << "\n";
  }
  for (const auto& e : prof.jump_events)
    events.push_back({{"segment", e.segment}, {"signed_kappa", e.signed_kappa}});
  write_text(out_dir / "jumps.csv", csv.str());
  TaskResult res;
  res.evidence = {{"probes", rows}, {"jump_events", events}};
  return res;
}

TaskResult task_verdict(const json& cfg, const std::filesystem::path&,
                        std::uint64_t seed) {
  DiscFamily fam = family_from_config(cfg);
  BoundaryFunction f = function_from_config(cfg, fam.ambient_dim);
  VerdictOptions opts;
  opts.circle_n = circle_n_of(cfg);
  opts.seed = seed;
  VerdictReport rep = run_verdict(f, fam, opts);
  TaskResult res;
  json sym = json::array();
  for (const auto& s : rep.symmetry) sym.push_back(symmetry_json(s));
  res.evidence = {{"builder", rep.builder},
                  {"builder_params", rep.builder_params},
                  {"function", rep.function_name},
                  {"ambient_dim", rep.ambient_dim},
                  {"extension_residual", rep.extension_residual},
                  {"extension_tolerance", rep.extension_tolerance},
                  {"regularity", regularity_json(rep.regularity)},
                  {"condition_a", rep.condition_a},
                  {"j_max_rel", rep.j_max_rel},
                  {"theta_compatibility", rep.theta_compatibility},
                  {"fiber_spread", rep.fiber_spread},
                  {"cr_residual", rep.cr_residual},
                  {"symmetry", sym}};
  if (rep.homology) res.evidence["homology"] = homology_json(*rep.homology);
  res.verdict = {{"verdict", verdict_name(rep.verdict)}, {"detail", rep.detail}};
  if (rep.verdict == Verdict::NondegenerateWitness) res.exit_code = 3;
  if (rep.verdict == Verdict::Inconclusive) res.exit_code = 4;
  return res;
}

TaskResult task_counterexamples(const json&, const std::filesystem::path&) {
  SuiteReport suite = counterexample_suite();
  json rows = json::array();
  for (const auto& a : suite.assertions)
    rows.push_back({{"name", a.name}, {"pass", a.pass}, {"value", a.value}});
  TaskResult res;
  res.evidence = {{"assertions", rows}, {"all_pass", suite.all_pass}};
  if (!suite.all_pass) res.exit_code = 1;
  return res;
}

TaskResult task_hypersurface(const json& cfg, const std::filesystem::path&) {
  DiscFamily fam = family_from_config(cfg);
  Hypersurface surf = make_surface(cfg.value("surface", "sphere"));
  TaskResult res;
  KRealityReport k = k_mu_reality(fam, surf);
  res.evidence = {{"k_reality_max_rel_imag", k.max_rel_imag},
                  {"k_reality_samples", k.samples},
                  {"surface_incidence", k.max_incidence}};
  if (cfg.contains("function")) {
    BoundaryFunction f = function_from_config(cfg, 2);
    ExtensionField ext = analyze(f, fam, circle_n_of(cfg));
    MinorField minors = compute_minors(ext);
    res.evidence["extension_residual"] = ext.residual;
    res.evidence["minor_center_max"] = minors.center_max;
    res.evidence["lemma34_consistent"] = lemma34_check(minors);
    if (cfg.contains("samples")) {
      std::vector<std::array<cx, 2>> pts;
      for (const auto& s : cfg["samples"]) {
        if (!s.is_array() || s.size() != 2)
          throw ConfigError("'samples' entries must be [[re,im],[re,im]]");
        pts.push_back({cx_of(s[0], "sample"), cx_of(s[1], "sample")});
      }
      res.evidence["tangential_cr_residual"] =
          tangential_cr_residual(f, surf, pts);
    }
  }
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for analytic-disc families"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> task_names = {
      {"extend", "per-disc holomorphic extension and moment test"},
      {"jacobian", "Jacobian field, zero chains and the phase field"},
      {"fibers", "trace preimage fibers and boundary degrees"},
      {"homology", "closed-disc intersection / nontriviality test"},
      {"symmetry", "chain-winding vs fiber phase-variation relation"},
      {"jumps", "jump counting along a planar path"},
      {"verdict", "end-to-end verdict pipeline"},
      {"counterexamples", "run the builtin counterexample suite"},
      {"hypersurface", "minor fields and Cramer-factor reality checks"}};
  std::string chosen;
  for (const auto& [name, blurb] : task_names) {
    auto* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config", config_path, "JSON config path")
        ->required(name != "counterexamples");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed for randomized probes");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* list_cmd = app.add_subcommand("list", "print the builtin catalog");
  list_cmd->callback([&chosen] { chosen = "list"; });

  CLI11_PARSE(app, argc, argv);

  if (chosen == "list") {
    std::cout << list_catalog();
    return 0;
  }

  json cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open '" << config_path << "'\n";
      return 2;
    }
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "config error at byte " << e.byte << ": " << e.what()
                << "\n";
      return 2;
    }
    if (!cfg.contains("schema") || !cfg["schema"].is_number_integer() ||
        cfg["schema"].get<int>() != 1) {
      std::cerr << "config error: 'schema' must be the integer 1\n";
      return 2;
    }
  } else {
    cfg = json{{"schema", 1}};
  }

  std::filesystem::path out(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);

  json report;
  report["meta"] = {{"tool", "crfolio"},
                    {"version", "1.0.0"},
                    {"task", chosen},
                    {"seed", seed},
                    {"timestamp",
                     (long long)std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count()}};
  report["config_echo"] = cfg;

  TaskResult result;
  try {
    if (chosen == "extend") result = task_extend(cfg, out);
    else if (chosen == "jacobian") result = task_jacobian(cfg, out);
    else if (chosen == "fibers") result = task_fibers(cfg, out);
    else if (chosen == "homology") result = task_homology(cfg, out);
    else if (chosen == "symmetry") result = task_symmetry(cfg, out);
    else if (chosen == "jumps") result = task_jumps(cfg, out);
    else if (chosen == "verdict") result = task_verdict(cfg, out, seed);
    else if (chosen == "counterexamples") result = task_counterexamples(cfg, out);
    else if (chosen == "hypersurface") result = task_hypersurface(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    report["error"] = {{"type", "task_error"}, {"message", e.what()}};
    write_text(out / "report.json", report.dump(2) + "\n");
    std::cerr << "task error: " << e.what() << "\n";
    return 1;
  }

  report["evidence"] = result.evidence;
  if (!result.verdict.is_null()) report["verdict"] = result.verdict;
  write_text(out / "report.json", report.dump(2) + "\n");
  std::cout << (result.verdict.is_null()
                    ? json{{"task", chosen}, {"ok", result.exit_code == 0}}
                    : result.verdict)
                   .dump()
            << "\n";
  return result.exit_code;
}
