#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include <orbitsp/catalog.hpp>
#include <orbitsp/cones.hpp>
#include <orbitsp/coxeter.hpp>
#include <orbitsp/polar.hpp>
#include <orbitsp/polytope.hpp>

#ifndef ORBITSP_VERSION
#define ORBITSP_VERSION "0.0.0"
#endif

namespace orbitsp::cli {

using json = nlohmann::ordered_json;

const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"orbit", Command::Orbit},
      {"hull", Command::Hull},
      {"minkowski", Command::Minkowski},
      {"cone", Command::Cone},
      {"voronoi-check", Command::VoronoiCheck},
      {"coxeter-check", Command::CoxeterCheck},
      {"sp-check", Command::SpCheck},
      {"theorem2", Command::Theorem2},
      {"polar-verify", Command::PolarVerify},
      {"catalog", Command::Catalog},
  };
  return names;
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_names())
    if (cmd == c) return name;
  return "unknown";
}

namespace {

constexpr std::size_t kDefaultSamples = 1000;
constexpr std::size_t kMaxWitnesses = 10;

Tolerance make_tolerance(double eps) {
  Tolerance tol;
  tol.eps_eq = eps;
  tol.eps_rank = 10.0 * eps;
  try {
    tol.validate();
  } catch (const InvalidTolerance& e) {
    throw InputError(std::string("tolerance: ") + e.what());
  }
  return tol;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_entry(const json& e, const std::string& where) {
  if (e.is_number()) return e.get<double>();
  if (e.is_string()) {
    const std::string s = e.get<std::string>();
    double x = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc{} || ptr != end || !std::isfinite(x)) {
      throw InputError(where + ": cannot read \"" + s + "\" as a number");
    }
    return x;
  }
  throw InputError(where + ": expected a number or a decimal string");
}

Vec parse_vector(const json& v, int dim, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  if (static_cast<int>(v.size()) != dim) {
    throw InputError(where + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
  }
  Vec out(dim);
  for (int i = 0; i < dim; ++i) out(i) = parse_entry(v[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  return out;
}

Mat parse_matrix(const json& m, int dim, const std::string& where) {
  if (!m.is_array()) throw InputError(where + ": expected an array of rows");
  if (static_cast<int>(m.size()) != dim) {
    throw InputError(where + ": expected " + std::to_string(dim) + " rows, got " + std::to_string(m.size()));
  }
  Mat out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    out.row(r) = parse_vector(m[static_cast<std::size_t>(r)], dim, where + " row " + std::to_string(r)).transpose();
  }
  return out;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json points_json(const std::vector<Vec>& pts) {
  json a = json::array();
  for (const Vec& p : pts) a.push_back(vec_json(p));
  return a;
}

json matrix_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
  return a;
}

json polytope_json(const Polytope& p) {
  json facets = json::array();
  for (const Facet& f : p.facets()) facets.push_back({{"normal", vec_json(f.normal)}, {"offset", f.offset}});
  return {{"ambient_dim", p.ambient_dim()},
          {"affine_dim", p.affine_dim()},
          {"vertices", points_json(p.vertices())},
          {"facets", std::move(facets)}};
}

json cone_json(const PolyhedralCone& c) {
  return {{"ambient_dim", c.ambient_dim()},
          {"normals", points_json(c.halfspace_normals())},
          {"rays", points_json(c.rays())},
          {"lineality_dim", c.lineality_dim()},
          {"full_dimensional", c.full_dimensional()}};
}

json outcome_json(const CriterionOutcome& o) {
  return {{"holds", o.holds}, {"samples", o.samples}, {"note", o.note}};
}

struct Source {
  FiniteGroup group;
  std::vector<Vec> vectors;
  std::string label;
};

// Input-side failures of the group file or catalog name.
Source load_group(const RunConfig& config) {
  if (config.input_path && config.model_name) throw InputError("give either --input or --model, not both");
  if (config.input_path) {
    std::ifstream in(*config.input_path);
    if (!in) throw InputError(*config.input_path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    GroupInput parsed = parse_group_json(buf.str(), config.tolerance);
    return {std::move(parsed.group), std::move(parsed.vectors), *config.input_path};
  }
  if (config.model_name) {
    const auto entry = find_catalog_entry(*config.model_name);
    if (!entry) throw InputError("unknown catalog group '" + *config.model_name + "'");
    return {build_group(*entry, make_tolerance(config.tolerance.value_or(1e-9))), {}, entry->name};
  }
  throw InputError("this command needs --input PATH or --model NAME");
}

Vec first_vector(const Source& src, std::uint64_t seed) {
  if (!src.vectors.empty()) return src.vectors.front();
  return find_regular(src.group, seed);
}

struct Outcome {
  bool verdict = false;
  json criteria = json::object();
  json witnesses = json::array();
  json timings = json::object();
  json result = json::object();
  std::string group_name;
  std::optional<double> tolerance;
};

void export_off(const RunConfig& config, const Polytope& p) {
  if (!config.export_off_path) return;
  if (p.ambient_dim() != 3 || p.affine_dim() != 3) {
    throw InputError("--export-off needs a full-dimensional hull in R^3 (got dimension " +
                     std::to_string(p.affine_dim()) + " in R^" + std::to_string(p.ambient_dim()) + ")");
  }
  std::ofstream os(*config.export_off_path);
  if (!os) throw InputError(*config.export_off_path + ": cannot write file");
  write_off(os, p);
}

Outcome cmd_orbit(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const Vec v = first_vector(src, config.seed);
  const Orbit o = orbit(g, v);
  const FiniteGroup stab = stabilizer(g, v);
  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = stab.order() == 1;
  out.criteria["regular"] = {{"holds", out.verdict}, {"stabilizer_order", stab.order()}};
  out.criteria["orbit_stabilizer"] = {{"holds", o.size() * stab.order() == g.order()},
                                      {"orbit_size", o.size()},
                                      {"group_order", g.order()}};
  for (std::size_t i = 1; i < stab.elements.size() && out.witnesses.size() < kMaxWitnesses; ++i) {
    out.witnesses.push_back({{"kind", "stabilizer_element"}, {"matrix", matrix_json(stab.elements[i].matrix())}});
  }
  out.result = {{"base", vec_json(v)}, {"points", points_json(o.points)}};
  out.timings = {{"group_elements", g.order()}, {"orbit_points", o.size()}};
  return out;
}

Outcome cmd_hull(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const Vec v = first_vector(src, config.seed);
  const Orbit o = orbit(g, v);
  const Polytope p = hull(o.points, g.tol);
  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = p.affine_dim() == g.dim;
  out.criteria["full_dimensional"] = {{"holds", out.verdict}, {"affine_dim", p.affine_dim()}};
  out.criteria["orbit_points_are_vertices"] = {{"holds", p.vertices().size() == o.size()},
                                               {"vertices", p.vertices().size()},
                                               {"orbit_size", o.size()}};
  out.result = {{"base", vec_json(v)}, {"polytope", polytope_json(p)}};
  out.timings = {{"orbit_points", o.size()}, {"facets", p.facets().size()}};
  export_off(config, p);
  return out;
}

std::pair<Vec, Vec> pair_from(const Source& src, std::uint64_t seed) {
  if (src.vectors.size() >= 2) return {src.vectors[0], src.vectors[1]};
  if (src.vectors.size() == 1) return {src.vectors[0], find_regular(src.group, seed)};
  return {find_regular(src.group, seed), find_regular(src.group, seed + 1)};
}

Outcome cmd_minkowski(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const auto [u, v] = pair_from(src, config.seed);
  const Polytope pu = hull(orbit(g, u).points, g.tol);
  const Polytope pv = hull(orbit(g, v).points, g.tol);
  const Polytope sum = minkowski_sum(pu, pv, g.tol);

  const std::size_t n_dirs = config.samples.value_or(kDefaultSamples);
  Rng rng(config.seed);
  double worst = 0.0;
  Vec worst_dir;
  for (std::size_t s = 0; s < n_dirs; ++s) {
    const Vec d = rng.unit_vec(g.dim);
    const double gap = std::abs(support(sum, d, g.tol).mu - support(pu, d, g.tol).mu - support(pv, d, g.tol).mu);
    if (gap > worst) {
      worst = gap;
      worst_dir = d;
    }
  }
  const PairCheck pc = sp_check_pair(g, u, v, g.tol);

  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = pc.holds;
  out.criteria["support_additive"] = {{"holds", worst <= 1e-8}, {"directions", n_dirs}, {"max_gap", worst}};
  out.criteria["sum_is_orbit_hull"] = {{"holds", pc.holds}, {"sum_vertices", pc.sum_vertices}, {"scanned", pc.scanned}};
  if (pc.holds) {
    out.witnesses.push_back({{"kind", "representative"}, {"v_prime", vec_json(pc.representative)}});
  } else {
    out.witnesses.push_back({{"kind", "non_orbit_sum"}, {"u", vec_json(u)}, {"v", vec_json(v)},
                             {"sum_vertices", pc.sum_vertices}, {"orbit_size_bound", g.order()}});
  }
  if (worst > 1e-8) out.witnesses.push_back({{"kind", "support_gap"}, {"direction", vec_json(worst_dir)}});
  out.result = {{"u", vec_json(u)}, {"v", vec_json(v)}, {"sum", polytope_json(sum)}};
  out.timings = {{"support_directions", n_dirs}, {"candidates_scanned", pc.scanned}};
  export_off(config, sum);
  return out;
}

Outcome cmd_cone(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const Vec v = first_vector(src, config.seed);
  const PolyhedralCone c = orbit_cone(g, v);
  const PolyhedralCone d = dual_cone(c, g.tol);
  const Orbit o = orbit(g, v);
  std::vector<Vec> inside;
  for (const Vec& p : o.points)
    if (cone_contains(c, p, g.tol)) inside.push_back(p);
  const bool reflexive = cone_equal(dual_cone(d, g.tol), c, g.tol);
  const bool interior = c.lineality_dim() == 0 && c.full_dimensional();

  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = inside.size() == 1 && reflexive;
  out.criteria["orbit_meets_cone_once"] = {{"holds", inside.size() == 1}, {"orbit_points_in_cone", inside.size()}};
  out.criteria["dual_reflexive"] = {{"holds", reflexive}};
  out.criteria["nonempty_interior"] = {{"holds", interior}, {"regular", is_regular(g, v)}};
  if (inside.size() > 1) out.witnesses.push_back({{"kind", "orbit_points_in_cone"}, {"points", points_json(inside)}});
  out.result = {{"base", vec_json(v)}, {"cone", cone_json(c)}, {"dual", cone_json(d)}};
  out.timings = {{"orbit_points", o.size()}, {"normals", c.halfspace_normals().size()}};
  return out;
}

Outcome cmd_voronoi(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const Vec v = first_vector(src, config.seed);
  const std::size_t n = config.samples.value_or(kDefaultSamples);
  const VoronoiReport rep = voronoi_consistency(g, v, n, config.seed, g.tol);

  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = rep.passed();
  out.criteria["voronoi_consistency"] = {{"holds", rep.passed()},
                                         {"samples", rep.n_samples},
                                         {"ties", rep.n_ties},
                                         {"violations", rep.violations.size()}};
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxWitnesses; ++i) {
    const VoronoiViolation& w = rep.violations[i];
    out.witnesses.push_back({{"kind", "voronoi_violation"}, {"sample", vec_json(w.sample)},
                             {"orbit_point", w.orbit_point}, {"nearest", w.nearest}, {"member", w.member}});
  }
  out.result = {{"base", vec_json(v)}};
  out.timings = {{"samples", n}};
  return out;
}

Outcome cmd_coxeter(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  const std::vector<Reflection> refl = reflections(g);
  const bool generated = is_reflection_generated(g);

  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  out.verdict = generated;
  out.criteria["reflection_generated"] = {{"holds", generated}, {"reflections", refl.size()}, {"group_order", g.order()}};
  json normals = json::array();
  for (const Reflection& r : refl) normals.push_back(vec_json(r.normal));
  out.result["reflection_normals"] = std::move(normals);
  std::size_t reconstructed = 0;
  if (generated && g.order() > 1) {
    const Vec v_reg = find_regular(g, config.seed);
    const ChamberData ch = chamber(g, v_reg);
    std::vector<Vec> points{v_reg};
    for (const Vec& r : ch.fundamental_rays) points.push_back(r);
    bool all_equal = true;
    for (const Vec& p : points) {
      ++reconstructed;
      if (!polytope_equal(hull_via_chamber(g, p, ch), hull(orbit(g, p).points, g.tol), g.tol)) {
        all_equal = false;
        out.witnesses.push_back({{"kind", "chamber_reconstruction_mismatch"}, {"point", vec_json(p)}});
      }
    }
    out.criteria["chamber_reconstruction"] = {{"holds", all_equal}, {"points", points.size()}};
    out.result["chamber"] = {{"base_regular", vec_json(v_reg)},
                             {"simple_normals", points_json(ch.simple_normals)},
                             {"fundamental_rays", points_json(ch.fundamental_rays)}};
  } else if (!generated) {
    out.witnesses.push_back({{"kind", "reflection_subgroup"},
                             {"reflections", refl.size()},
                             {"note", "reflections generate a proper subgroup"}});
  }
  out.timings = {{"group_elements", g.order()}, {"hulls_compared", reconstructed}};
  return out;
}

Outcome cmd_sp_check(const RunConfig& config) {
  const Source src = load_group(config);
  const FiniteGroup& g = src.group;
  std::vector<std::pair<Vec, Vec>> pairs;
  if (src.vectors.size() >= 2) {
    for (std::size_t i = 0; i < src.vectors.size(); ++i)
      for (std::size_t j = i + 1; j < src.vectors.size(); ++j) pairs.emplace_back(src.vectors[i], src.vectors[j]);
  } else {
    Rng rng(config.seed);
    const std::size_t n = config.samples.value_or(25);
    for (std::size_t k = 0; k < n; ++k) {
      Vec a = rng.normal_vec(g.dim);
      Vec b = rng.normal_vec(g.dim);
      pairs.emplace_back(std::move(a), std::move(b));
    }
  }
  Outcome out;
  out.group_name = g.name;
  out.tolerance = g.tol.eps_eq;
  std::size_t failures = 0;
  std::size_t scanned = 0;
  for (const auto& [u, v] : pairs) {
    const PairCheck pc = sp_check_pair(g, u, v, g.tol);
    scanned += pc.scanned;
    if (!pc.holds) {
      ++failures;
      if (out.witnesses.size() < kMaxWitnesses) {
        out.witnesses.push_back({{"kind", "sp_failure"}, {"u", vec_json(u)}, {"v", vec_json(v)},
                                 {"sum_vertices", pc.sum_vertices}});
      }
    }
  }
  out.verdict = failures == 0;
  out.criteria["sp"] = {{"holds", out.verdict}, {"pairs", pairs.size()}, {"failures", failures}};
  out.timings = {{"pairs", pairs.size()}, {"candidates_scanned", scanned}};
  return out;
}

void fill_theorem2(Outcome& out, const SPReport& r) {
  out.group_name = r.group;
  out.verdict = r.verdict;
  out.criteria["sp"] = outcome_json(r.sp);
  out.criteria["peak_unique"] = outcome_json(r.peak_i);
  out.criteria["coxeter"] = outcome_json(r.coxeter_ii);
  out.criteria["coxeter"]["reflections"] = r.reflection_count;
  out.criteria["coxeter"]["reflection_subgroup_order"] = r.reflection_subgroup_order;
  out.criteria["local_cone"] = outcome_json(r.local_cone_iii);
  out.criteria["consistent"] = r.consistent;
  auto add = [&](const char* name, const CriterionOutcome& o) {
    if (!o.witness.empty()) out.witnesses.push_back({{"criterion", name}, {"points", points_json(o.witness)}});
  };
  add("sp", r.sp);
  add("peak_unique", r.peak_i);
  add("local_cone", r.local_cone_iii);
  for (const PairFailure& f : r.sp_failures) {
    out.witnesses.push_back({{"criterion", "sp_failure"}, {"u", vec_json(f.u)}, {"v", vec_json(f.v)}});
  }
  out.result = {{"v_reg", vec_json(r.v_reg)}};
  out.timings = {{"sp_pairs", r.sp.samples},
                 {"peak_points", r.peak_i.samples},
                 {"local_cone_samples", r.local_cone_iii.samples}};
}

json maybe_vec_json(const Vec& v) { return v.size() ? vec_json(v) : json(nullptr); }

Outcome cmd_polar(const RunConfig& config) {
  if (config.input_path) throw InputError("polar-verify takes --model NAME, not --input");
  if (!config.model_name) throw InputError("polar-verify needs --model NAME");
  const auto& names = model_names();
  if (std::find(names.begin(), names.end(), *config.model_name) == names.end()) {
    throw InputError("unknown model '" + *config.model_name + "'");
  }
  const GroupModel model = make_model(*config.model_name);
  PolarPlan plan;
  if (config.samples) plan.projection_samples = *config.samples;
  const PolarVerification pv = polar_verify(model, config.seed, plan);

  Outcome out;
  out.group_name = model.name;
  out.verdict = pv.verdict;
  out.criteria["condition_B"] = {{"holds", pv.condition_b.passed},
                                 {"points", pv.condition_b.n_samples},
                                 {"max_residual", pv.condition_b.max_residual}};
  out.criteria["condition_A"] = {{"holds", pv.condition_a.passed},
                                 {"points", pv.condition_a.n_samples},
                                 {"group_samples", pv.condition_a.n_group_samples},
                                 {"max_min_distance", pv.condition_a.max_min_distance},
                                 {"note", "falsification-only"}};
  if (pv.has_weyl) {
    out.criteria["projection_is_weyl_hull"] = {{"holds", pv.projection_hull.passed},
                                               {"samples", pv.projection_hull.n_samples},
                                               {"violations", pv.projection_hull.violations},
                                               {"max_violation", pv.projection_hull.max_violation},
                                               {"hull_vertices", pv.projection_hull.hull_vertices},
                                               {"vertex_error", pv.projection_hull.vertex_error}};
    out.criteria["orbit_meets_cartan_in_weyl_orbit"] = {{"holds", pv.cartan_meet.passed},
                                                        {"group_samples", pv.cartan_meet.n_group_samples},
                                                        {"near_cartan", pv.cartan_meet.n_near},
                                                        {"max_weyl_distance", pv.cartan_meet.max_weyl_distance},
                                                        {"lift_error", pv.cartan_meet.lift_error},
                                                        {"note", "falsification-only"}};
    out.criteria["slice_of_sum"] = {{"holds", pv.slice_of_sum.passed},
                                    {"directions", pv.slice_of_sum.n_dirs},
                                    {"max_gap", pv.slice_of_sum.max_gap}};
    out.criteria["weyl_is_coxeter"] = {{"holds", pv.weyl_coxeter}};
  }
  if (model.name == "sym3_traceless") {
    out.criteria["trace_conservation"] = {{"holds", pv.trace_residual < 1e-10}, {"max_residual", pv.trace_residual}};
  }
  out.criteria["sp_obstruction"] = {{"holds", !pv.falsify.sp_impossible},
                                    {"sum_affine_dim", pv.falsify.sum_dim},
                                    {"max_orbit_hull_dim", pv.falsify.max_orbit_dim},
                                    {"dim_u", pv.falsify.dim_u},
                                    {"dim_v", pv.falsify.dim_v}};
  out.witnesses.push_back({{"kind", "condition_B_worst_point"}, {"point", maybe_vec_json(pv.condition_b.worst_point)}});
  out.witnesses.push_back({{"kind", "condition_A_worst_point"}, {"point", maybe_vec_json(pv.condition_a.worst_point)}});
  if (pv.has_weyl) {
    out.witnesses.push_back({{"kind", "slice_of_sum_worst_direction"}, {"direction", maybe_vec_json(pv.slice_of_sum.worst_direction)}});
  }
  if (pv.falsify.sp_impossible) {
    out.witnesses.push_back({{"kind", "sp_obstruction"}, {"u", vec_json(model.default_a)}, {"v", vec_json(model.default_b)}});
  }
  out.result = {{"model", model.name},
                {"description", model.description},
                {"ambient_dim", model.ambient_dim},
                {"cartan_dim", model.cartan_dim()},
                {"polar_expected", model.is_polar_expected},
                {"a", vec_json(model.default_a)},
                {"b", vec_json(model.default_b)}};
  out.timings = {{"condition_B_points", plan.condition_b_points},
                 {"condition_A_group_samples", plan.condition_a_points * plan.condition_a_group_samples},
                 {"projection_samples", plan.projection_samples},
                 {"slice_directions", plan.slice_dirs}};
  return out;
}

json fixture_object(const CatalogEntry& e) {
  json gens = json::array();
  for (const Mat& m : e.generators) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_double(m(r, c)));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  return {{"name", e.name}, {"dim", e.dim}, {"generators", std::move(gens)}};
}

Outcome cmd_catalog(const RunConfig& config) {
  Outcome out;
  out.verdict = true;
  json groups = json::array();
  auto describe = [&](const CatalogEntry& e) {
    const FiniteGroup g = build_group(e, make_tolerance(config.tolerance.value_or(1e-9)));
    groups.push_back({{"name", e.name},
                      {"description", e.description},
                      {"dim", e.dim},
                      {"order", g.order()},
                      {"coxeter", e.coxeter},
                      {"fixture", fixture_object(e)}});
  };
  json models = json::array();
  if (config.model_name) {
    if (const auto entry = find_catalog_entry(*config.model_name)) {
      describe(*entry);
      out.group_name = entry->name;
    } else {
      const auto& names = model_names();
      if (std::find(names.begin(), names.end(), *config.model_name) == names.end()) {
        throw InputError("unknown catalog entry '" + *config.model_name + "'");
      }
      const GroupModel m = make_model(*config.model_name);
      models.push_back({{"name", m.name}, {"description", m.description}, {"ambient_dim", m.ambient_dim},
                        {"polar_expected", m.is_polar_expected}});
      out.group_name = m.name;
    }
  } else {
    for (const CatalogEntry& e : finite_catalog()) describe(e);
    for (const std::string& name : model_names()) {
      const GroupModel m = make_model(name);
      models.push_back({{"name", m.name}, {"description", m.description}, {"ambient_dim", m.ambient_dim},
                        {"polar_expected", m.is_polar_expected}});
    }
    out.group_name = "catalog";
  }
  out.criteria["groups"] = groups.size();
  out.criteria["models"] = models.size();
  out.result = {{"groups", std::move(groups)}, {"models", std::move(models)}};
  return out;
}

}  // namespace

GroupInput parse_group_json(const std::string& text, const std::optional<double>& tol_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw InputError("malformed group file: top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw InputError("malformed group file: \"dim\" must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw InputError("dim " + std::to_string(dim) + " must be positive");
  if (dim > kMaxHullDim) {
    throw InputError("dim " + std::to_string(dim) + " exceeds the supported maximum of " + std::to_string(kMaxHullDim));
  }
  const std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "group";

  double eps = 1e-9;
  if (doc.contains("tolerance")) eps = parse_entry(doc["tolerance"], "tolerance");
  if (tol_override) eps = *tol_override;
  const Tolerance tol = make_tolerance(eps);

  if (!doc.contains("generators") || !doc["generators"].is_array()) {
    throw InputError("malformed group file: \"generators\" must be an array of matrices");
  }
  std::vector<OrthMat> gens;
  const json& gj = doc["generators"];
  for (std::size_t k = 0; k < gj.size(); ++k) {
    const std::string where = "generators[" + std::to_string(k) + "]";
    Mat m = parse_matrix(gj[k], dim, where);
    try {
      gens.emplace_back(std::move(m), tol);
    } catch (const NotOrthogonal& e) {
      throw InputError(where + " is not orthogonal: row " + std::to_string(e.row()) + " deviates by " +
                       format_double(e.deviation()));
    }
  }

  GroupInput out;
  try {
    out.group = gens.empty() ? trivial_group(dim, tol, name) : close_generators(gens, tol, 100000, name);
  } catch (const OrderExceeded& e) {
    throw InputError(std::string("generators do not close to a finite group: ") + e.what());
  }
  if (doc.contains("vectors")) {
    const json& vj = doc["vectors"];
    if (!vj.is_array()) throw InputError("malformed group file: \"vectors\" must be an array");
    for (std::size_t k = 0; k < vj.size(); ++k) out.vectors.push_back(parse_vector(vj[k], dim, "vectors[" + std::to_string(k) + "]"));
  }
  return out;
}

std::string group_fixture_json(const std::string& catalog_name) {
  const auto entry = find_catalog_entry(catalog_name);
  if (!entry) throw InputError("unknown catalog group '" + catalog_name + "'");
  return fixture_object(*entry).dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = command_name(config.command);
  Outcome outcome;
  int code = 0;
  try {
    switch (config.command) {
      case Command::Orbit: outcome = cmd_orbit(config); break;
      case Command::Hull: outcome = cmd_hull(config); break;
      case Command::Minkowski: outcome = cmd_minkowski(config); break;
      case Command::Cone: outcome = cmd_cone(config); break;
      case Command::VoronoiCheck: outcome = cmd_voronoi(config); break;
      case Command::CoxeterCheck: outcome = cmd_coxeter(config); break;
      case Command::SpCheck: outcome = cmd_sp_check(config); break;
      case Command::Theorem2: {
        const Source src = load_group(config);
        try {
          fill_theorem2(outcome, theorem2_report(src.group, config.seed));
        } catch (const InconsistentCriteria& e) {
          fill_theorem2(outcome, e.report());
          err << cmd << ": " << e.what() << "\n";
          code = 2;
        }
        outcome.tolerance = src.group.tol.eps_eq;
        break;
      }
      case Command::PolarVerify: outcome = cmd_polar(config); break;
      case Command::Catalog: outcome = cmd_catalog(config); break;
    }
  } catch (const InputError& e) {
    err << cmd << ": " << e.what() << "\n";
    return 1;
  } catch (const ZeroVector& e) {
    err << cmd << ": " << e.what() << "\n";
    return 1;
  } catch (const DimensionMismatch& e) {
    err << cmd << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << cmd << ": internal error: " << e.what() << "\n";
    return 2;
  }

  json report;
  report["meta"] = {{"tool", kToolName},
                    {"version", ORBITSP_VERSION},
                    {"command", cmd},
                    {"group", outcome.group_name},
                    {"seed", config.seed},
                    {"tolerance", outcome.tolerance.value_or(config.tolerance.value_or(1e-9))},
                    {"samples", config.samples.value_or(kDefaultSamples)}};
  report["verdict"] = outcome.verdict;
  report["criteria"] = std::move(outcome.criteria);
  report["witnesses"] = std::move(outcome.witnesses);
  report["timings"] = {{"unit", "work items"}, {"counts", std::move(outcome.timings)}};
  report["result"] = std::move(outcome.result);
  const std::string text = report.dump(2) + "\n";

  if (config.output_path) {
    std::ofstream os(*config.output_path);
    if (!os) {
      err << cmd << ": " << *config.output_path << ": cannot write file\n";
      return 1;
    }
    os << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace orbitsp::cli
