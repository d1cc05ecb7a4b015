#include "orbitsp/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace orbitsp {
namespace {

void require_regular(const FiniteGroup& group, const Vec& v, const char* where) {
  if (v.size() != group.dim) throw DimensionMismatch(std::string(where) + ": dimension mismatch");
  if (!is_regular(group, v)) throw NotRegular(std::string(where) + ": base point is not regular");
}

std::string samples_note(std::size_t n) {
  std::ostringstream os;
  os << "no counterexample found (" << n << " samples)";
  return os.str();
}

}  // namespace

Vec canonical_sign(Vec v, double eps) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > eps) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

std::optional<Reflection> detect_reflection(const OrthMat& g, const Tolerance& tol) {
  const Mat defect = Mat::Identity(g.dim(), g.dim()) - g.matrix();
  Eigen::JacobiSVD<Mat> svd(defect, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  if ((s.array() > tol.eps_rank).count() != 1) return std::nullopt;
  Reflection r;
  r.normal = canonical_sign(svd.matrixU().col(0).normalized(), tol.eps_eq);
  return r;
}

std::vector<Reflection> reflections(const FiniteGroup& group) {
  std::vector<Reflection> out;
  for (std::size_t i = 1; i < group.elements.size(); ++i) {
    if (auto r = detect_reflection(group.elements[i], group.tol)) {
      r->element_index = i;
      out.push_back(std::move(*r));
    }
  }
  return out;
}

namespace {

std::size_t reflection_subgroup_order(const FiniteGroup& group, std::size_t* count) {
  const std::vector<Reflection> refl = reflections(group);
  if (count) *count = refl.size();
  if (refl.empty()) return 1;
  std::vector<OrthMat> gens;
  for (const Reflection& r : refl) gens.push_back(group.elements[r.element_index]);
  return close_generators(gens, group.tol, group.order() + 1).order();
}

}  // namespace

bool is_reflection_generated(const FiniteGroup& group) {
  return reflection_subgroup_order(group, nullptr) == group.order();
}

ChamberData chamber(const FiniteGroup& group, const Vec& v_reg) {
  if (!is_reflection_generated(group)) throw NotCoxeter("chamber: group is not generated by reflections");
  require_regular(group, v_reg, "chamber");

  const PolyhedralCone cone = orbit_cone(group, v_reg);
  ChamberData ch;
  ch.base_regular = v_reg;
  ch.simple_normals = cone.halfspace_normals();
  const std::size_t m = ch.simple_normals.size();
  if (m == 0) return ch;

  Mat a(static_cast<Eigen::Index>(m), group.dim);
  for (std::size_t k = 0; k < m; ++k) a.row(static_cast<Eigen::Index>(k)) = ch.simple_normals[k].transpose();
  if (matrix_rank(a, group.tol) != static_cast<int>(m)) {
    throw Error("chamber: cone of a reflection group is not simplicial");
  }
  // Columns of the pseudo-inverse are dual to the rows: <alpha_k, col_j> = delta_kj.
  const Mat dual = a.completeOrthogonalDecomposition().pseudoInverse();
  for (std::size_t j = 0; j < m; ++j) ch.fundamental_rays.push_back(dual.col(static_cast<Eigen::Index>(j)).normalized());
  return ch;
}

PolyhedralCone chamber_cone(const ChamberData& ch, int dim, const Tolerance& tol) {
  return PolyhedralCone::from_halfspaces(ch.simple_normals, dim, tol);
}

Polytope hull_via_chamber(const FiniteGroup& group, const Vec& v, const ChamberData& ch) {
  if (v.size() != group.dim) throw DimensionMismatch("hull_via_chamber: dimension mismatch");
  for (const Vec& alpha : ch.simple_normals) {
    if (alpha.dot(v) < -group.tol.eps_eq) throw NotInChamber("hull_via_chamber: v lies outside the chamber");
  }
  std::vector<Facet> halfspaces;
  for (const OrthMat& g : group.elements) {
    for (const Vec& ray : ch.fundamental_rays) {
      halfspaces.push_back({g * ray, ray.dot(v), {}});
    }
  }
  // Directions fixed by the whole group are pinned to v.
  Mat rows(static_cast<Eigen::Index>(ch.simple_normals.size()), group.dim);
  for (std::size_t k = 0; k < ch.simple_normals.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = ch.simple_normals[k].transpose();
  const Mat fixed = null_space(rows, group.tol);
  for (Eigen::Index j = 0; j < fixed.cols(); ++j) {
    const Vec l = fixed.col(j);
    halfspaces.push_back({l, l.dot(v), {}});
    halfspaces.push_back({-l, -l.dot(v), {}});
  }
  return intersect_halfspaces(halfspaces, group.dim, group.tol);
}

CriterionOutcome criterion_peak(const FiniteGroup& group, const Vec& v_reg,
                                std::span<const Vec> test_points) {
  require_regular(group, v_reg, "criterion_peak");
  CriterionOutcome out;
  for (const Vec& u : test_points) {
    ++out.samples;
    const Orbit o = orbit(group, u);
    double mu = -std::numeric_limits<double>::infinity();
    for (const Vec& p : o.points) mu = std::max(mu, v_reg.dot(p));
    std::vector<Vec> peak;
    for (const Vec& p : o.points)
      if (v_reg.dot(p) >= mu - group.tol.eps_eq) peak.push_back(p);
    if (peak.size() > 1) {
      out.holds = false;
      out.witness.push_back(u);
      out.witness.insert(out.witness.end(), peak.begin(), peak.end());
      std::ostringstream os;
      os << "peak set on the orbit of the witness has " << peak.size() << " points";
      out.note = os.str();
      return out;
    }
  }
  out.note = samples_note(out.samples);
  return out;
}

double wall_distance(const PolyhedralCone& cone, const Vec& v) {
  double d = std::numeric_limits<double>::infinity();
  for (const Vec& n : cone.halfspace_normals()) d = std::min(d, n.dot(v));
  return d;
}

std::vector<Vec> wall_midpoints(const PolyhedralCone& cone, const Tolerance& tol) {
  std::vector<Vec> out;
  for (const Vec& n : cone.halfspace_normals()) {
    Vec sum = Vec::Zero(cone.ambient_dim());
    for (const Vec& r : cone.rays())
      if (std::abs(r.dot(n)) <= tol.eps_eq) sum += r;
    if (sum.norm() <= tol.eps_eq) {
      if (cone.lineality_dim() == 0) continue;
      sum = cone.lineality().col(0);
    }
    out.push_back(sum.normalized());
  }
  return out;
}

CriterionOutcome criterion_local_cone(const FiniteGroup& group, const Vec& v_reg, double radius,
                                      std::size_t n_samples, std::uint64_t seed) {
  require_regular(group, v_reg, "criterion_local_cone");
  const PolyhedralCone base = orbit_cone(group, v_reg);
  if (radius <= 0.0) {
    const double wall = wall_distance(base, v_reg);
    radius = 0.25 * (std::isfinite(wall) ? wall : v_reg.norm());
  }
  CriterionOutcome out;
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec dir = rng.unit_vec(group.dim);
    const double r = radius * std::pow(rng.uniform(), 1.0 / group.dim);
    const Vec u = v_reg + r * dir;
    ++out.samples;
    if (!cone_equal(orbit_cone(group, u), base, group.tol)) {
      out.holds = false;
      out.witness.push_back(u);
      std::ostringstream os;
      os << "cone at the witness differs from the cone at the base point (radius " << radius << ")";
      out.note = os.str();
      return out;
    }
  }
  out.note = samples_note(out.samples);
  return out;
}

PairCheck sp_check_pair(const FiniteGroup& group, const Vec& u, const Vec& v, const Tolerance& tol) {
  if (u.size() != group.dim || v.size() != group.dim) throw DimensionMismatch("sp_check_pair: dimension mismatch");
  const Orbit ou = orbit(group, u);
  const Orbit ov = orbit(group, v);
  const Polytope sum = minkowski_sum(hull(ou.points, tol), hull(ov.points, tol), tol);

  PairCheck out;
  out.sum_vertices = sum.vertices().size();
  std::vector<std::size_t> order(ov.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return u.dot(ov.points[a]) > u.dot(ov.points[b]);
  });
  for (std::size_t idx : order) {
    ++out.scanned;
    const Vec w = u + ov.points[idx];
    const Orbit ow = orbit(group, w);
    // Distinct points of a sphere are all extreme, so a vertex-count mismatch
    // rules the candidate out before building its hull.
    if (w.norm() > tol.eps_eq && ow.size() != sum.vertices().size()) continue;
    if (polytope_equal(sum, hull(ow.points, tol), tol)) {
      out.holds = true;
      out.representative = ov.points[idx];
      return out;
    }
  }
  return out;
}

SPReport theorem2_report(const FiniteGroup& group, std::uint64_t seed, const Theorem2Options& options) {
  SPReport report;
  report.group = group.name;
  report.v_reg = find_regular(group, seed);
  const Vec& v_reg = report.v_reg;
  const PolyhedralCone cone = orbit_cone(group, v_reg);

  std::vector<Vec> structured{v_reg};
  for (const Vec& w : wall_midpoints(cone, group.tol)) structured.push_back(w);
  for (const Vec& r : cone.rays()) structured.push_back(r);

  Rng rng(seed ^ 0x5bd1e9955bd1e995ULL);

  // Semigroup property over structured and random orbit pairs.
  std::vector<std::pair<Vec, Vec>> pairs;
  for (std::size_t i = 0; i < structured.size(); ++i)
    for (std::size_t j = i; j < structured.size(); ++j) pairs.emplace_back(structured[i], structured[j]);
  for (std::size_t k = 0; k < options.random_pairs; ++k) {
    Vec a = rng.normal_vec(group.dim);
    Vec b = rng.normal_vec(group.dim);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  for (const auto& [a, b] : pairs) {
    ++report.sp.samples;
    if (!sp_check_pair(group, a, b, group.tol).holds) {
      if (report.sp.holds) {
        report.sp.witness = {a, b};
        report.sp.note = "hull sum of the witness orbits is not an orbit hull";
      }
      report.sp.holds = false;
      if (report.sp_failures.size() < 10) report.sp_failures.push_back({a, b});
    }
  }
  if (report.sp.holds) report.sp.note = samples_note(report.sp.samples);

  std::vector<Vec> peak_points = structured;
  for (std::size_t k = 0; k < options.random_peak_points; ++k) peak_points.push_back(rng.normal_vec(group.dim));
  report.peak_i = criterion_peak(group, v_reg, peak_points);

  const std::size_t sub = reflection_subgroup_order(group, &report.reflection_count);
  report.reflection_subgroup_order = sub;
  report.coxeter_ii.holds = sub == group.order();
  report.coxeter_ii.samples = group.order();
  {
    std::ostringstream os;
    os << "exact: " << report.reflection_count << " reflections generate a subgroup of order " << sub
       << " in a group of order " << group.order();
    report.coxeter_ii.note = os.str();
  }

  report.local_cone_iii = criterion_local_cone(group, v_reg, 0.0, options.local_cone_samples, seed + 1);

  report.verdict = report.coxeter_ii.holds;
  report.consistent = report.sp.holds == report.verdict && report.peak_i.holds == report.verdict &&
                      report.local_cone_iii.holds == report.verdict;
  if (!report.consistent) {
    throw InconsistentCriteria("theorem2_report: criteria disagree for group '" + group.name + "'", report);
  }
  return report;
}

}  // namespace orbitsp
