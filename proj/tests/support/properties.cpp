#include "properties.hpp"

#include <algorithm>
#include <cmath>

#include <orbitsp/cones.hpp>
#include <orbitsp/coxeter.hpp>
#include <orbitsp/polytope.hpp>

namespace props {

using namespace orbitsp;

namespace {

bool has_point(const std::vector<Vec>& pts, const Vec& p, double eps) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vec& q) { return (p - q).norm() <= eps; });
}

void record(SuiteResult& r, bool ok, std::vector<Vec> witness) {
  ++r.instances;
  if (ok) return;
  if (r.violations == 0) r.witness = std::move(witness);
  ++r.violations;
}

}  // namespace

std::vector<Vec> mixed_points(const FiniteGroup& g, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> special;
  for (const Reflection& r : reflections(g)) special.push_back(r.normal);
  const Vec v_reg = find_regular(g, seed);
  const PolyhedralCone cone = orbit_cone(g, v_reg);
  for (const Vec& ray : cone.rays()) special.push_back(ray);
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = 0.5 + rng.uniform();
    if (k % 2 == 1 && !special.empty()) {
      const Vec& s = special[rng.next_u64() % special.size()];
      const OrthMat& h = g.elements[rng.next_u64() % g.order()];
      out.push_back(scale * (h * s));
    } else {
      out.push_back(scale * rng.unit_vec(g.dim));
    }
  }
  return out;
}

Vec best_aligned(const FiniteGroup& g, const Vec& u, const Vec& v) {
  Vec best = u;
  double score = -INFINITY;
  for (const OrthMat& h : g.elements) {
    const Vec p = h * u;
    if (p.dot(v) > score) {
      score = p.dot(v);
      best = p;
    }
  }
  return best;
}

SuiteResult support_additivity(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"support_additivity", 0, 0, {}};
  Rng rng(seed);
  const std::vector<Vec> dirs = mixed_points(g, n, seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec u = rng.normal_vec(g.dim), v = rng.normal_vec(g.dim);
    const Polytope p = hull(orbit(g, u).points, tol), q = hull(orbit(g, v).points, tol);
    const Polytope s = minkowski_sum(p, q, tol);
    const Vec& d = dirs[k];
    const double gap = support(s, d, tol).mu - support(p, d, tol).mu - support(q, d, tol).mu;
    record(r, std::abs(gap) <= tol.eps_eq, {u, v, d});
  }
  return r;
}

SuiteResult peak_of_sum(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"peak_of_sum", 0, 0, {}};
  Rng rng(seed);
  const std::vector<Vec> dirs = mixed_points(g, n, seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec u = rng.normal_vec(g.dim), v = rng.normal_vec(g.dim);
    const Polytope p = hull(orbit(g, u).points, tol), q = hull(orbit(g, v).points, tol);
    const Vec& d = dirs[k];
    const Polytope lhs = support(minkowski_sum(p, q, tol), d, tol).peak;
    const Polytope rhs = minkowski_sum(support(p, d, tol).peak, support(q, d, tol).peak, tol);
    record(r, polytope_equal(lhs, rhs, tol), {u, v, d});
  }
  return r;
}

SuiteResult cone_peak_duality(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"cone_peak_duality", 0, 0, {}};
  Rng rng(seed);
  const std::vector<Vec> vs = mixed_points(g, n, seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec& v = vs[k];
    Vec u = rng.normal_vec(g.dim);
    if (k % 3 != 0) u = best_aligned(g, u, v);  // lands in C_v
    const bool in_cone = cone_contains(orbit_cone(g, v), u, tol);
    const Polytope peak = support(hull(orbit(g, v).points, tol), u, tol).peak;
    const bool v_peaks = has_point(peak.vertices(), v, tol.eps_eq);
    record(r, in_cone == v_peaks, {u, v});
  }
  return r;
}

SuiteResult cone_symmetry(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"cone_symmetry", 0, 0, {}};
  Rng rng(seed);
  const std::vector<Vec> vs = mixed_points(g, n, seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec& v = vs[k];
    Vec u = (0.5 + rng.uniform()) * rng.unit_vec(g.dim);
    if (k % 3 != 0) u = best_aligned(g, u, v);
    const bool a = cone_contains(orbit_cone(g, v), u, tol);
    const bool b = cone_contains(orbit_cone(g, u), v, tol);
    record(r, a == b, {u, v});
  }
  return r;
}

SuiteResult peak_is_cone_slice(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"peak_is_cone_slice", 0, 0, {}};
  Rng rng(seed);
  const std::vector<Vec> vs = mixed_points(g, n, seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec& v = vs[k];
    const Vec u = k % 2 ? vs[(k + 1) % n] : rng.normal_vec(g.dim);
    const Orbit ou = orbit(g, u);
    const Polytope peak = support(hull(ou.points, tol), v, tol).peak;
    const PolyhedralCone cv = orbit_cone(g, v);
    std::vector<Vec> slice;
    for (const Vec& p : ou.points)
      if (cone_contains(cv, p, tol)) slice.push_back(p);
    bool ok = slice.size() == peak.vertices().size();
    for (const Vec& p : slice) ok = ok && has_point(peak.vertices(), p, tol.eps_eq);
    record(r, ok, {u, v});
  }
  return r;
}

SuiteResult orbit_meets_cone_once(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  SuiteResult r{"orbit_meets_cone_once", 0, 0, {}};
  for (const Vec& v : mixed_points(g, n, seed)) {
    const PolyhedralCone cv = orbit_cone(g, v);
    std::size_t inside = 0;
    bool has_v = false;
    for (const Vec& p : orbit(g, v).points) {
      if (!cone_contains(cv, p, tol)) continue;
      ++inside;
      has_v = has_v || (p - v).norm() <= tol.eps_eq;
    }
    record(r, inside == 1 && has_v, {v});
  }
  return r;
}

std::vector<SuiteResult> all_suites(const FiniteGroup& g, std::size_t n, std::uint64_t seed, const Tolerance& tol) {
  return {support_additivity(g, n, seed, tol),  peak_of_sum(g, n, seed + 10, tol),
          cone_peak_duality(g, n, seed + 20, tol), cone_symmetry(g, n, seed + 30, tol),
          peak_is_cone_slice(g, n, seed + 40, tol), orbit_meets_cone_once(g, n, seed + 50, tol)};
}

}  // namespace props
