#include "orbitsp/cones.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace orbitsp {
namespace {

std::vector<Vec> without(std::span<const Vec> items, std::size_t skip) {
  std::vector<Vec> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    if (i != skip) out.push_back(items[i]);
  return out;
}

bool normal_sets_match(const std::vector<Vec>& a, const std::vector<Vec>& b, const Tolerance& tol) {
  if (a.size() != b.size()) return false;
  VecIndex index(tol);
  for (const Vec& n : b) index.insert(n);
  return std::all_of(a.begin(), a.end(), [&](const Vec& n) { return index.find(n).has_value(); });
}

bool implied_by(const std::vector<Vec>& normals, std::span<const Vec> by, const Tolerance& tol) {
  return std::all_of(normals.begin(), normals.end(),
                     [&](const Vec& n) { return in_conic_hull(by, n, tol.eps_eq); });
}

}  // namespace

std::vector<Vec> irredundant_normals(std::span<const Vec> normals, const Tolerance& tol) {
  // Unit normals deduplicated: two positive multiples imply each other.
  VecIndex index(tol);
  for (const Vec& n : normals) {
    const double len = n.norm();
    if (len > tol.eps_eq) index.insert(n / len);
  }
  std::vector<Vec> kept = index.items();
  for (std::size_t i = kept.size(); i-- > 0;) {
    const std::vector<Vec> rest = without(kept, i);
    if (in_conic_hull(rest, kept[i], tol.eps_eq)) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return kept;
}

PolyhedralCone PolyhedralCone::whole_space(int ambient_dim) {
  PolyhedralCone c;
  c.ambient_dim_ = ambient_dim;
  c.lineality_ = Mat::Identity(ambient_dim, ambient_dim);
  c.full_dim_ = true;
  return c;
}

PolyhedralCone PolyhedralCone::from_halfspaces(std::span<const Vec> normals, int ambient_dim,
                                               const Tolerance& tol) {
  for (const Vec& n : normals)
    if (n.size() != ambient_dim) throw DimensionMismatch("cone: normal dimension mismatch");

  PolyhedralCone c;
  c.ambient_dim_ = ambient_dim;
  c.normals_ = irredundant_normals(normals, tol);
  if (c.normals_.empty()) return whole_space(ambient_dim);

  Mat rows(static_cast<Eigen::Index>(c.normals_.size()), ambient_dim);
  for (std::size_t i = 0; i < c.normals_.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = c.normals_[i].transpose();
  c.lineality_ = null_space(rows, tol);

  // An implicit equality <u, n> = 0 shows up as -n in the cone of the others.
  c.full_dim_ = true;
  for (std::size_t i = 0; i < c.normals_.size(); ++i) {
    if (in_conic_hull(without(c.normals_, i), -c.normals_[i], tol.eps_eq)) {
      c.full_dim_ = false;
      break;
    }
  }

  // Extreme rays of the pointed part inside the row space: each is cut out
  // by (m - 1) independent active normals, m = dim of the row space.
  const int m = ambient_dim - static_cast<int>(c.lineality_.cols());
  if (m == 0) return c;
  VecIndex rays(tol);
  const std::size_t count = c.normals_.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(m - 1));
  auto visit = [&]() {
    Mat sys(static_cast<Eigen::Index>(m - 1) + c.lineality_.cols(), ambient_dim);
    for (int r = 0; r < m - 1; ++r) sys.row(r) = c.normals_[pick[static_cast<std::size_t>(r)]].transpose();
    if (c.lineality_.cols() > 0) sys.bottomRows(c.lineality_.cols()) = c.lineality_.transpose();
    const Mat ns = null_space(sys, tol);
    if (ns.cols() != 1) return;
    Vec r = ns.col(0).normalized();
    for (int sign = 0; sign < 2; ++sign, r = -r) {
      const bool feasible = std::all_of(c.normals_.begin(), c.normals_.end(),
                                        [&](const Vec& n) { return n.dot(r) >= -tol.eps_eq; });
      if (feasible) {
        if (rays.insert(r).second) c.rays_.push_back(r);
        break;
      }
    }
  };
  auto rec = [&](auto&& self, std::size_t start, int depth) -> void {
    if (depth == m - 1) {
      visit();
      return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(m - 1 - depth) <= count; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return c;
}

PolyhedralCone orbit_cone(const FiniteGroup& group, const Vec& v) {
  if (v.size() != group.dim) throw DimensionMismatch("orbit_cone: vector dimension mismatch");
  if (v.norm() <= group.tol.eps_eq) throw ZeroVector("orbit_cone: v must be nonzero");
  const Orbit o = orbit(group, v);
  std::vector<Vec> normals;
  for (std::size_t i = 1; i < o.points.size(); ++i) normals.push_back(v - o.points[i]);
  PolyhedralCone c = PolyhedralCone::from_halfspaces(normals, group.dim, group.tol);
  if (c.halfspace_normals().size() > o.size()) {
    std::ostringstream os;
    os << "orbit_cone: " << c.halfspace_normals().size() << " facets for an orbit of " << o.size()
       << " points";
    throw Error(os.str());
  }
  return c;
}

PolyhedralCone dual_cone(const PolyhedralCone& cone, const Tolerance& tol) {
  std::vector<Vec> normals = cone.rays();
  for (Eigen::Index j = 0; j < cone.lineality().cols(); ++j) {
    normals.push_back(cone.lineality().col(j));
    normals.push_back(-cone.lineality().col(j));
  }
  return PolyhedralCone::from_halfspaces(normals, cone.ambient_dim(), tol);
}

bool cone_contains(const PolyhedralCone& cone, const Vec& u, const Tolerance& tol) {
  if (u.size() != cone.ambient_dim()) throw DimensionMismatch("cone_contains: dimension mismatch");
  return std::all_of(cone.halfspace_normals().begin(), cone.halfspace_normals().end(),
                     [&](const Vec& n) { return n.dot(u) >= -tol.eps_eq; });
}

bool cone_equal(const PolyhedralCone& c, const PolyhedralCone& d, const Tolerance& tol) {
  if (c.ambient_dim() != d.ambient_dim()) throw DimensionMismatch("cone_equal: dimension mismatch");
  if (c.full_dimensional() && d.full_dimensional()) {
    // Full-dimensional cones have a unique irredundant normal set.
    return normal_sets_match(c.halfspace_normals(), d.halfspace_normals(), tol);
  }
  return implied_by(d.halfspace_normals(), c.halfspace_normals(), tol) &&
         implied_by(c.halfspace_normals(), d.halfspace_normals(), tol);
}

VoronoiReport voronoi_consistency_at(const FiniteGroup& group, const Vec& v,
                                     std::span<const Vec> samples, const Tolerance& tol) {
  const Orbit o = orbit(group, v);
  std::vector<PolyhedralCone> cells;
  cells.reserve(o.size());
  for (const Vec& p : o.points) cells.push_back(orbit_cone(group, p));

  VoronoiReport report;
  report.n_samples = samples.size();
  std::vector<double> dist(o.size());
  for (const Vec& u : samples) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < o.size(); ++i) {
      dist[i] = (u - o.points[i]).norm();
      best = std::min(best, dist[i]);
    }
    std::size_t nearest_count = 0;
    for (std::size_t i = 0; i < o.size(); ++i) {
      const bool nearest = dist[i] <= best + tol.eps_eq;
      const bool member = cone_contains(cells[i], u, tol);
      nearest_count += nearest ? 1 : 0;
      if (nearest != member) report.violations.push_back({u, i, nearest, member});
    }
    if (nearest_count > 1) ++report.n_ties;
  }
  return report;
}

VoronoiReport voronoi_consistency(const FiniteGroup& group, const Vec& v, std::size_t n_samples,
                                  std::uint64_t seed, const Tolerance& tol) {
  if (v.size() != group.dim) throw DimensionMismatch("voronoi_consistency: dimension mismatch");
  if (v.norm() <= tol.eps_eq) throw ZeroVector("voronoi_consistency: v must be nonzero");
  Rng rng(seed);
  std::vector<Vec> samples;
  samples.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) samples.push_back(v.norm() * rng.normal_vec(group.dim));
  return voronoi_consistency_at(group, v, samples, tol);
}

}  // namespace orbitsp
