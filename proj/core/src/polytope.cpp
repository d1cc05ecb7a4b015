#include "orbitsp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace orbitsp {
namespace {

struct AffineFrame {
  Vec origin;
  Mat basis;                        // ambient x k, orthonormal columns
  std::vector<std::size_t> simplex;  // k + 1 affinely independent point indices
};

// Greedy farthest-point selection of an affine basis. Stops once every point
// lies within eps_dist of the span.
AffineFrame affine_frame(std::span<const Vec> pts, double eps_dist) {
  const Eigen::Index n = pts.front().size();
  AffineFrame frame;
  frame.origin = pts.front();
  frame.basis = Mat(n, 0);
  frame.simplex = {0};
  for (;;) {
    double best = eps_dist;
    std::size_t best_i = pts.size();
    Vec best_res;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vec d = pts[i] - frame.origin;
      Vec res = d - frame.basis * (frame.basis.transpose() * d);
      const double r = res.norm();
      if (r > best) {
        best = r;
        best_i = i;
        best_res = std::move(res);
      }
    }
    if (best_i == pts.size()) break;
    Vec dir = best_res / best_res.norm();
    // One re-orthogonalisation pass keeps the chart orthonormal to ~1e-16.
    dir -= frame.basis * (frame.basis.transpose() * dir);
    dir.normalize();
    frame.basis.conservativeResize(n, frame.basis.cols() + 1);
    frame.basis.col(frame.basis.cols() - 1) = dir;
    frame.simplex.push_back(best_i);
  }
  return frame;
}

double point_scale(std::span<const Vec> pts) {
  double scale = 0.0;
  for (const Vec& p : pts) scale = std::max(scale, (p - pts.front()).norm());
  return std::max(1.0, scale);
}

struct ChartFacet {
  std::vector<int> verts;
  Vec normal;
  double offset = 0.0;
  bool alive = true;
};

// Outward unit normal of the hyperplane through k chart points.
ChartFacet make_facet(std::vector<int> verts, const std::vector<Vec>& y, const Vec& interior) {
  const Eigen::Index k = y.front().size();
  Mat d(k, k - 1);
  for (Eigen::Index i = 1; i < k; ++i) d.col(i - 1) = y[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])] - y[static_cast<std::size_t>(verts[0])];
  Eigen::HouseholderQR<Mat> qr(d);
  const Mat q = qr.householderQ();
  ChartFacet f;
  f.normal = q.col(k - 1);
  f.offset = f.normal.dot(y[static_cast<std::size_t>(verts[0])]);
  if (f.normal.dot(interior) > f.offset) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  f.verts = std::move(verts);
  return f;
}

struct ChartHull {
  std::vector<Vec> normals;
  std::vector<double> offsets;
  std::vector<std::vector<int>> facet_points;  // point indices on each facet
  std::vector<int> vertex_points;              // point indices of vertices
};

ChartHull chart_hull_1d(const std::vector<Vec>& y) {
  int lo = 0, hi = 0;
  for (int i = 0; i < static_cast<int>(y.size()); ++i) {
    if (y[static_cast<std::size_t>(i)](0) < y[static_cast<std::size_t>(lo)](0)) lo = i;
    if (y[static_cast<std::size_t>(i)](0) > y[static_cast<std::size_t>(hi)](0)) hi = i;
  }
  ChartHull h;
  h.vertex_points = {std::min(lo, hi), std::max(lo, hi)};
  h.normals = {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)};
  h.offsets = {-y[static_cast<std::size_t>(lo)](0), y[static_cast<std::size_t>(hi)](0)};
  h.facet_points = {{lo}, {hi}};
  return h;
}

ChartHull chart_hull(const std::vector<Vec>& y, const std::vector<std::size_t>& simplex,
                     double eps_dist, const Tolerance& tol) {
  const int k = static_cast<int>(y.front().size());
  if (k == 1) return chart_hull_1d(y);

  Vec interior = Vec::Zero(k);
  for (std::size_t s : simplex) interior += y[s];
  interior /= static_cast<double>(simplex.size());

  std::vector<ChartFacet> facets;
  for (std::size_t omit = 0; omit < simplex.size(); ++omit) {
    std::vector<int> verts;
    for (std::size_t j = 0; j < simplex.size(); ++j)
      if (j != omit) verts.push_back(static_cast<int>(simplex[j]));
    std::sort(verts.begin(), verts.end());
    facets.push_back(make_facet(std::move(verts), y, interior));
  }

  std::vector<int> order;
  std::vector<bool> in_simplex(y.size(), false);
  for (std::size_t s : simplex) in_simplex[s] = true;
  for (int i = 0; i < static_cast<int>(y.size()); ++i)
    if (!in_simplex[static_cast<std::size_t>(i)]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (y[static_cast<std::size_t>(a)] - interior).squaredNorm() >
           (y[static_cast<std::size_t>(b)] - interior).squaredNorm();
  });

  for (int p : order) {
    const Vec& yp = y[static_cast<std::size_t>(p)];
    std::map<std::vector<int>, int> ridges;
    bool any = false;
    for (ChartFacet& f : facets) {
      if (!f.alive || f.normal.dot(yp) - f.offset <= eps_dist) continue;
      any = true;
      f.alive = false;
      for (std::size_t omit = 0; omit < f.verts.size(); ++omit) {
        std::vector<int> ridge;
        ridge.reserve(f.verts.size() - 1);
        for (std::size_t j = 0; j < f.verts.size(); ++j)
          if (j != omit) ridge.push_back(f.verts[j]);
        ++ridges[ridge];
      }
    }
    if (!any) continue;
    // Ridges seen once bound the visible region: cone them to p.
    for (const auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      std::vector<int> verts = ridge;
      verts.insert(std::upper_bound(verts.begin(), verts.end(), p), p);
      facets.push_back(make_facet(std::move(verts), y, interior));
    }
    std::erase_if(facets, [](const ChartFacet& f) { return !f.alive; });
  }

  // Merge coplanar simplices into facets.
  struct Group {
    Vec normal;
    double offset;
    std::vector<int> points;
  };
  std::vector<Group> groups;
  for (const ChartFacet& f : facets) {
    Group* match = nullptr;
    for (Group& g : groups) {
      if (g.normal.dot(f.normal) <= 0.0) continue;
      bool coplanar = true;
      for (int v : f.verts) {
        if (std::abs(g.normal.dot(y[static_cast<std::size_t>(v)]) - g.offset) > eps_dist) {
          coplanar = false;
          break;
        }
      }
      if (coplanar) {
        match = &g;
        break;
      }
    }
    if (!match) {
      groups.push_back({f.normal, f.offset, {}});
      match = &groups.back();
    }
    match->points.insert(match->points.end(), f.verts.begin(), f.verts.end());
  }

  ChartHull h;
  std::vector<int> candidates;
  for (Group& g : groups) {
    std::sort(g.points.begin(), g.points.end());
    g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
    // Refit the plane to all of its points.
    Vec centroid = Vec::Zero(k);
    for (int v : g.points) centroid += y[static_cast<std::size_t>(v)];
    centroid /= static_cast<double>(g.points.size());
    Mat centered(static_cast<Eigen::Index>(g.points.size()), k);
    for (std::size_t r = 0; r < g.points.size(); ++r)
      centered.row(static_cast<Eigen::Index>(r)) = (y[static_cast<std::size_t>(g.points[r])] - centroid).transpose();
    Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullV);
    Vec normal = svd.matrixV().col(k - 1);
    if (normal.dot(g.normal) < 0.0) normal = -normal;
    h.normals.push_back(normal);
    h.offsets.push_back(normal.dot(centroid));
    candidates.insert(candidates.end(), g.points.begin(), g.points.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  h.facet_points.resize(h.normals.size());
  for (int c : candidates) {
    const Vec& yc = y[static_cast<std::size_t>(c)];
    std::vector<std::size_t> active;
    for (std::size_t f = 0; f < h.normals.size(); ++f)
      if (std::abs(h.normals[f].dot(yc) - h.offsets[f]) <= eps_dist) active.push_back(f);
    if (static_cast<int>(active.size()) < k) continue;
    Mat rows(static_cast<Eigen::Index>(active.size()), k);
    for (std::size_t r = 0; r < active.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = h.normals[active[r]].transpose();
    if (matrix_rank(rows, tol) < k) continue;
    h.vertex_points.push_back(c);
    for (std::size_t f : active) h.facet_points[f].push_back(c);
  }
  return h;
}

void check_ambient(std::span<const Vec> points) {
  if (points.empty()) throw Error("hull: empty point set");
  const Eigen::Index n = points.front().size();
  if (n > kMaxHullDim) {
    std::ostringstream os;
    os << "hull: ambient dimension " << n << " exceeds " << kMaxHullDim;
    throw DimTooHigh(os.str());
  }
  for (const Vec& p : points) {
    if (p.size() != n) throw DimensionMismatch("hull: points differ in dimension");
    if (!p.allFinite()) throw Error("hull: non-finite coordinate");
  }
}

}  // namespace

double Polytope::violation(const Vec& x) const {
  if (x.size() != ambient_dim_) throw DimensionMismatch("polytope: point dimension mismatch");
  const Vec d = x - origin_;
  double worst = (d - chart_ * (chart_.transpose() * d)).norm();
  for (const Facet& f : facets_) worst = std::max(worst, f.normal.dot(x) - f.offset);
  return std::max(0.0, worst);
}

int affine_dimension(std::span<const Vec> points, const Tolerance& tol) {
  check_ambient(points);
  return static_cast<int>(affine_frame(points, tol.eps_eq * point_scale(points)).basis.cols());
}

Polytope hull(std::span<const Vec> points, const Tolerance& tol) {
  check_ambient(points);
  tol.validate();
  const std::vector<Vec> pts = unique_points(points, tol);
  const double eps_dist = tol.eps_eq * point_scale(pts);
  AffineFrame frame = affine_frame(pts, eps_dist);
  const int k = static_cast<int>(frame.basis.cols());

  Polytope out;
  out.ambient_dim_ = static_cast<int>(pts.front().size());
  out.affine_dim_ = k;
  out.origin_ = frame.origin;
  out.chart_ = frame.basis;

  if (k == 0) {
    out.vertices_ = {pts.front()};
    return out;
  }

  std::vector<Vec> y;
  y.reserve(pts.size());
  for (const Vec& p : pts) y.push_back(frame.basis.transpose() * (p - frame.origin));

  const ChartHull ch = chart_hull(y, frame.simplex, eps_dist, tol);

  std::vector<std::size_t> remap(pts.size(), static_cast<std::size_t>(-1));
  for (int v : ch.vertex_points) {
    remap[static_cast<std::size_t>(v)] = out.vertices_.size();
    out.vertices_.push_back(pts[static_cast<std::size_t>(v)]);
  }
  for (std::size_t f = 0; f < ch.normals.size(); ++f) {
    Facet facet;
    facet.normal = frame.basis * ch.normals[f];
    facet.offset = ch.offsets[f] + facet.normal.dot(frame.origin);
    for (int v : ch.facet_points[f]) facet.vertex_ids.push_back(remap[static_cast<std::size_t>(v)]);
    if (static_cast<int>(facet.vertex_ids.size()) < k) {
      throw HullError("hull: facet supported by fewer vertices than the affine dimension");
    }
    out.facets_.push_back(std::move(facet));
  }

  for (const Vec& p : pts) {
    if (out.violation(p) > 10.0 * eps_dist) {
      std::ostringstream os;
      os << "hull: input point outside computed facets by " << out.violation(p);
      throw HullError(os.str());
    }
  }
  return out;
}

Support support(const Polytope& p, const Vec& v, const Tolerance& tol) {
  if (v.size() != p.ambient_dim()) throw DimensionMismatch("support: direction dimension mismatch");
  double mu = -std::numeric_limits<double>::infinity();
  for (const Vec& x : p.vertices()) mu = std::max(mu, v.dot(x));
  std::vector<Vec> peak;
  for (const Vec& x : p.vertices())
    if (v.dot(x) >= mu - tol.eps_eq) peak.push_back(x);
  return {mu, hull(peak, tol)};
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q, const Tolerance& tol) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("minkowski_sum: ambient dimensions differ");
  std::vector<Vec> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const Vec& a : p.vertices())
    for (const Vec& b : q.vertices()) sums.push_back(a + b);
  return hull(sums, tol);
}

bool polytope_equal(const Polytope& p, const Polytope& q, const Tolerance& tol) {
  if (p.ambient_dim() != q.ambient_dim()) throw DimensionMismatch("polytope_equal: ambient dimensions differ");
  if (p.affine_dim() != q.affine_dim() || p.vertices().size() != q.vertices().size()) return false;
  auto covered = [&](const Polytope& a, const Polytope& b) {
    VecIndex index(tol);
    for (const Vec& x : b.vertices()) index.insert(x);
    return std::all_of(a.vertices().begin(), a.vertices().end(),
                       [&](const Vec& x) { return index.find(x).has_value(); });
  };
  return covered(p, q) && covered(q, p);
}

Polytope intersect_halfspaces(std::span<const Facet> halfspaces, int dim, const Tolerance& tol) {
  if (dim > kMaxHullDim) throw DimTooHigh("intersect_halfspaces: dimension too high");
  std::vector<Vec> normals;
  std::vector<double> offsets;
  {
    std::vector<Vec> keyed;
    VecIndex index(tol);
    for (const Facet& h : halfspaces) {
      if (h.normal.size() != dim) throw DimensionMismatch("intersect_halfspaces: normal dimension");
      const double n = h.normal.norm();
      if (n <= tol.eps_eq) {
        if (h.offset < -tol.eps_eq) throw Error("intersect_halfspaces: infeasible constant constraint");
        continue;
      }
      Vec key(dim + 1);
      key << h.normal / n, h.offset / n;
      if (index.insert(key).second) {
        normals.push_back(h.normal / n);
        offsets.push_back(h.offset / n);
      }
    }
  }
  const std::size_t m = normals.size();
  double scale = 1.0;
  for (double o : offsets) scale = std::max(scale, std::abs(o));

  std::vector<Vec> vertices;
  std::vector<std::size_t> pick(static_cast<std::size_t>(dim));
  Mat a(dim, dim);
  Vec b(dim);
  auto visit = [&]() {
    for (int r = 0; r < dim; ++r) {
      a.row(r) = normals[pick[static_cast<std::size_t>(r)]].transpose();
      b(r) = offsets[pick[static_cast<std::size_t>(r)]];
    }
    Eigen::FullPivLU<Mat> lu(a);
    if (lu.rank() < dim) return;
    const Vec x = lu.solve(b);
    for (std::size_t j = 0; j < m; ++j)
      if (normals[j].dot(x) - offsets[j] > tol.eps_eq * scale) return;
    vertices.push_back(x);
  };
  // Lexicographic enumeration of dim-subsets of the m constraints.
  auto rec = [&](auto&& self, std::size_t start, int depth) -> void {
    if (depth == dim) {
      visit();
      return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(dim - depth) <= m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (dim == 0) return hull(std::vector<Vec>{Vec(0)}, tol);
  rec(rec, 0, 0);
  if (vertices.empty()) throw Error("intersect_halfspaces: empty or unbounded intersection");
  return hull(vertices, tol);
}

void write_off(std::ostream& os, const Polytope& p) {
  if (p.ambient_dim() != 3 || p.affine_dim() != 3) {
    throw Error("write_off: OFF export needs a full-dimensional polytope in R^3");
  }
  os << "OFF\n" << p.vertices().size() << ' ' << p.facets().size() << " 0\n";
  char buf[96];
  for (const Vec& v : p.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v(0), v(1), v(2));
    os << buf;
  }
  for (const Facet& f : p.facets()) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (std::size_t id : f.vertex_ids) centroid += p.vertices()[id];
    centroid /= static_cast<double>(f.vertex_ids.size());
    const Eigen::Vector3d normal = f.normal;
    const Eigen::Vector3d e1 = (Eigen::Vector3d(p.vertices()[f.vertex_ids.front()]) - centroid).normalized();
    const Eigen::Vector3d e2 = normal.cross(e1);
    std::vector<std::pair<double, std::size_t>> ring;
    for (std::size_t id : f.vertex_ids) {
      const Eigen::Vector3d d = Eigen::Vector3d(p.vertices()[id]) - centroid;
      ring.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), id);
    }
    // Counter-clockwise seen from outside.
    std::sort(ring.begin(), ring.end());
    os << ring.size();
    for (const auto& [angle, id] : ring) os << ' ' << id;
    os << '\n';
  }
}

}  // namespace orbitsp
