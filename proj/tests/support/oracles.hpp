#pragma once

// Brute-force references. None of these call into the library's hull, cone or
// closure code, so agreement is evidence rather than tautology.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dihedral group of order 2m: rotations by 2 pi k / m and reflections across
// lines at angle pi k / m.
inline std::vector<Mat> dihedral(int m, bool with_reflections = true) {
  std::vector<Mat> out;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * M_PI * k / m;
    Mat r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    out.push_back(r);
    if (with_reflections) {
      Mat s(2, 2);
      s << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
      out.push_back(s);
    }
  }
  return out;
}

// Signed permutation matrices of R^3 (the hyperoctahedral group, order 48).
inline std::vector<Mat> signed_permutations3() {
  std::vector<Mat> out;
  std::array<int, 3> p{0, 1, 2};
  do {
    for (int s = 0; s < 8; ++s) {
      Mat m = Mat::Zero(3, 3);
      for (int i = 0; i < 3; ++i) m(i, p[static_cast<std::size_t>(i)]) = (s >> i & 1) ? -1.0 : 1.0;
      out.push_back(m);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Signed permutations with an even number of sign flips (order 24).
inline std::vector<Mat> even_signed_permutations3() {
  std::vector<Mat> out;
  for (const Mat& m : signed_permutations3())
    if ((m.array() < 0).count() % 2 == 0) out.push_back(m);
  return out;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<Vec> hull2d(std::vector<Vec> pts, double eps = 1e-9) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  if (pts.size() < 3) return pts;
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (const Vec& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= eps) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline double support(const std::vector<Vec>& pts, const Vec& d) {
  double best = -INFINITY;
  for (const Vec& p : pts) best = std::max(best, p.dot(d));
  return best;
}

inline bool same_point_set(const std::vector<Vec>& a, const std::vector<Vec>& b, double eps) {
  if (a.size() != b.size()) return false;
  for (const Vec& p : a) {
    bool found = false;
    for (const Vec& q : b) found = found || (p - q).norm() <= eps;
    if (!found) return false;
  }
  return true;
}

// Facet planes of a full-dimensional point set in R^d: every d-subset whose
// affine span is a hyperplane with all points on one side.
struct Plane {
  Vec normal;
  double offset;
};
inline std::vector<Plane> facet_planes(const std::vector<Vec>& pts, double eps = 1e-9) {
  std::vector<Plane> out;
  if (pts.empty()) return out;
  const int d = static_cast<int>(pts.front().size());
  const int n = static_cast<int>(pts.size());
  std::vector<int> pick(static_cast<std::size_t>(d));
  auto visit = [&] {
    Mat diffs(d - 1, d);
    for (int r = 1; r < d; ++r) diffs.row(r - 1) = (pts[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])] - pts[static_cast<std::size_t>(pick[0])]).transpose();
    Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullV);
    if (d > 1 && svd.singularValues()(d - 2) < 1e-9) return;
    Vec nrm = svd.matrixV().col(d - 1);
    for (int sign = 0; sign < 2; ++sign, nrm = -nrm) {
      const double off = nrm.dot(pts[static_cast<std::size_t>(pick[0])]);
      bool ok = true;
      for (const Vec& p : pts) ok = ok && p.dot(nrm) <= off + eps;
      if (!ok) continue;
      bool dup = false;
      for (const Plane& q : out) dup = dup || ((q.normal - nrm).norm() < 1e-7 && std::abs(q.offset - off) < 1e-7);
      if (!dup) out.push_back({nrm, off});
    }
  };
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == d) {
      visit();
      return;
    }
    for (int i = start; i < n; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Vertices of a full-dimensional point set: points whose incident facet
// normals have full rank.
inline std::vector<Vec> extreme_points(const std::vector<Vec>& pts, double eps = 1e-9) {
  const std::vector<Plane> planes = facet_planes(pts, eps);
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    std::vector<Vec> active;
    for (const Plane& f : planes)
      if (std::abs(f.normal.dot(p) - f.offset) <= 1e-7) active.push_back(f.normal);
    if (active.empty()) continue;
    Mat m(static_cast<Eigen::Index>(active.size()), p.size());
    for (std::size_t i = 0; i < active.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = active[i].transpose();
    if (Eigen::FullPivLU<Mat>(m).setThreshold(1e-7).rank() < p.size()) continue;
    bool dup = false;
    for (const Vec& q : out) dup = dup || (p - q).norm() <= 1e-9;
    if (!dup) out.push_back(p);
  }
  return out;
}

// Nearest points of an orbit by exhaustive distance comparison.
inline std::vector<std::size_t> nearest(const std::vector<Vec>& pts, const Vec& u, double eps) {
  double best = INFINITY;
  for (const Vec& p : pts) best = std::min(best, (u - p).norm());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if ((u - pts[i]).norm() <= best + eps) out.push_back(i);
  return out;
}

}  // namespace oracle
