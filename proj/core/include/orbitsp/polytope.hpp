#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "orbitsp/numerics.hpp"

namespace orbitsp {

inline constexpr int kMaxHullDim = 6;

class DimTooHigh : public Error {
 public:
  using Error::Error;
};

// Raised when a computed hull fails its own V/H cross-check. Not an input
// error; it means the tolerance is too tight for the data.
class HullError : public Error {
 public:
  using Error::Error;
};

/// Facet {x : <normal, x> = offset} with the body on the side <normal, x> <= offset.
/// normal is a unit vector inside the direction space of the affine hull.
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<std::size_t> vertex_ids;  // indices into Polytope::vertices()
};

/// Convex polytope with both representations. Lower-dimensional bodies carry
/// an orthonormal chart (origin + basis) of their affine hull and their facets
/// are relative to it.
class Polytope {
 public:
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  int ambient_dim() const { return ambient_dim_; }
  int affine_dim() const { return affine_dim_; }
  const Vec& origin() const { return origin_; }
  const Mat& chart() const { return chart_; }

  // Largest amount by which x violates the affine hull or a facet; 0 inside.
  double violation(const Vec& x) const;
  bool contains(const Vec& x, double eps) const { return violation(x) <= eps; }

 private:
  friend Polytope hull(std::span<const Vec>, const Tolerance&);

  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  int ambient_dim_ = 0;
  int affine_dim_ = 0;
  Vec origin_;
  Mat chart_;
};

/// Convex hull of a finite point set in dimension <= kMaxHullDim.
/// Incremental beneath-beyond construction in the chart of the affine hull;
/// coplanar simplices are merged into facets and only points whose active
/// facet normals span the chart are kept as vertices.
Polytope hull(std::span<const Vec> points, const Tolerance& tol = {});

int affine_dimension(std::span<const Vec> points, const Tolerance& tol = {});

struct Support {
  double mu = 0.0;  // max over the body of <v, x>
  Polytope peak;    // the face where the maximum is attained
};
Support support(const Polytope& p, const Vec& v, const Tolerance& tol = {});

Polytope minkowski_sum(const Polytope& p, const Polytope& q, const Tolerance& tol = {});

// Vertex sets agree within tol.eps_eq.
bool polytope_equal(const Polytope& p, const Polytope& q, const Tolerance& tol = {});

/// Bounded intersection of halfspaces <normal, x> <= offset, by enumerating
/// dim-subsets of constraints. Fine for the few dozen constraints we feed it.
Polytope intersect_halfspaces(std::span<const Facet> halfspaces, int dim, const Tolerance& tol = {});

// OFF export; only full-dimensional polytopes in R^3.
void write_off(std::ostream& os, const Polytope& p);

}  // namespace orbitsp
