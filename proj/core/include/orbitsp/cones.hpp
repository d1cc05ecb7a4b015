#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orbitsp/group.hpp"
#include "orbitsp/numerics.hpp"

namespace orbitsp {

class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// Polyhedral cone {u : <u, n> >= 0 for every halfspace normal n}, also
/// described by its extreme rays plus a lineality space:
///   cone = cone(rays) + span(lineality).
/// The normal list is irredundant and the normals are unit length.
class PolyhedralCone {
 public:
  // Reduces the normals to an irredundant set and derives rays and lineality.
  static PolyhedralCone from_halfspaces(std::span<const Vec> normals, int ambient_dim,
                                        const Tolerance& tol = {});
  static PolyhedralCone whole_space(int ambient_dim);

  const std::vector<Vec>& halfspace_normals() const { return normals_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const Mat& lineality() const { return lineality_; }  // orthonormal columns
  int ambient_dim() const { return ambient_dim_; }
  int lineality_dim() const { return static_cast<int>(lineality_.cols()); }

  // True when the cone has nonempty interior.
  bool full_dimensional() const { return full_dim_; }

 private:
  std::vector<Vec> normals_;
  std::vector<Vec> rays_;
  Mat lineality_;
  int ambient_dim_ = 0;
  bool full_dim_ = true;
};

// Drops normals implied by the others (Farkas: n is implied iff it lies in
// the conic hull of the rest). Input normals need not be unit.
std::vector<Vec> irredundant_normals(std::span<const Vec> normals, const Tolerance& tol = {});

/// The cone of directions u for which v is the farthest point of its orbit:
/// normals v - g v over the orbit, reduced. Throws ZeroVector for v = 0.
PolyhedralCone orbit_cone(const FiniteGroup& group, const Vec& v);

PolyhedralCone dual_cone(const PolyhedralCone& cone, const Tolerance& tol = {});

bool cone_contains(const PolyhedralCone& cone, const Vec& u, const Tolerance& tol = {});

bool cone_equal(const PolyhedralCone& c, const PolyhedralCone& d, const Tolerance& tol = {});

struct VoronoiViolation {
  Vec sample;
  std::size_t orbit_point = 0;  // index into the orbit
  bool nearest = false;         // orbit point is among the nearest
  bool member = false;          // sample lies in that point's cone
};

struct VoronoiReport {
  std::size_t n_samples = 0;
  std::size_t n_ties = 0;  // samples equidistant to two or more orbit points
  std::vector<VoronoiViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Checks that the cones C_{hv} are the closed Voronoi cells of the orbit:
/// for every sample u and orbit point hv, hv is nearest to u exactly when
/// u lies in C_{hv}.
VoronoiReport voronoi_consistency(const FiniteGroup& group, const Vec& v, std::size_t n_samples,
                                  std::uint64_t seed, const Tolerance& tol = {});

VoronoiReport voronoi_consistency_at(const FiniteGroup& group, const Vec& v,
                                     std::span<const Vec> samples, const Tolerance& tol = {});

}  // namespace orbitsp
