#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orbitsp/group.hpp"
#include "orbitsp/numerics.hpp"

namespace orbitsp {

class NoCartanData : public Error {
 public:
  using Error::Error;
};

/// A compact group acting orthogonally on R^n, known only through a seeded
/// Haar sampler, a basis of its Lie algebra (as skew matrices on R^n) and
/// analytic Cartan/Weyl data. Nothing here computes Lie theory from scratch.
struct GroupModel {
  std::string name;
  std::string description;
  int ambient_dim = 0;
  std::vector<Mat> lie_basis;
  std::function<OrthMat(Rng&)> sampler;
  // Orthonormal. For non-polar models this is the documented candidate subspace.
  std::vector<Vec> cartan_basis;
  std::vector<Mat> weyl_elements;    // acting on Cartan coordinates
  std::vector<OrthMat> weyl_lifts;   // group elements restricting to weyl_elements
  bool is_polar_expected = false;
  Vec default_a;
  Vec default_b;

  int cartan_dim() const { return static_cast<int>(cartan_basis.size()); }
  Mat cartan_matrix() const;                 // ambient x cartan_dim
  Vec project(const Vec& x) const;           // orthogonal projection onto the Cartan subspace
  Vec cartan_coords(const Vec& x) const;     // coordinates of the projection
  double distance_to_cartan(const Vec& x) const;
  std::vector<Vec> tangent_basis_at(const Vec& v) const;  // X v over the Lie basis
  OrthMat exp(const Vec& coeffs) const;      // exp(sum c_i X_i)
};

// "so3_standard", "sym3_traceless", "hopf_circle".
const std::vector<std::string>& model_names();
GroupModel make_model(const std::string& name);

// Coordinates of a traceless symmetric 3x3 matrix in the orthonormal basis
// diag(1,-1,0)/sqrt2, diag(1,1,-2)/sqrt6, (e12+e21)/sqrt2, (e13+e31)/sqrt2, (e23+e32)/sqrt2.
Vec sym3_coords(const Mat& s);
Mat sym3_matrix(const Vec& coords);

// Uniform rotation from a uniformly random unit quaternion.
Mat haar_rotation3(Rng& rng);

struct ConditionBReport {
  std::size_t n_samples = 0;
  double max_residual = 0.0;  // max |<t, a>| / (|t| |a|)
  Vec worst_point;
  bool passed = false;
};
ConditionBReport check_condition_B(const GroupModel& model, std::size_t n_samples, std::uint64_t seed);

/// Falsification-only: min distance from sampled and locally refined orbit
/// points to the Cartan subspace.
struct ConditionAReport {
  std::size_t n_samples = 0;
  std::size_t n_group_samples = 0;
  double max_min_distance = 0.0;
  Vec worst_point;
  bool passed = false;
};
ConditionAReport check_condition_A(const GroupModel& model, std::size_t n_samples, std::uint64_t seed,
                                   std::size_t n_group_samples);

struct ProjectionHullReport {
  std::size_t n_samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  // distance outside hull(W a), in Cartan coordinates
  std::size_t hull_vertices = 0;
  double vertex_error = 0.0;   // lifts reproducing the vertices w a
  bool passed = false;
};
ProjectionHullReport check_projection_hull(const GroupModel& model, const Vec& a, std::size_t n_samples, std::uint64_t seed);

struct CartanMeetReport {
  std::size_t n_group_samples = 0;
  std::size_t n_near = 0;              // refined orbit points within 1e-6 of the Cartan subspace
  double max_weyl_distance = 0.0;      // their distance to the nearest w a
  double lift_error = 0.0;
  bool passed = false;
};
CartanMeetReport check_cartan_meet(const GroupModel& model, const Vec& a, std::size_t n_group_samples,
                               std::uint64_t seed);

struct SliceOfSumReport {
  std::size_t n_dirs = 0;
  double max_gap = 0.0;  // |slice-of-sum support - sum-of-slices support|
  Vec worst_direction;
  bool passed = false;
};
SliceOfSumReport check_slice_of_sum(const GroupModel& model, const Vec& a, const Vec& b, std::size_t n_dirs,
                        std::uint64_t seed, std::size_t n_group_samples = 256);

struct SPFalsifyReport {
  int sum_dim = 0;
  int max_orbit_dim = 0;
  int dim_u = 0;
  int dim_v = 0;
  bool sp_impossible = false;
};
SPFalsifyReport sp_falsify_nonpolar(const GroupModel& model, const Vec& u, const Vec& v,
                                    std::size_t n_group_samples, std::uint64_t seed);

// Closes the Weyl elements and asks whether they form a reflection group.
bool weyl_is_coxeter(const GroupModel& model);

/// Support function of the orbit of a in direction d: running maxima over a
/// seeded stream of group samples (nondecreasing by construction).
std::vector<double> sampled_support(const GroupModel& model, const Vec& a, const Vec& d,
                                    std::size_t n_samples, std::uint64_t seed);

// Sampled maximum polished by Newton ascent on the group.
double refined_support(const GroupModel& model, const Vec& a, const Vec& d, std::size_t n_samples,
                       std::uint64_t seed);

struct PolarPlan {
  std::size_t condition_b_points = 200;
  std::size_t condition_a_points = 20;
  std::size_t condition_a_group_samples = 512;
  std::size_t projection_samples = 10000;
  std::size_t cartan_meet_group_samples = 64;
  std::size_t slice_dirs = 200;
  std::size_t falsify_group_samples = 64;
};

struct PolarVerification {
  std::string model;
  bool is_polar_expected = false;
  ConditionBReport condition_b;
  ConditionAReport condition_a;
  bool has_weyl = false;
  ProjectionHullReport projection_hull;
  CartanMeetReport cartan_meet;
  SliceOfSumReport slice_of_sum;
  bool weyl_coxeter = false;
  double trace_residual = 0.0;  // sym3_traceless only
  SPFalsifyReport falsify;
  // Predicted semigroup property from the observed checks: polar with a
  // Coxeter Weyl group, or not.
  bool verdict = false;
};
PolarVerification polar_verify(const GroupModel& model, std::uint64_t seed, const PolarPlan& plan = {});

}  // namespace orbitsp
