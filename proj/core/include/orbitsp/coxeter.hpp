#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitsp/cones.hpp"
#include "orbitsp/group.hpp"
#include "orbitsp/polytope.hpp"

namespace orbitsp {

class NotCoxeter : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

class NotInChamber : public Error {
 public:
  using Error::Error;
};

struct Reflection {
  std::size_t element_index = 0;  // into FiniteGroup::elements; 0 when detected standalone
  Vec normal;                     // unit, first clearly nonzero coordinate positive
};

/// Weyl chamber of a reflection group: inward facet normals (simple roots up
/// to scale) and the fundamental rays, paired so that <ray_j, normal_k> = 0
/// for j != k and > 0 for j == k.
struct ChamberData {
  std::vector<Vec> simple_normals;
  std::vector<Vec> fundamental_rays;
  Vec base_regular;
};

// Flips v so that its first coordinate with |x| > eps is positive.
Vec canonical_sign(Vec v, double eps);

std::optional<Reflection> detect_reflection(const OrthMat& g, const Tolerance& tol = {});

std::vector<Reflection> reflections(const FiniteGroup& group);

bool is_reflection_generated(const FiniteGroup& group);

/// Throws NotCoxeter unless the group is generated by its reflections and
/// NotRegular unless v_reg has trivial stabilizer.
ChamberData chamber(const FiniteGroup& group, const Vec& v_reg);

// Inward-facing normals as a cone.
PolyhedralCone chamber_cone(const ChamberData& ch, int dim, const Tolerance& tol = {});

/// Orbit polytope of a chamber point as the intersection of the translated
/// dual chamber cone over the group: hull(Gv) = cap_g g(v - C*). Here
/// v - C* = {x : <ray_j, x> <= <ray_j, v>}.
Polytope hull_via_chamber(const FiniteGroup& group, const Vec& v, const ChamberData& ch);

struct CriterionOutcome {
  bool holds = true;
  std::size_t samples = 0;
  std::vector<Vec> witness;  // empty when holds
  std::string note;
};

/// lambda_{v_reg} has a single maximiser on the orbit of every test point.
CriterionOutcome criterion_peak(const FiniteGroup& group, const Vec& v_reg,
                                std::span<const Vec> test_points);

/// C_u == C_{v_reg} for sampled u within radius of v_reg. A non-positive
/// radius selects 0.25 x the distance from v_reg to the nearest wall of its cone.
CriterionOutcome criterion_local_cone(const FiniteGroup& group, const Vec& v_reg, double radius,
                                      std::size_t n_samples, std::uint64_t seed);

double wall_distance(const PolyhedralCone& cone, const Vec& v);

// A point in the relative interior of each facet of the cone.
std::vector<Vec> wall_midpoints(const PolyhedralCone& cone, const Tolerance& tol = {});

struct PairCheck {
  bool holds = false;
  Vec representative;    // witnessing v' in the orbit of v (when holds)
  std::size_t sum_vertices = 0;
  std::size_t scanned = 0;
};

/// Searches v' in Gv with hull(Gu) + hull(Gv) == hull(G(u + v')). Candidates
/// are scanned by descending <u, v'> and the search stops at the first match.
PairCheck sp_check_pair(const FiniteGroup& group, const Vec& u, const Vec& v,
                        const Tolerance& tol = {});

struct PairFailure {
  Vec u;
  Vec v;
};

struct SPReport {
  std::string group;
  Vec v_reg;
  bool verdict = false;
  bool consistent = true;
  CriterionOutcome sp;
  CriterionOutcome peak_i;
  CriterionOutcome coxeter_ii;
  CriterionOutcome local_cone_iii;
  std::size_t reflection_count = 0;
  std::size_t reflection_subgroup_order = 0;
  std::vector<PairFailure> sp_failures;
};

class InconsistentCriteria : public Error {
 public:
  InconsistentCriteria(const std::string& what, SPReport report)
      : Error(what), report_(std::move(report)) {}
  const SPReport& report() const { return report_; }

 private:
  SPReport report_;
};

struct Theorem2Options {
  std::size_t random_pairs = 25;
  std::size_t random_peak_points = 25;
  std::size_t local_cone_samples = 50;
};

/// Runs the semigroup check and the three equivalent criteria on one group.
/// Throws InconsistentCriteria (carrying the report) if the verdicts disagree.
SPReport theorem2_report(const FiniteGroup& group, std::uint64_t seed,
                         const Theorem2Options& options = {});

}  // namespace orbitsp
