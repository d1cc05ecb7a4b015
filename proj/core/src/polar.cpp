#include "orbitsp/polar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "orbitsp/coxeter.hpp"
#include "orbitsp/group.hpp"
#include "orbitsp/polytope.hpp"

namespace orbitsp {

Mat GroupModel::cartan_matrix() const {
  Mat b(ambient_dim, cartan_dim());
  for (int j = 0; j < cartan_dim(); ++j) b.col(j) = cartan_basis[static_cast<std::size_t>(j)];
  return b;
}

Vec GroupModel::project(const Vec& x) const {
  const Mat b = cartan_matrix();
  return b * (b.transpose() * x);
}

Vec GroupModel::cartan_coords(const Vec& x) const { return cartan_matrix().transpose() * x; }

double GroupModel::distance_to_cartan(const Vec& x) const { return (x - project(x)).norm(); }

std::vector<Vec> GroupModel::tangent_basis_at(const Vec& v) const {
  std::vector<Vec> out;
  out.reserve(lie_basis.size());
  for (const Mat& x : lie_basis) out.push_back(x * v);
  return out;
}

OrthMat GroupModel::exp(const Vec& coeffs) const {
  Mat x = Mat::Zero(ambient_dim, ambient_dim);
  for (std::size_t i = 0; i < lie_basis.size(); ++i) x += coeffs(static_cast<Eigen::Index>(i)) * lie_basis[i];
  return OrthMat(x.exp());
}

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);

std::vector<Mat> sym3_basis() {
  std::vector<Mat> e(5, Mat::Zero(3, 3));
  e[0].diagonal() << 1.0 / kSqrt2, -1.0 / kSqrt2, 0.0;
  e[1].diagonal() << 1.0 / kSqrt6, 1.0 / kSqrt6, -2.0 / kSqrt6;
  e[2](0, 1) = e[2](1, 0) = 1.0 / kSqrt2;
  e[3](0, 2) = e[3](2, 0) = 1.0 / kSqrt2;
  e[4](1, 2) = e[4](2, 1) = 1.0 / kSqrt2;
  return e;
}

std::vector<Mat> so3_generators() {
  std::vector<Mat> l(3, Mat::Zero(3, 3));
  l[0](2, 1) = 1.0;
  l[0](1, 2) = -1.0;
  l[1](0, 2) = 1.0;
  l[1](2, 0) = -1.0;
  l[2](1, 0) = 1.0;
  l[2](0, 1) = -1.0;
  return l;
}

// Conjugation S -> Q S Q^T written in sym3 coordinates.
Mat sym3_action(const Mat& q) {
  const std::vector<Mat> e = sym3_basis();
  Mat out(5, 5);
  for (int j = 0; j < 5; ++j) out.col(j) = sym3_coords(q * e[static_cast<std::size_t>(j)] * q.transpose());
  return out;
}

Vec unit(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1.0;
  return v;
}

GroupModel so3_standard() {
  GroupModel m;
  m.name = "so3_standard";
  m.description = "SO(3) acting on R^3; Cartan line span(e1); Weyl group {+1, -1}";
  m.ambient_dim = 3;
  m.lie_basis = so3_generators();
  m.sampler = [](Rng& rng) { return OrthMat(haar_rotation3(rng)); };
  m.cartan_basis = {unit(3, 0)};
  m.weyl_elements = {Mat::Identity(1, 1), -Mat::Identity(1, 1)};
  Mat half_turn = Mat::Identity(3, 3);
  half_turn(0, 0) = half_turn(1, 1) = -1.0;
  m.weyl_lifts = {OrthMat::identity(3), OrthMat(half_turn)};
  m.is_polar_expected = true;
  m.default_a = unit(3, 0);
  m.default_b = 2.0 * unit(3, 0);
  return m;
}

GroupModel sym3_traceless() {
  GroupModel m;
  m.name = "sym3_traceless";
  m.description = "SO(3) acting by conjugation on traceless symmetric 3x3 matrices; Cartan = diagonal; Weyl = S3";
  m.ambient_dim = 5;
  for (const Mat& l : so3_generators()) {
    const std::vector<Mat> e = sym3_basis();
    Mat ad(5, 5);
    for (int j = 0; j < 5; ++j) {
      const Mat& ej = e[static_cast<std::size_t>(j)];
      ad.col(j) = sym3_coords(l * ej - ej * l);
    }
    m.lie_basis.push_back(ad);
  }
  m.sampler = [](Rng& rng) { return OrthMat(sym3_action(haar_rotation3(rng))); };
  m.cartan_basis = {unit(5, 0), unit(5, 1)};
  std::array<int, 3> perm{0, 1, 2};
  do {
    Mat p = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
    const Mat rot = p.determinant() < 0.0 ? Mat(-p) : p;
    const Mat action = sym3_action(rot);
    m.weyl_elements.push_back(action.topLeftCorner(2, 2));
    m.weyl_lifts.emplace_back(action);
  } while (std::next_permutation(perm.begin(), perm.end()));
  m.is_polar_expected = true;
  m.default_a = sym3_coords(Vec((Vec(3) << 1.0, 0.0, -1.0).finished()).asDiagonal());
  m.default_b = sym3_coords(Vec((Vec(3) << 2.0, -0.5, -1.5).finished()).asDiagonal());
  return m;
}

GroupModel hopf_circle() {
  GroupModel m;
  m.name = "hopf_circle";
  m.description = "S^1 acting on C^2 = R^4 by z.(z1, z2) = (z z1, z z2), coordinates (x1, y1, x2, y2); "
                  "candidate subspace span(x1, x2, y2)";
  m.ambient_dim = 4;
  Mat j = Mat::Zero(4, 4);
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  m.lie_basis = {j};
  m.sampler = [](Rng& rng) {
    const double t = 2.0 * M_PI * rng.uniform();
    Mat r = Mat::Zero(4, 4);
    r.block(0, 0, 2, 2) << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    r.block(2, 2, 2, 2) = r.block(0, 0, 2, 2);
    return OrthMat(r);
  };
  m.cartan_basis = {unit(4, 0), unit(4, 2), unit(4, 3)};
  m.is_polar_expected = false;
  m.default_a = unit(4, 0);
  m.default_b = unit(4, 2);
  return m;
}

void require_cartan(const GroupModel& model, const char* where) {
  if (model.cartan_basis.empty()) throw NoCartanData(std::string(where) + ": model has no Cartan data");
}

void require_weyl(const GroupModel& model, const char* where) {
  require_cartan(model, where);
  if (model.weyl_elements.empty()) throw NoCartanData(std::string(where) + ": model has no Weyl group");
}

void require_in_cartan(const GroupModel& model, const Vec& a, const char* where) {
  if (a.size() != model.ambient_dim) throw DimensionMismatch(std::string(where) + ": dimension mismatch");
  if (model.distance_to_cartan(a) > 1e-9 * std::max(1.0, a.norm())) {
    throw Error(std::string(where) + ": point does not lie in the Cartan subspace");
  }
}

// Gauss-Newton pull of g x toward the Cartan subspace, moving g along the group.
OrthMat pull_to_cartan(const GroupModel& model, OrthMat g, const Vec& x, int max_iter = 60) {
  const Mat b = model.cartan_matrix();
  const Mat perp = Mat::Identity(model.ambient_dim, model.ambient_dim) - b * b.transpose();
  const auto nl = static_cast<Eigen::Index>(model.lie_basis.size());
  for (int it = 0; it < max_iter; ++it) {
    const Vec y = g * x;
    const Vec r = perp * y;
    const double nr = r.norm();
    if (nr <= 1e-15 * std::max(1.0, x.norm())) break;
    Mat jac(model.ambient_dim, nl);
    for (Eigen::Index i = 0; i < nl; ++i) jac.col(i) = perp * (model.lie_basis[static_cast<std::size_t>(i)] * y);
    const Vec step = -jac.completeOrthogonalDecomposition().solve(r);
    bool accepted = false;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      OrthMat trial = model.exp(t * step) * g;
      if ((perp * (trial * x)).norm() < nr) {
        g = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return g;
}

// Newton ascent of <g a, d> over the group starting from g.
double ascend_support(const GroupModel& model, OrthMat g, const Vec& a, const Vec& d, int max_iter = 100) {
  const auto nl = static_cast<Eigen::Index>(model.lie_basis.size());
  double f = d.dot(g * a);
  for (int it = 0; it < max_iter; ++it) {
    const Vec y = g * a;
    Vec grad(nl);
    Mat hess(nl, nl);
    for (Eigen::Index i = 0; i < nl; ++i) {
      const Mat& li = model.lie_basis[static_cast<std::size_t>(i)];
      grad(i) = d.dot(li * y);
      for (Eigen::Index j = 0; j < nl; ++j) {
        const Mat& lj = model.lie_basis[static_cast<std::size_t>(j)];
        hess(i, j) = 0.5 * d.dot((li * (lj * y)) + (lj * (li * y)));
      }
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(hess);
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    auto try_step = [&](const Vec& step) {
      for (double t = 1.0; t > 1e-8; t *= 0.5) {
        OrthMat trial = model.exp(t * step) * g;
        const double ft = d.dot(trial * a);
        if (ft > f) {
          g = std::move(trial);
          f = ft;
          return true;
        }
      }
      return false;
    };
    bool accepted = false;
    if (grad.norm() > 1e-15 * std::max(1.0, a.norm() * d.norm())) {
      Vec step = Vec::Zero(nl);
      for (Eigen::Index k = 0; k < nl; ++k) {
        const Vec e = eig.eigenvectors().col(k);
        const double lambda = eig.eigenvalues()(k);
        const double gk = grad.dot(e);
        // Newton along concave directions, a long uphill move elsewhere.
        step += (lambda < -1e-3 * scale ? -gk / lambda : gk / (1e-3 * scale)) * e;
      }
      accepted = try_step(step);
    }
    // Stalled at a saddle: leave along the direction of positive curvature.
    if (!accepted && eig.eigenvalues()(nl - 1) > 1e-9 * scale) {
      const Vec e = eig.eigenvectors().col(nl - 1);
      accepted = try_step(e) || try_step(-e);
    }
    if (!accepted) break;
  }
  return f;
}

// Indices of the k best values (largest first).
std::vector<std::size_t> top_k(const std::vector<double>& values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  idx.resize(k);
  return idx;
}

std::vector<Vec> weyl_orbit_coords(const GroupModel& model, const Vec& a) {
  const Vec alpha = model.cartan_coords(a);
  std::vector<Vec> pts;
  for (const Mat& w : model.weyl_elements) pts.push_back(w * alpha);
  return pts;
}

}  // namespace

Vec sym3_coords(const Mat& s) {
  const std::vector<Mat> e = sym3_basis();
  Vec c(5);
  for (int i = 0; i < 5; ++i) c(i) = (s.array() * e[static_cast<std::size_t>(i)].array()).sum();
  return c;
}

Mat sym3_matrix(const Vec& coords) {
  const std::vector<Mat> e = sym3_basis();
  Mat s = Mat::Zero(3, 3);
  for (int i = 0; i < 5; ++i) s += coords(i) * e[static_cast<std::size_t>(i)];
  return s;
}

Mat haar_rotation3(Rng& rng) {
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const Eigen::Quaterniond q(b * std::cos(2.0 * M_PI * u3), a * std::sin(2.0 * M_PI * u2),
                             a * std::cos(2.0 * M_PI * u2), b * std::sin(2.0 * M_PI * u3));
  return q.normalized().toRotationMatrix();
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"so3_standard", "sym3_traceless", "hopf_circle"};
  return names;
}

GroupModel make_model(const std::string& name) {
  if (name == "so3_standard") return so3_standard();
  if (name == "sym3_traceless") return sym3_traceless();
  if (name == "hopf_circle") return hopf_circle();
  throw NotFound("unknown group model '" + name + "'");
}

ConditionBReport check_condition_B(const GroupModel& model, std::size_t n_samples, std::uint64_t seed) {
  require_cartan(model, "check_condition_B");
  const Mat b = model.cartan_matrix();
  Rng rng(seed);
  ConditionBReport report;
  report.n_samples = n_samples;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec u = b * rng.normal_vec(model.cartan_dim());
    for (const Vec& t : model.tangent_basis_at(u)) {
      const double tn = t.norm();
      if (tn <= 1e-12 * std::max(1.0, u.norm())) continue;  // Lie direction fixing u
      for (const Vec& a : model.cartan_basis) {
        const double r = std::abs(t.dot(a)) / (tn * a.norm());
        if (r > report.max_residual) {
          report.max_residual = r;
          report.worst_point = u;
        }
      }
    }
  }
  report.passed = report.max_residual < 1e-8;
  return report;
}

ConditionAReport check_condition_A(const GroupModel& model, std::size_t n_samples, std::uint64_t seed,
                                   std::size_t n_group_samples) {
  require_cartan(model, "check_condition_A");
  Rng rng(seed);
  ConditionAReport report;
  report.n_samples = n_samples;
  report.n_group_samples = n_group_samples;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec v = rng.normal_vec(model.ambient_dim);
    std::vector<OrthMat> gs;
    std::vector<double> score;
    for (std::size_t k = 0; k < n_group_samples; ++k) {
      gs.push_back(model.sampler(rng));
      score.push_back(-model.distance_to_cartan(gs.back() * v));
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t idx : top_k(score, 3)) {
      const OrthMat g = pull_to_cartan(model, gs[idx], v);
      best = std::min(best, model.distance_to_cartan(g * v));
    }
    if (best > report.max_min_distance || report.worst_point.size() == 0) {
      report.max_min_distance = std::max(report.max_min_distance, best);
      report.worst_point = v;
    }
  }
  report.passed = report.max_min_distance < 1e-3;
  return report;
}

ProjectionHullReport check_projection_hull(const GroupModel& model, const Vec& a, std::size_t n_samples, std::uint64_t seed) {
  require_weyl(model, "check_projection_hull");
  require_in_cartan(model, a, "check_projection_hull");
  const std::vector<Vec> wa = weyl_orbit_coords(model, a);
  const Polytope target = hull(wa);

  ProjectionHullReport report;
  report.n_samples = n_samples;
  report.hull_vertices = target.vertices().size();
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vec x = model.cartan_coords(model.sampler(rng) * a);
    const double viol = target.violation(x);
    report.max_violation = std::max(report.max_violation, viol);
    if (viol > 1e-8) ++report.violations;
  }
  const Mat b = model.cartan_matrix();
  for (std::size_t w = 0; w < model.weyl_lifts.size(); ++w) {
    report.vertex_error = std::max(report.vertex_error, (model.weyl_lifts[w] * a - b * wa[w]).norm());
  }
  report.passed = report.violations == 0 && report.vertex_error <= 1e-8;
  return report;
}

CartanMeetReport check_cartan_meet(const GroupModel& model, const Vec& a, std::size_t n_group_samples,
                               std::uint64_t seed) {
  require_weyl(model, "check_cartan_meet");
  require_in_cartan(model, a, "check_cartan_meet");
  const std::vector<Vec> wa = weyl_orbit_coords(model, a);
  CartanMeetReport report;
  report.n_group_samples = n_group_samples;
  Rng rng(seed);
  for (std::size_t s = 0; s < n_group_samples; ++s) {
    const OrthMat g = pull_to_cartan(model, model.sampler(rng), a);
    const Vec x = g * a;
    if (model.distance_to_cartan(x) > 1e-6) continue;
    ++report.n_near;
    const Vec c = model.cartan_coords(x);
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec& p : wa) nearest = std::min(nearest, (c - p).norm());
    report.max_weyl_distance = std::max(report.max_weyl_distance, nearest);
  }
  const Mat b = model.cartan_matrix();
  for (std::size_t w = 0; w < model.weyl_lifts.size(); ++w) {
    report.lift_error = std::max(report.lift_error, (model.weyl_lifts[w] * a - b * wa[w]).norm());
  }
  report.passed = report.max_weyl_distance < 1e-5 && report.lift_error <= 1e-8;
  return report;
}

std::vector<double> sampled_support(const GroupModel& model, const Vec& a, const Vec& d,
                                    std::size_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> running;
  running.reserve(n_samples);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    best = std::max(best, d.dot(model.sampler(rng) * a));
    running.push_back(best);
  }
  return running;
}

double refined_support(const GroupModel& model, const Vec& a, const Vec& d, std::size_t n_samples,
                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<OrthMat> gs;
  std::vector<double> values;
  for (std::size_t s = 0; s < std::max<std::size_t>(n_samples, 1); ++s) {
    gs.push_back(model.sampler(rng));
    values.push_back(d.dot(gs.back() * a));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t idx : top_k(values, 2)) best = std::max(best, ascend_support(model, gs[idx], a, d));
  return best;
}

SliceOfSumReport check_slice_of_sum(const GroupModel& model, const Vec& a, const Vec& b, std::size_t n_dirs,
                        std::uint64_t seed, std::size_t n_group_samples) {
  require_weyl(model, "check_slice_of_sum");
  require_in_cartan(model, a, "check_slice_of_sum");
  require_in_cartan(model, b, "check_slice_of_sum");
  const Polytope slice_sum = minkowski_sum(hull(weyl_orbit_coords(model, a)), hull(weyl_orbit_coords(model, b)));
  const Mat basis = model.cartan_matrix();

  SliceOfSumReport report;
  report.n_dirs = n_dirs;
  Rng rng(seed);
  for (std::size_t s = 0; s < n_dirs; ++s) {
    const Vec dc = rng.unit_vec(model.cartan_dim());
    const Vec d = basis * dc;
    const std::uint64_t sub = rng.next_u64();
    const double lhs = refined_support(model, a, d, n_group_samples, sub) +
                       refined_support(model, b, d, n_group_samples, sub ^ 0x9e3779b97f4a7c15ULL);
    const double rhs = support(slice_sum, dc).mu;
    const double gap = std::abs(lhs - rhs);
    if (gap > report.max_gap || report.worst_direction.size() == 0) {
      report.max_gap = std::max(report.max_gap, gap);
      report.worst_direction = d;
    }
  }
  report.passed = report.max_gap < 1e-6;
  return report;
}

SPFalsifyReport sp_falsify_nonpolar(const GroupModel& model, const Vec& u, const Vec& v,
                                    std::size_t n_group_samples, std::uint64_t seed) {
  if (u.size() != model.ambient_dim || v.size() != model.ambient_dim) {
    throw DimensionMismatch("sp_falsify_nonpolar: dimension mismatch");
  }
  Rng rng(seed);
  std::vector<OrthMat> gs;
  for (std::size_t s = 0; s < std::max<std::size_t>(n_group_samples, 1); ++s) gs.push_back(model.sampler(rng));
  auto sampled_orbit = [&](const Vec& x) {
    std::vector<Vec> pts;
    for (const OrthMat& g : gs) pts.push_back(g * x);
    return pts;
  };
  const std::vector<Vec> ou = sampled_orbit(u);
  const std::vector<Vec> ov = sampled_orbit(v);

  SPFalsifyReport report;
  report.dim_u = affine_dimension(ou);
  report.dim_v = affine_dimension(ov);
  // aff(A + B) is spanned by {a_i + b_0} and {a_0 + b_j}.
  std::vector<Vec> sum;
  for (const Vec& p : ou) sum.push_back(p + ov.front());
  for (const Vec& q : ov) sum.push_back(ou.front() + q);
  report.sum_dim = affine_dimension(sum);

  report.max_orbit_dim = std::max(report.dim_u, report.dim_v);
  for (int k = 0; k < 16; ++k) {
    report.max_orbit_dim = std::max(report.max_orbit_dim, affine_dimension(sampled_orbit(rng.normal_vec(model.ambient_dim))));
  }
  report.sp_impossible = report.sum_dim > report.max_orbit_dim;
  return report;
}

bool weyl_is_coxeter(const GroupModel& model) {
  require_weyl(model, "weyl_is_coxeter");
  std::vector<OrthMat> gens;
  for (const Mat& w : model.weyl_elements) gens.emplace_back(w);
  return is_reflection_generated(close_generators(gens, {}, 100000, model.name + "_weyl"));
}

PolarVerification polar_verify(const GroupModel& model, std::uint64_t seed, const PolarPlan& plan) {
  PolarVerification out;
  out.model = model.name;
  out.is_polar_expected = model.is_polar_expected;
  out.condition_b = check_condition_B(model, plan.condition_b_points, seed);
  out.condition_a = check_condition_A(model, plan.condition_a_points, seed + 1, plan.condition_a_group_samples);
  out.has_weyl = !model.weyl_elements.empty();
  if (out.has_weyl) {
    out.projection_hull = check_projection_hull(model, model.default_a, plan.projection_samples, seed + 2);
    out.cartan_meet = check_cartan_meet(model, model.default_a, plan.cartan_meet_group_samples, seed + 3);
    out.slice_of_sum = check_slice_of_sum(model, model.default_a, model.default_b, plan.slice_dirs, seed + 4);
    out.weyl_coxeter = weyl_is_coxeter(model);
  }
  if (model.name == "sym3_traceless") {
    Rng rng(seed + 5);
    for (std::size_t s = 0; s < plan.projection_samples; ++s) {
      const Vec x = model.sampler(rng) * model.default_a;
      out.trace_residual = std::max(out.trace_residual, std::abs(sym3_matrix(model.project(x)).trace()));
    }
  }
  out.falsify = sp_falsify_nonpolar(model, model.default_a, model.default_b, plan.falsify_group_samples, seed + 6);
  out.verdict = out.condition_b.passed && out.condition_a.passed && out.has_weyl && out.projection_hull.passed &&
                out.cartan_meet.passed && out.slice_of_sum.passed && out.weyl_coxeter && !out.falsify.sp_impossible;
  return out;
}

}  // namespace orbitsp
