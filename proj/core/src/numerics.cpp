#include "orbitsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace orbitsp {

void Tolerance::validate() const {
  if (!(eps_eq > 0.0) || !std::isfinite(eps_eq)) {
    throw InvalidTolerance("eps_eq must be positive and finite");
  }
  if (!(eps_rank > 0.0) || !std::isfinite(eps_rank)) {
    throw InvalidTolerance("eps_rank must be positive and finite");
  }
}

int Tolerance::key_digits() const {
  return static_cast<int>(std::ceil(-std::log10(eps_eq))) - 2;
}

OrthMat::OrthMat(Mat m, const Tolerance& tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    std::ostringstream os;
    os << "matrix is " << m_.rows() << "x" << m_.cols() << ", expected square";
    throw DimensionMismatch(os.str());
  }
  if (!m_.allFinite()) {
    throw NotOrthogonal("matrix has non-finite entries", -1, std::numeric_limits<double>::infinity());
  }
  const Mat defect = m_.transpose() * m_ - Mat::Identity(m_.rows(), m_.cols());
  int worst_row = -1;
  double worst = 0.0;
  for (Eigen::Index r = 0; r < defect.rows(); ++r) {
    const double dev = defect.row(r).cwiseAbs().sum();
    if (dev > worst) {
      worst = dev;
      worst_row = static_cast<int>(r);
    }
  }
  if (worst > tol.eps_eq) {
    std::ostringstream os;
    os << "matrix is not orthogonal: row " << worst_row << " of M^T M - I has norm " << worst;
    throw NotOrthogonal(os.str(), worst_row, worst);
  }
}

OrthMat OrthMat::identity(int dim) { return OrthMat(Mat::Identity(dim, dim), Unchecked{}); }

Vec OrthMat::operator*(const Vec& v) const {
  if (v.size() != m_.cols()) {
    throw DimensionMismatch("matrix-vector dimension mismatch");
  }
  return m_ * v;
}

OrthMat OrthMat::operator*(const OrthMat& other) const {
  if (other.dim() != dim()) {
    throw DimensionMismatch("matrix-matrix dimension mismatch");
  }
  return OrthMat(m_ * other.m_, Unchecked{});
}

OrthMat OrthMat::inverse() const { return OrthMat(m_.transpose(), Unchecked{}); }

double inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    std::ostringstream os;
    os << "inner product of vectors of length " << u.size() << " and " << v.size();
    throw DimensionMismatch(os.str());
  }
  return u.dot(v);
}

int matrix_rank(const Mat& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  return static_cast<int>((s.array() > tol.eps_rank).count());
}

bool approx_equal(const Vec& a, const Vec& b, double eps) {
  return a.size() == b.size() && (a - b).norm() <= eps;
}

Mat null_space(const Mat& m, const Tolerance& tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const int rank = static_cast<int>((s.array() > tol.eps_rank).count());
  return svd.matrixV().rightCols(n - rank);
}

NnlsResult nnls(const Mat& a, const Vec& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (a.rows() != b.size()) throw DimensionMismatch("nnls: rows of A differ from length of b");
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);

  Vec x = Vec::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, a.cwiseAbs().maxCoeff()) *
                     static_cast<double>(std::max(a.rows(), n));

  auto solve_passive = [&](Vec& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Mat ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Vec sp = ap.completeOrthogonalDecomposition().solve(b);
    s = Vec::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
  };

  int outer = 0;
  while (outer++ < max_iterations) {
    const Vec w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    Vec s;
    for (int inner_it = 0; inner_it < max_iterations; ++inner_it) {
      solve_passive(s);
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= tol) {
          const double denom = x(j) - s(j);
          alpha = std::min(alpha, denom > 0.0 ? x(j) / denom : 0.0);
        }
      }
      if (!std::isfinite(alpha)) break;
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
    x = s;
    for (Eigen::Index j = 0; j < n; ++j) x(j) = std::max(0.0, x(j));
  }
  return {x, (a * x - b).norm()};
}

bool in_conic_hull(std::span<const Vec> generators, const Vec& target, double eps) {
  const double scale = std::max(1.0, target.norm());
  if (generators.empty()) return target.norm() <= eps * scale;
  Mat a(target.size(), static_cast<Eigen::Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != target.size()) throw DimensionMismatch("in_conic_hull: generator length");
    a.col(static_cast<Eigen::Index>(j)) = generators[j];
  }
  return nnls(a, target).residual <= eps * scale;
}

VecIndex::VecIndex(const Tolerance& tol) : tol_(tol) {
  tol_.validate();
  step_ = std::pow(10.0, -std::max(0, tol_.key_digits()));
}

std::size_t VecIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto c : k) {
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

VecIndex::Key VecIndex::primary_key(const Vec& v) const {
  Key key(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double scaled = v(i) / step_;
    if (!std::isfinite(scaled) || std::abs(scaled) > 1e17) {
      throw Error("VecIndex: coordinate out of hashable range");
    }
    key[static_cast<std::size_t>(i)] = std::llround(scaled);
  }
  return key;
}

std::vector<VecIndex::Key> VecIndex::candidate_keys(const Vec& v) const {
  std::vector<Key> keys{primary_key(v)};
  const double margin = tol_.eps_eq / step_;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double scaled = v(i) / step_;
    const double frac = scaled - std::floor(scaled);
    if (std::abs(frac - 0.5) > margin) continue;
    // Near a rounding boundary: the neighbour bucket may hold the match.
    const auto idx = static_cast<std::size_t>(i);
    const std::size_t count = keys.size();
    for (std::size_t k = 0; k < count; ++k) {
      Key alt = keys[k];
      alt[idx] += (std::llround(scaled) == static_cast<std::int64_t>(std::floor(scaled))) ? 1 : -1;
      keys.push_back(std::move(alt));
    }
  }
  return keys;
}

std::optional<std::size_t> VecIndex::find(const Vec& v) const {
  for (const Key& key : candidate_keys(v)) {
    auto it = buckets_.find(key);
    if (it == buckets_.end()) continue;
    for (std::size_t idx : it->second) {
      if (approx_equal(items_[idx], v, tol_.eps_eq)) return idx;
    }
  }
  return std::nullopt;
}

std::pair<std::size_t, bool> VecIndex::insert(const Vec& v) {
  if (auto found = find(v)) return {*found, false};
  const std::size_t idx = items_.size();
  items_.push_back(v);
  buckets_[primary_key(v)].push_back(idx);
  return {idx, true};
}

std::vector<Vec> unique_points(std::span<const Vec> points, const Tolerance& tol) {
  VecIndex index(tol);
  for (const Vec& p : points) index.insert(p);
  return index.items();
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  // Box-Muller; 1 - uniform() lies in (0, 1] so the log is finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double theta = 2.0 * M_PI * uniform();
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

Vec Rng::normal_vec(int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = normal();
  return v;
}

Vec Rng::unit_vec(int dim) {
  for (;;) {
    Vec v = normal_vec(dim);
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

}  // namespace orbitsp
