#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace orbitsp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Every failure raised by the library derives from Error so callers can
// separate input problems from genuine bugs with one catch clause.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotOrthogonal : public Error {
 public:
  NotOrthogonal(const std::string& what, int row, double deviation)
      : Error(what), row_(row), deviation_(deviation) {}
  int row() const { return row_; }
  double deviation() const { return deviation_; }

 private:
  int row_;
  double deviation_;
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

struct Tolerance {
  double eps_eq = 1e-9;    // scalar and coordinate equality
  double eps_rank = 1e-8;  // singular-value cutoff for rank decisions

  // Throws InvalidTolerance unless both thresholds are positive and finite.
  void validate() const;

  // Decimal digits kept by the hashing key of VecIndex.
  int key_digits() const;
};

/// Orthogonal matrix, checked at construction: ||M^T M - I||_inf <= eps_eq.
class OrthMat {
 public:
  OrthMat() = default;
  explicit OrthMat(Mat m, const Tolerance& tol = {});

  static OrthMat identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }

  Vec operator*(const Vec& v) const;
  OrthMat operator*(const OrthMat& other) const;
  OrthMat inverse() const;

 private:
  struct Unchecked {};
  OrthMat(Mat m, Unchecked) : m_(std::move(m)) {}

  Mat m_;
};

double inner(const Vec& u, const Vec& v);

// Number of singular values strictly above eps_rank.
int matrix_rank(const Mat& m, const Tolerance& tol = {});

bool approx_equal(const Vec& a, const Vec& b, double eps);

// Columns form an orthonormal basis of the null space of the rows of m.
Mat null_space(const Mat& m, const Tolerance& tol = {});

// Lawson-Hanson non-negative least squares: argmin ||A x - b|| subject to x >= 0.
struct NnlsResult {
  Vec x;
  double residual = 0.0;
};
NnlsResult nnls(const Mat& a, const Vec& b, int max_iterations = 0);

// True when target is a non-negative combination of generators up to a
// residual of eps (relative to |target|).
bool in_conic_hull(std::span<const Vec> generators, const Vec& target, double eps);

/// Hash index over vectors for tolerance-aware deduplication. Coordinates are
/// bucketed on a decimal grid; candidates found by bucket are confirmed by a
/// Euclidean distance below eps_eq. Coordinates sitting near a bucket
/// boundary are looked up in both neighbouring buckets.
class VecIndex {
 public:
  explicit VecIndex(const Tolerance& tol = {});

  std::optional<std::size_t> find(const Vec& v) const;
  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const Vec& v);

  std::size_t size() const { return items_.size(); }
  const std::vector<Vec>& items() const { return items_; }

 private:
  using Key = std::vector<std::int64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::vector<Key> candidate_keys(const Vec& v) const;
  Key primary_key(const Vec& v) const;

  Tolerance tol_;
  double step_;
  std::vector<Vec> items_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

// Deduplicates points, preserving first-seen order.
std::vector<Vec> unique_points(std::span<const Vec> points, const Tolerance& tol = {});

/// Seeded generator. mt19937_64 output is fixed by the standard but the
/// standard distributions are not, so uniform and normal draws are derived
/// here from raw engine output to keep reports byte-identical across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();
  Vec normal_vec(int dim);
  Vec unit_vec(int dim);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace orbitsp
