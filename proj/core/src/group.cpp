#include "orbitsp/group.hpp"

#include <deque>
#include <limits>
#include <sstream>

namespace orbitsp {
namespace {

Vec flatten(const OrthMat& g) {
  const Mat& m = g.matrix();
  return Eigen::Map<const Vec>(m.data(), m.size());
}

void check_dim(const FiniteGroup& group, const Vec& v) {
  if (v.size() != group.dim) {
    std::ostringstream os;
    os << "vector of length " << v.size() << " for group of dimension " << group.dim;
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

FiniteGroup close_generators(std::span<const OrthMat> gens, const Tolerance& tol,
                             std::size_t max_order, std::string name) {
  tol.validate();
  if (gens.empty()) throw Error("close_generators: empty generator list, use trivial_group");
  const int dim = gens.front().dim();
  for (const OrthMat& g : gens) {
    if (g.dim() != dim) throw DimensionMismatch("close_generators: generators differ in dimension");
  }

  FiniteGroup group;
  group.dim = dim;
  group.name = std::move(name);
  group.tol = tol;

  VecIndex index(tol);
  auto add = [&](OrthMat g) -> std::size_t {
    auto [idx, inserted] = index.insert(flatten(g));
    if (inserted) {
      if (group.elements.size() >= max_order) {
        std::ostringstream os;
        os << "group closure exceeded max_order = " << max_order;
        throw OrderExceeded(os.str());
      }
      group.elements.push_back(std::move(g));
    }
    return idx;
  };

  add(OrthMat::identity(dim));
  for (const OrthMat& g : gens) group.generator_indices.push_back(add(g));

  // Every element is a word in the generators; left-multiplying each new
  // element by each generator reaches all words.
  for (std::size_t head = 0; head < group.elements.size(); ++head) {
    for (const OrthMat& g : gens) add(g * group.elements[head]);
  }
  return group;
}

FiniteGroup trivial_group(int dim, const Tolerance& tol, std::string name) {
  tol.validate();
  FiniteGroup group;
  group.dim = dim;
  group.name = std::move(name);
  group.tol = tol;
  group.elements.push_back(OrthMat::identity(dim));
  return group;
}

Orbit orbit(const FiniteGroup& group, const Vec& v) {
  check_dim(group, v);
  Orbit out;
  out.base = v;
  VecIndex index(group.tol);
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    Vec image = group.elements[i] * v;
    if (index.insert(image).second) {
      out.points.push_back(std::move(image));
      out.point_to_element.push_back(i);
    }
  }
  return out;
}

FiniteGroup stabilizer(const FiniteGroup& group, const Vec& v) {
  check_dim(group, v);
  FiniteGroup stab;
  stab.dim = group.dim;
  stab.name = group.name.empty() ? "stabilizer" : group.name + "_stabilizer";
  stab.tol = group.tol;
  for (const OrthMat& g : group.elements) {
    if (approx_equal(g * v, v, group.tol.eps_eq)) stab.elements.push_back(g);
  }
  for (std::size_t i = 1; i < stab.elements.size(); ++i) stab.generator_indices.push_back(i);
  return stab;
}

bool is_regular(const FiniteGroup& group, const Vec& v) {
  check_dim(group, v);
  for (std::size_t i = 1; i < group.elements.size(); ++i) {
    if (approx_equal(group.elements[i] * v, v, group.tol.eps_eq)) return false;
  }
  return true;
}

Vec find_regular(const FiniteGroup& group, std::uint64_t seed, double min_separation) {
  Rng rng(seed);
  constexpr int kMaxDraws = 64;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const Vec v = rng.unit_vec(group.dim);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < group.elements.size(); ++i) {
      nearest = std::min(nearest, (group.elements[i] * v - v).norm());
    }
    if (nearest > std::max(min_separation, group.tol.eps_eq)) return v;
  }
  throw NotFound("find_regular: no regular vector after 64 draws");
}

}  // namespace orbitsp
