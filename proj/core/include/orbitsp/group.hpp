#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbitsp/numerics.hpp"

namespace orbitsp {

class OrderExceeded : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// A finite group of orthogonal matrices. elements[0] is the identity and
/// the list is duplicate-free up to tol.eps_eq; generator_indices point at
/// the generators inside elements.
struct FiniteGroup {
  int dim = 0;
  std::vector<OrthMat> elements;
  std::vector<std::size_t> generator_indices;
  std::string name;
  Tolerance tol;

  std::size_t order() const { return elements.size(); }
  const OrthMat& identity() const { return elements.front(); }
};

struct Orbit {
  Vec base;
  std::vector<Vec> points;  // points[0] == base
  std::vector<std::size_t> point_to_element;  // witness g with g * base == points[i]

  std::size_t size() const { return points.size(); }
};

/// Breadth-first closure of the generators under left multiplication.
/// Throws OrderExceeded once more than max_order elements are found, which
/// usually means a rotation by an irrational angle slipped in.
FiniteGroup close_generators(std::span<const OrthMat> gens, const Tolerance& tol = {},
                             std::size_t max_order = 100000, std::string name = {});

// Variant for an empty generator list, which needs the dimension spelled out.
FiniteGroup trivial_group(int dim, const Tolerance& tol = {}, std::string name = "trivial");

Orbit orbit(const FiniteGroup& group, const Vec& v);

FiniteGroup stabilizer(const FiniteGroup& group, const Vec& v);

// Regular means trivial stabilizer; groups here act faithfully by construction.
bool is_regular(const FiniteGroup& group, const Vec& v);

/// Seeded search for a regular unit vector. Draws whose nearest non-trivial
/// image g*v is closer than min_separation are rejected as well, so the
/// returned point sits well inside its Voronoi cell.
Vec find_regular(const FiniteGroup& group, std::uint64_t seed, double min_separation = 1e-3);

}  // namespace orbitsp
