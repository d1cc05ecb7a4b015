#include <doctest.h>

#include <cmath>

#include <orbitsp/catalog.hpp>
#include <orbitsp/group.hpp>

#include "oracles.hpp"

using namespace orbitsp;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

FiniteGroup catalog_group(const char* name) { return build_group(*find_catalog_entry(name)); }

bool same_elements(const FiniteGroup& g, const std::vector<Mat>& expected) {
  if (g.order() != expected.size()) return false;
  for (const Mat& m : expected) {
    bool found = false;
    for (const OrthMat& e : g.elements) found = found || (e.matrix() - m).norm() < 1e-9;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("closure reproduces the dihedral groups element by element") {
  CHECK(same_elements(catalog_group("A2"), oracle::dihedral(3)));
  CHECK(same_elements(catalog_group("B2"), oracle::dihedral(4)));
  CHECK(same_elements(catalog_group("G2"), oracle::dihedral(6)));
  CHECK(same_elements(catalog_group("I2(5)"), oracle::dihedral(5)));
  CHECK(same_elements(catalog_group("C3"), oracle::dihedral(3, false)));
  CHECK(same_elements(catalog_group("C4"), oracle::dihedral(4, false)));
}

TEST_CASE("closure reproduces the rank three groups") {
  CHECK(same_elements(catalog_group("B3"), oracle::signed_permutations3()));
  CHECK(same_elements(catalog_group("A3"), oracle::even_signed_permutations3()));
}

TEST_CASE("closure bookkeeping") {
  const FiniteGroup d4 = catalog_group("D4");
  CHECK(d4.order() == 8);
  CHECK(d4.identity().matrix().isIdentity());
  REQUIRE(d4.generator_indices.size() == 2);
  for (std::size_t idx : d4.generator_indices) CHECK(idx < d4.order());

  const FiniteGroup t = trivial_group(3);
  CHECK(t.order() == 1);
  CHECK(t.dim == 3);
  CHECK_THROWS(close_generators({}));
}

TEST_CASE("an irrational rotation does not close") {
  const std::vector<OrthMat> gens{OrthMat(rotation2(1.0))};
  CHECK_THROWS_AS(close_generators(gens, {}, 500), OrderExceeded);
}

TEST_CASE("D4 orbit of (2,1) is the octagon of signed swaps") {
  const Orbit o = orbit(catalog_group("D4"), vec({2, 1}));
  CHECK(o.size() == 8);
  CHECK(o.points.front() == vec({2, 1}));
  const std::vector<Vec> expected{vec({2, 1}),  vec({1, 2}),  vec({-1, 2}), vec({-2, 1}),
                                  vec({-2, -1}), vec({-1, -2}), vec({1, -2}), vec({2, -1})};
  CHECK(oracle::same_point_set(o.points, expected, 1e-12));
  const FiniteGroup d4 = catalog_group("D4");
  for (std::size_t i = 0; i < o.size(); ++i) CHECK((d4.elements[o.point_to_element[i]] * o.base - o.points[i]).norm() < 1e-12);
}

TEST_CASE("stabilizers of special points") {
  const FiniteGroup d4 = catalog_group("D4");
  CHECK(stabilizer(d4, vec({1, 0})).order() == 2);
  CHECK(stabilizer(d4, vec({1, 1})).order() == 2);
  CHECK(stabilizer(d4, vec({0, 0})).order() == 8);
  CHECK(stabilizer(d4, vec({2, 1})).order() == 1);
  CHECK(is_regular(catalog_group("C4"), vec({1, 0})));
  CHECK_FALSE(is_regular(d4, vec({1, 0})));
  CHECK(orbit(d4, vec({0, 0})).size() == 1);
}

TEST_CASE("orbit-stabilizer over the catalog") {
  Rng rng(11);
  for (const CatalogEntry& e : finite_catalog()) {
    const FiniteGroup g = build_group(e);
    for (int k = 0; k < 100; ++k) {
      // Every fourth vector is pushed onto a mirror or axis to get a bigger stabilizer.
      Vec v = rng.normal_vec(g.dim);
      if (k % 4 == 0) v(0) = 0.0;
      if (k % 8 == 0 && g.dim > 1) v(1) = v(0);
      CHECK(orbit(g, v).size() * stabilizer(g, v).order() == g.order());
    }
  }
}

TEST_CASE("find_regular is seeded and returns a regular unit vector") {
  const FiniteGroup b3 = catalog_group("B3");
  const Vec a = find_regular(b3, 1);
  CHECK(a == find_regular(b3, 1));
  CHECK(is_regular(b3, a));
  CHECK(a.norm() == doctest::Approx(1.0));
  CHECK_FALSE(find_regular(b3, 2) == a);
  const FiniteGroup c4 = catalog_group("C4");
  CHECK(is_regular(c4, find_regular(c4, 3)));
}
