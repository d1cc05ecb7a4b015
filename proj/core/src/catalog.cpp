#include "orbitsp/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace orbitsp {
namespace {

Mat diag(std::initializer_list<double> d) {
  Vec v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

Mat permutation3(int a, int b) {
  Mat m = Mat::Identity(3, 3);
  m.row(a).swap(m.row(b));
  return m;
}

CatalogEntry dihedral(std::string name, int m, std::string description) {
  return {std::move(name), std::move(description), 2,
          {rotation2(2.0 * M_PI / m), diag({1.0, -1.0})}, true};
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

}  // namespace

Mat rotation2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

const std::vector<CatalogEntry>& finite_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back({"C3", "rotations by multiples of 120 degrees in R^2", 2, {rotation2(2.0 * M_PI / 3.0)}, false});
    e.push_back({"C4", "rotations by multiples of 90 degrees in R^2", 2, {rotation2(M_PI / 2.0)}, false});
    e.push_back(dihedral("A2", 3, "dihedral group of order 6 (D3)"));
    e.push_back(dihedral("B2", 4, "dihedral group of order 8 (D4)"));
    e.push_back(dihedral("G2", 6, "dihedral group of order 12 (D6)"));
    e.push_back(dihedral("I2(5)", 5, "dihedral group of order 10, non-crystallographic"));
    Mat mirror(3, 3);
    mirror << 0, -1, 0, -1, 0, 0, 0, 0, 1;
    e.push_back({"A3", "symmetries of the regular tetrahedron, order 24", 3,
                 {permutation3(0, 1), permutation3(1, 2), mirror}, true});
    e.push_back({"B3", "signed permutations of R^3, order 48", 3,
                 {permutation3(0, 1), permutation3(1, 2), diag({1.0, 1.0, -1.0})}, true});
    return e;
  }();
  return entries;
}

std::optional<CatalogEntry> find_catalog_entry(const std::string& name) {
  std::string key = upper(name);
  if (key == "D3") key = "A2";
  if (key == "D4") key = "B2";
  if (key == "D6") key = "G2";
  if (key == "I2_5" || key == "I25") key = "I2(5)";
  for (const CatalogEntry& e : finite_catalog())
    if (e.name == key) return e;
  return std::nullopt;
}

FiniteGroup build_group(const CatalogEntry& entry, const Tolerance& tol) {
  std::vector<OrthMat> gens;
  for (const Mat& m : entry.generators) gens.emplace_back(m, tol);
  return close_generators(gens, tol, 100000, entry.name);
}

}  // namespace orbitsp
