#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitsp/group.hpp"

namespace orbitsp {

struct CatalogEntry {
  std::string name;         // canonical key, e.g. "B2"
  std::string description;
  int dim = 0;
  std::vector<Mat> generators;
  bool coxeter = false;     // expected verdict
};

Mat rotation2(double angle);

// C3, C4, A2, B2, G2, I2(5), A3, B3 in that order.
const std::vector<CatalogEntry>& finite_catalog();

// Case-insensitive lookup; also accepts D3/D4/D6 and I2_5.
std::optional<CatalogEntry> find_catalog_entry(const std::string& name);

FiniteGroup build_group(const CatalogEntry& entry, const Tolerance& tol = {});

}  // namespace orbitsp
