#pragma once

// Randomised property suites over a finite group, shared by the unit tests
// (small counts) and the acceptance runner (full counts).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <orbitsp/group.hpp>

namespace props {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<orbitsp::Vec> witness;  // first failing instance
};

// Directions mixing generic vectors with non-regular ones (reflection
// normals, chamber rays and their images), so that faces and walls appear.
std::vector<orbitsp::Vec> mixed_points(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed);

// Orbit point of u with the largest inner product against v (brute force).
orbitsp::Vec best_aligned(const orbitsp::FiniteGroup& g, const orbitsp::Vec& u, const orbitsp::Vec& v);

SuiteResult support_additivity(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                               const orbitsp::Tolerance& tol);
SuiteResult peak_of_sum(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                        const orbitsp::Tolerance& tol);
SuiteResult cone_peak_duality(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                              const orbitsp::Tolerance& tol);
SuiteResult cone_symmetry(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                          const orbitsp::Tolerance& tol);
SuiteResult peak_is_cone_slice(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                               const orbitsp::Tolerance& tol);
SuiteResult orbit_meets_cone_once(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                                  const orbitsp::Tolerance& tol);

std::vector<SuiteResult> all_suites(const orbitsp::FiniteGroup& g, std::size_t n, std::uint64_t seed,
                                    const orbitsp::Tolerance& tol);

}  // namespace props
