#ifndef TRISYM_CENSUS_HPP
#define TRISYM_CENSUS_HPP

#include <functional>
#include <string>
#include <vector>

#include "trisym/automorphism.hpp"
#include "trisym/triangulation.hpp"

namespace trisym {

struct CensusEntry {
  Triangulation tri;
  std::string code;
  int aut_order = 0;
};

// All simple sphere triangulations with 5 <= V <= v_max, one per
// isomorphism class (orientation-reversing isomorphisms identified).
// Generated from K4 by vertex splitting with canonical-code dedup.
// `schedule` permutes the split enumeration; any value yields the same set.
std::vector<CensusEntry> generate_all(int v_max, int schedule = 0);

int census_soft_cap();

struct RootedCountCheck {
  int v = 0;
  BigInt census_side;   // sum of 4E/|Aut| over the census
  BigInt formula_side;  // A(v-3, 0)
  bool ok() const { return census_side == formula_side; }
};

std::vector<RootedCountCheck> verify_rooted_counts(int v_max);

struct SymmetryRow {
  std::string code;  // canonical code of the triangulation
  int v = 0;
  Cell root;
  GroupType type;
  int order = 0;
  int degree = 0;
};

std::vector<SymmetryRow> symmetry_statistics(int v_max);

struct RoundtripReport {
  long long reflective_cases = 0;
  long long rotative_cases = 0;
  long long dihedral_cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

RoundtripReport roundtrip_suite(int v_max);

}  // namespace trisym

#endif
