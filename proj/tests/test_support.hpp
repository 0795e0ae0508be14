#ifndef TRISYM_TEST_SUPPORT_HPP
#define TRISYM_TEST_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "trisym/automorphism.hpp"
#include "trisym/core_map.hpp"

namespace trisym::testing {

inline PlanarMap k4() {
  return PlanarMap::build({{2, 3, 4}, {1, 4, 3}, {1, 2, 4}, {1, 3, 2}});
}

// Triangular bipyramid: equator 1,2,3; apexes 4 (north), 5 (south).
inline PlanarMap bipyr5() {
  return PlanarMap::build(
      {{4, 3, 5, 2}, {4, 1, 5, 3}, {4, 2, 5, 1}, {1, 2, 3}, {1, 3, 2}});
}

// Octahedron: 1 north, 6 south, equator 2,3,4,5.
inline PlanarMap oct6() {
  return PlanarMap::build({{2, 3, 4, 5},
                           {1, 5, 6, 3},
                           {1, 2, 6, 4},
                           {1, 3, 6, 5},
                           {1, 4, 6, 2},
                           {5, 4, 3, 2}});
}

inline PlanarMap load_fixture(const std::string& name) {
  std::ifstream in(std::string(TRISYM_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rs1(ss.str());
}

inline PlanarMap random_relabeling(const PlanarMap& m, std::mt19937& rng) {
  std::vector<Vertex> perm(m.num_vertices());
  for (int i = 0; i < m.num_vertices(); ++i) perm[i] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  return m.relabeled(perm);
}

// Brute-force oracle: graph automorphisms that respect the embedding, found
// by backtracking over adjacency-preserving vertex bijections.
inline int brute_force_map_aut_order(const PlanarMap& m) {
  int n = m.num_vertices();
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex w : m.neighbors(v)) adj[v][w] = 1;
  std::vector<Vertex> img(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  int count = 0;

  auto rotation_compatible = [&](int chirality) {
    // chirality 0: image lists must be equal as cyclic sequences,
    // chirality 1: equal after reversal.
    for (Vertex v = 1; v <= n; ++v) {
      std::vector<Vertex> want;
      for (Vertex w : m.neighbors(v)) want.push_back(img[w]);
      std::vector<Vertex> have = m.neighbors(img[v]);
      if (chirality) std::reverse(have.begin(), have.end());
      if (want.size() != have.size()) return false;
      int d = static_cast<int>(want.size());
      int at = index_of(have, want[0]);
      if (at < 0) return false;
      for (int i = 0; i < d; ++i)
        if (want[i] != have[(at + i) % d]) return false;
    }
    return true;
  };

  std::function<void(int)> rec = [&](int v) {
    if (v > n) {
      if (rotation_compatible(0)) ++count;
      if (rotation_compatible(1)) ++count;
      return;
    }
    for (Vertex w = 1; w <= n; ++w) {
      if (used[w]) continue;
      if (m.neighbors(v).size() != m.neighbors(w).size()) continue;
      bool ok = true;
      for (Vertex x = 1; x < v && ok; ++x)
        if (adj[v][x] != adj[w][img[x]]) ok = false;
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      rec(v + 1);
      used[w] = 0;
    }
  };
  rec(1);
  return count;
}

}  // namespace trisym::testing

#endif
