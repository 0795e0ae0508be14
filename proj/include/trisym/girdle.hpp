#ifndef TRISYM_GIRDLE_HPP
#define TRISYM_GIRDLE_HPP

#include <set>
#include <utility>
#include <vector>

#include "trisym/automorphism.hpp"
#include "trisym/triangulation.hpp"

namespace trisym {

// Sub-map extraction shared by the decomposition modules: the kept
// vertices and edges re-embedded with inherited rotations.
struct SubMap {
  PlanarMap map;
  std::vector<Vertex> to_orig;          // sub vertex -> original
  std::map<Vertex, Vertex> to_sub;      // original -> sub vertex
  Vertex sub(Vertex v) const { return to_sub.at(v); }
  Cell sub_edge(const Cell& e) const {
    return Cell::edge(to_sub.at(e.a), to_sub.at(e.b));
  }
};
SubMap extract_submap(const PlanarMap& T, const std::set<Vertex>& vertices,
                      const std::set<Cell>& edges);

// The reflective base structure: the union of the invariant cells of a
// reflection and the boundaries of its invariant faces, as a map of its
// own. The two non-central faces are the sides.
struct Girdle {
  PlanarMap map;
  std::vector<Cell> central;  // cyclic; central[0] is the root cell
  std::vector<std::pair<Face, Face>> diamonds;
  int j = 0;        // first index holding a vertex
  Vertex v1 = 0;    // == v2
  Cell e1, e2;      // side root edges (may coincide)
  Face side1 = -1, side2 = -1;
  std::set<Vertex> outer1, outer2;  // D_G per side

  Cell root() const { return central[0]; }
  int length() const { return map.face_degree(side1); }
  int diamond_count() const { return static_cast<int>(diamonds.size()); }
};

// The invariant cells of a reflection arranged in their incidence cycle,
// starting at c0. `flip` selects the non-canonical orientation.
std::vector<Cell> invariant_cycle(const Triangulation& T, const Cell& c0,
                                  const MapAutomorphism& phi,
                                  bool flip = false);

Girdle build_girdle(const Triangulation& T, const Cell& c0,
                    const MapAutomorphism& phi, bool flip = false);

std::pair<Girdle, NearTriangulation> decompose_reflective(
    const Triangulation& T, const Cell& c0, const MapAutomorphism& phi,
    bool flip = false);

RootedTriangulation compose_reflective(const Girdle& G,
                                       const NearTriangulation& N);

struct GirdleParams {
  int length = 0;    // side cycle length
  int diamonds = 0;
  CellDim root_dim = CellDim::Vertex;
};

std::vector<Girdle> enumerate_girdles(const GirdleParams& p);

}  // namespace trisym

#endif
