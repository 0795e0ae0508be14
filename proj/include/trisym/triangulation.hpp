#ifndef TRISYM_TRIANGULATION_HPP
#define TRISYM_TRIANGULATION_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <vector>

#include "trisym/core_map.hpp"

namespace trisym {

using BigInt = boost::multiprecision::cpp_int;

// A non-trivial triangulation: every face a triangle, at least 5 vertices.
struct Triangulation {
  PlanarMap map;
};

struct StrongRooting {
  Face face;
  Cell edge;
  Vertex vertex;
};

// Strongly rooted map with one distinguished face of arbitrary degree; all
// other faces are triangles. Outer cycle starts at the root vertex and
// follows the root face's trace orientation.
struct NearTriangulation {
  PlanarMap map;
  Face root_face;
  Cell root_edge;
  Vertex root_vertex;
  std::vector<Vertex> outer;  // outer cycle, outer[0] == root_vertex
  int num_inner_vertices() const {
    return map.num_vertices() - static_cast<int>(outer.size());
  }
  std::string serialize() const;
  std::string rooted_code() const;
};

struct RootedTriangulation {
  Triangulation tri;
  Cell root;
};

struct CountParams {
  long long n = 0;  // inner vertices
  long long m = 0;  // outer vertices minus 3
};

Triangulation validate_triangulation(const PlanarMap& map);
NearTriangulation validate_near_triangulation(const PlanarMap& map,
                                              const StrongRooting& rooting);
NearTriangulation parse_near_triangulation(const std::string& text);

// Inner edges joining two outer vertices.
std::vector<Cell> chords(const NearTriangulation& near);
bool chordless_outside(const NearTriangulation& near,
                       const std::set<Vertex>& D);

// Boundary correspondence used by insert: the gluing homeomorphism is
// forced once the root vertex and edge are matched. `near` is the filling
// after normalization (mirrored when the rootings wind the same way);
// image[t] is the G-vertex that normalized outer vertex t lands on.
struct BoundaryAlignment {
  NearTriangulation near;
  std::vector<Vertex> image;
};
BoundaryAlignment align_boundary(const NearTriangulation& N,
                                 const PlanarMap& G, Face f, Vertex v,
                                 const Cell& e);

// Glue N's interior into face f of G, matching root vertex/edge to v/e.
// The boundary correspondence is forced by (v, e); inner vertices of N get
// fresh ids starting at G's vertex count + 1.
PlanarMap insert(const NearTriangulation& N, const PlanarMap& G, Face f,
                 Vertex v, const Cell& e);

// Extract the sub-map of T inside the disc bounded by `boundary` (a closed
// dart walk; the disc is on the traced-face side of the darts), strongly
// rooted at (outer face, e, v). Exact inverse of insert.
NearTriangulation induced_near_triangulation(const PlanarMap& T,
                                             const std::vector<Dart>& boundary,
                                             Vertex v, const Cell& e);

// Number of strongly rooted near-triangulations with m+3 outer and n inner
// vertices. Exact.
BigInt count_rooted(const CountParams& p);

}  // namespace trisym

#endif
