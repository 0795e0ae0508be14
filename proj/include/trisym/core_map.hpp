#ifndef TRISYM_CORE_MAP_HPP
#define TRISYM_CORE_MAP_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trisym {

enum class ErrorCode {
  NotConnected,
  LoopEdge,
  ParallelEdge,
  InconsistentRotation,
  EulerViolation,
  UnknownCell,
  NotIncident,
  DualNotSimple,
  ParseError,
  NonTriangularFace,
  Trivial,
  OuterNotCycle,
  InnerFaceNotTriangle,
  RootNotIncident,
  BoundaryLengthMismatch,
  DoubleEdgeCreated,
  NotADiscBoundary,
  NotReflective,
  NoRotation,
  NotDihedral,
  AlreadyTerminal,
  LengthMismatch,
  ChordViolation,
  TwoLayeredViolation,
  BadParams,
  BoundTooLarge,
  InvariantViolation,
};

const char* error_name(ErrorCode c);

class MapError : public std::runtime_error {
 public:
  MapError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw MapError(code, what);
}

using Vertex = int;  // 1-based vertex ids
using Dart = int;    // index into dart arrays; rev(d) == d^1
using Face = int;    // index into face list

enum class CellDim : uint8_t { Vertex = 0, Edge = 1, Face = 2 };

// A cell of a map: vertex, edge (unordered pair), or face (trace index).
struct Cell {
  CellDim dim;
  Vertex a = 0, b = 0;  // vertex / edge ends (a < b) / unused for faces
  Face f = -1;

  static Cell vertex(Vertex v) { return {CellDim::Vertex, v, 0, -1}; }
  static Cell edge(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return {CellDim::Edge, u, v, -1};
  }
  static Cell face(Face f) { return {CellDim::Face, 0, 0, f}; }

  bool operator==(const Cell& o) const {
    return dim == o.dim && a == o.a && b == o.b && f == o.f;
  }
  bool operator<(const Cell& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return f < o.f;
  }
  std::string str() const;
};

// A flag is a corner incidence (vertex, edge, face). Each dart carries two
// flags (one per end vertex), so a map has exactly 4E of them.
using Flag = int;

// Immutable sphere map given by clockwise rotations. All derived data
// (darts, faces, flags) is computed once at construction.
class PlanarMap {
 public:
  // rotation[i] lists the clockwise neighbours of vertex i+1.
  static PlanarMap build(const std::vector<std::vector<Vertex>>& rotation);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(head_.size()) / 2; }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_darts() const { return static_cast<int>(head_.size()); }
  int num_flags() const { return 2 * num_darts(); }

  const std::vector<Vertex>& neighbors(Vertex v) const { return rot_[v - 1]; }

  Vertex tail(Dart d) const { return tail_[d]; }
  Vertex head(Dart d) const { return head_[d]; }
  Dart rev(Dart d) const { return d ^ 1; }
  // Dart of the edge u->v; fails if absent.
  Dart dart(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  // Face tracing successor: next(u->v) = (v->w), w the clockwise successor
  // of u at v. Every dart lies on exactly one traced face.
  Dart next_on_face(Dart d) const { return fnext_[d]; }
  Dart prev_on_face(Dart d) const { return fprev_[d]; }
  Face face_of(Dart d) const { return face_of_[d]; }
  const std::vector<Dart>& face_darts(Face f) const { return faces_[f]; }
  int face_degree(Face f) const { return static_cast<int>(faces_[f].size()); }
  std::vector<Vertex> face_vertices(Face f) const;
  // Identity key: lexicographically minimal rotation of the dart cycle,
  // rendered as tail vertices. Stable under retracing.
  std::vector<Vertex> face_key(Face f) const;
  std::string face_code(Face f) const;
  Face face_by_code(const std::string& code) const;

  // Flags. flag = 2*dart + side, side 0 = tail corner, side 1 = head corner.
  Flag flag(Dart d, int side) const { return 2 * d + side; }
  Dart flag_dart(Flag fl) const { return fl / 2; }
  Vertex flag_vertex(Flag fl) const {
    return (fl & 1) ? head_[fl / 2] : tail_[fl / 2];
  }
  Cell flag_edge(Flag fl) const {
    return Cell::edge(tail_[fl / 2], head_[fl / 2]);
  }
  Face flag_face(Flag fl) const { return face_of_[fl / 2]; }
  // The three flag moves: change vertex / edge / face. Involutions that
  // flip the orientation class of the flag.
  Flag flag_sv(Flag fl) const { return fl ^ 1; }
  Flag flag_se(Flag fl) const;
  Flag flag_sf(Flag fl) const { return flag(rev(fl / 2), 1 - (fl & 1)); }
  // Orientation class: flags with side 0 are the "positive" corners.
  int flag_sign(Flag fl) const { return fl & 1; }
  Flag flag_at(Vertex v, const Cell& e, Face f) const;  // fails if no match

  // Cells and incidence.
  bool has_cell(const Cell& c) const;
  int degree(const Cell& c) const;
  std::vector<Cell> all_cells() const;
  // The 2*degree incident cells in clockwise cyclic order.
  std::vector<Cell> incident_cells_cyclic(const Cell& c) const;
  bool incident(const Cell& c, const Cell& x) const;
  Cell opposite_cell(const Cell& c, const Cell& x) const;
  int cell_distance(const Cell& c, const Cell& c2) const;

  PlanarMap dual() const;
  PlanarMap mirrored() const;
  // Same map with vertex i relabelled to perm[i-1].
  PlanarMap relabeled(const std::vector<Vertex>& perm) const;

  // Canonical code: equal iff the maps are isomorphic, allowing
  // orientation reversal. Optional marks append the relabelled images of
  // the given cells, giving a code for marked (rooted) maps.
  std::string canonical_code(const std::vector<Cell>& marks = {}) const;

  std::string serialize_rs1() const;

 private:
  int n_ = 0;
  std::vector<std::vector<Vertex>> rot_;   // clockwise neighbour lists
  std::vector<Vertex> tail_, head_;        // per dart
  std::vector<int> rot_pos_;               // index of dart in rot_[tail-1]
  std::vector<Dart> vdart_;                // one dart leaving each vertex
  std::vector<Dart> fnext_, fprev_;
  std::vector<Face> face_of_;
  std::vector<std::vector<Dart>> faces_;
  std::map<std::pair<Vertex, Vertex>, Dart> dart_index_;

  void encode_from(Dart start, bool mirror, std::string& out,
                   std::vector<int>& label, std::vector<Vertex>& order) const;
};

PlanarMap parse_rs1(const std::string& text);

// Cyclic helpers shared across modules.
template <typename T>
int index_of(const std::vector<T>& xs, const T& x) {
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    if (xs[i] == x) return i;
  return -1;
}

}  // namespace trisym

#endif
