#ifndef TRISYM_FYKENET_HPP
#define TRISYM_FYKENET_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "trisym/automorphism.hpp"
#include "trisym/girdle.hpp"
#include "trisym/triangulation.hpp"

namespace trisym {

// A pole-to-pole path orbit under a rotation group. Demonstrative only:
// spindles depend on tie-breaking and are not canonical.
struct Spindle {
  Cell north, south;
  std::vector<std::vector<Vertex>> paths;
  std::vector<std::string> segment_codes;  // sorted canonical codes
};

// One level F_i: a plane symmetric cactus between the poles.
struct PlaneCactus {
  enum class Kind { Ordinary, Antarctic, PseudoAntarctic };
  Kind kind = Kind::Ordinary;
  std::set<Vertex> vertices;
  std::set<Cell> edges;
  // Centre cycle, clockwise around the north pole (empty darts when the
  // centre degenerates to a vertex or an edge at the last level).
  std::vector<Vertex> centre;
  std::vector<Dart> centre_darts;
  std::map<Vertex, Vertex> base_of;  // branch base per vertex
  // Blocks of the branches: vertex sets with their anchor (the block
  // vertex closest to the base) and parent block index (-1 at the base).
  struct Block {
    std::set<Vertex> vertices;
    std::set<Cell> edges;
    bool is_cycle = false;
    Vertex anchor = 0;
    int parent = -1;
  };
  std::vector<Block> blocks;
  int block_of_edge(const Cell& e) const;
};

struct Levels {
  std::vector<PlaneCactus> levels;
  Cell north, south;
  int k() const { return static_cast<int>(levels.size()) - 1; }
};

struct Liaison {
  Vertex base = 0, source = 0, target = 0;  // u_j^i, v_j^i, w_j^{i+1}
};

struct LiaisonTable {
  int a = 1, m = 0;
  // rows[i][j] for 0 <= i <= k-1, 0 <= j < a*m.
  std::vector<std::vector<Liaison>> rows;
};

enum class FykeFaceClass { North, Leaf, Segment, PseudoAntarctic, South };

struct FykeFace {
  Face face = -1;
  FykeFaceClass cls = FykeFaceClass::North;
  Vertex root_v = 0;
  Cell root_e;
  // Segment markers (fyke-net vertex ids).
  Vertex sv1 = 0, sv2 = 0, sw1 = 0, sw2 = 0, su = 0;
  bool order2 = false;  // the m=2 clause applies
  int level = -1;
  int orbit = -1;
  bool orbit_rep = false;
};

struct FykeNet {
  PlanarMap map;
  int m = 0, a = 1, k = 0;
  Cell north, south;                     // cells of `map`
  std::vector<Vertex> to_host;           // map vertex -> host vertex (or id)
  LiaisonTable liaisons;                 // host ids when built from a map
  std::vector<FykeFace> faces;
  std::vector<std::set<Vertex>> layers;  // map ids per level

  const FykeFace* face_info(Face f) const;
};

Spindle find_spindle(const Triangulation& T, const Cell& c0,
                     const std::vector<MapAutomorphism>& H,
                     bool prefer_high_ids = false);

// Oriented first invariant cycle around c0 (darts traced on the far side).
std::vector<Dart> first_level(const Triangulation& T, const Cell& c0);

// Frontier cactus of the next level below the oriented cycle `centre`.
PlaneCactus next_level(const Triangulation& T,
                       const std::vector<MapAutomorphism>& H,
                       const std::vector<Dart>& centre, const Cell& south);

Levels compute_levels(const Triangulation& T, const Cell& c0,
                      const std::vector<MapAutomorphism>& H);

LiaisonTable compute_liaisons(const Triangulation& T, const Cell& c0,
                              const std::vector<MapAutomorphism>& H,
                              const Levels& L);

FykeNet build_fyke_net(const Triangulation& T, const Cell& c0,
                       const std::vector<MapAutomorphism>& H);

// Clauses (rightmost face / layer faces / no top chords / order-2) of the
// segment lemma, applied to a strongly rooted filling whose outer cycle
// carries the markers.
bool is_two_layered(const NearTriangulation& N, Vertex v2, Vertex w1,
                    Vertex w2, Vertex u, bool order2);

struct RotativeDecomposition {
  FykeNet net;
  std::map<int, NearTriangulation> fillings;  // by orbit id
};

RotativeDecomposition decompose_rotative(const Triangulation& T,
                                         const Cell& c0,
                                         const std::vector<MapAutomorphism>& H);

RootedTriangulation compose_rotative(
    const FykeNet& net, const std::map<int, NearTriangulation>& fillings);

// Independent re-derivation of the edge-membership proposition: liaison
// edges, centre edges, and branch edges below a target.
std::set<Cell> proposition_edge_set(const Triangulation& T, const Cell& c0,
                                    const std::vector<MapAutomorphism>& H);

// Rooted cactus description for standalone fyke-net construction: blocks
// in clockwise order at each vertex; a block is an edge or a cycle with
// subtrees hanging off its non-root vertices.
struct CactusNode;
struct CactusBlock {
  bool is_cycle = false;
  std::vector<CactusNode> children;  // 1 for an edge, len-1 for a cycle
};
struct CactusNode {
  std::vector<CactusBlock> blocks;
};

struct FykeNetParams {
  int m = 0;
  CellDim north_dim = CellDim::Vertex;
  CellDim south_dim = CellDim::Vertex;
  int a = 1;      // only for a vertex north pole
  int k = 1;      // last level index
  std::vector<int> centre_len;  // length of C_i for i = 1..k (host of level i)
  // For each level i = 1..k and each base slot j = 0..a-1: position of the
  // base on C_i (clockwise offset within the fundamental window) and the
  // branch cactus attached there.
  std::vector<std::vector<int>> base_pos;
  std::vector<std::vector<CactusNode>> branches;
  // Source positions along the centre for levels 0..k-1 (offset of v_j^i
  // from u_j^i along the walk; sources must be reachable clockwise).
  std::vector<std::vector<int>> source_shift;
  // Target choice per (level i = 1..k, slot j = 0..a*m-1): index of the
  // chosen target vertex inside the branch at the corresponding base,
  // counted over the clockwise vertex order of the branch.
  std::vector<std::vector<int>> target_index;
};

FykeNet construct_fyke_net(const FykeNetParams& p);

}  // namespace trisym

#endif
