#include "trisym/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>

namespace trisym {

Triangulation validate_triangulation(const PlanarMap& map) {
  for (Face f = 0; f < map.num_faces(); ++f)
    if (map.face_degree(f) != 3)
      fail(ErrorCode::NonTriangularFace,
           "face " + map.face_code(f) + " has degree " +
               std::to_string(map.face_degree(f)));
  if (map.num_vertices() <= 4)
    fail(ErrorCode::Trivial, "trivial triangulation on " +
                                 std::to_string(map.num_vertices()) +
                                 " vertices");
  return Triangulation{map};
}

NearTriangulation validate_near_triangulation(const PlanarMap& map,
                                              const StrongRooting& rooting) {
  if (rooting.face < 0 || rooting.face >= map.num_faces())
    fail(ErrorCode::RootNotIncident, "root face out of range");
  if (rooting.edge.dim != CellDim::Edge || !map.has_cell(rooting.edge))
    fail(ErrorCode::RootNotIncident, "root edge missing");
  if (rooting.vertex != rooting.edge.a && rooting.vertex != rooting.edge.b)
    fail(ErrorCode::RootNotIncident, "root vertex not an end of root edge");
  if (!map.incident(rooting.edge, Cell::face(rooting.face)))
    fail(ErrorCode::RootNotIncident, "root edge not on root face");

  const auto& fd = map.face_darts(rooting.face);
  std::vector<Vertex> outer;
  for (Dart d : fd) outer.push_back(map.tail(d));
  {
    std::set<Vertex> uniq(outer.begin(), outer.end());
    if (uniq.size() != outer.size() || outer.size() < 3)
      fail(ErrorCode::OuterNotCycle, "root face boundary is not a cycle");
  }
  for (Face f = 0; f < map.num_faces(); ++f)
    if (f != rooting.face && map.face_degree(f) != 3)
      fail(ErrorCode::InnerFaceNotTriangle,
           "inner face " + map.face_code(f) + " has degree " +
               std::to_string(map.face_degree(f)));

  int at = index_of(outer, rooting.vertex);
  std::rotate(outer.begin(), outer.begin() + at, outer.end());
  return NearTriangulation{map, rooting.face, rooting.edge, rooting.vertex,
                           outer};
}

std::string NearTriangulation::serialize() const {
  std::string s = map.serialize_rs1();
  s += "root: f=" + map.face_code(root_face) + " e=" +
       std::to_string(root_edge.a) + "-" + std::to_string(root_edge.b) +
       " v=" + std::to_string(root_vertex) + "\n";
  return s;
}

std::string NearTriangulation::rooted_code() const {
  return map.canonical_code(
      {Cell::face(root_face), root_edge, Cell::vertex(root_vertex)});
}

NearTriangulation parse_near_triangulation(const std::string& text) {
  std::istringstream is(text);
  std::string line, body, rootline;
  while (std::getline(is, line)) {
    std::string probe = line;
    size_t p = probe.find_first_not_of(" \t");
    if (p != std::string::npos && probe.compare(p, 5, "root:") == 0) {
      rootline = probe.substr(p + 5);
      break;
    }
    body += line;
    body += '\n';
  }
  if (rootline.empty())
    fail(ErrorCode::ParseError, "missing 'root:' line");
  PlanarMap m = parse_rs1(body);
  std::istringstream rs(rootline);
  std::string tok;
  std::string fcode;
  Vertex eu = 0, ev = 0, rv = 0;
  while (rs >> tok) {
    if (tok.rfind("f=", 0) == 0) {
      fcode = tok.substr(2);
    } else if (tok.rfind("e=", 0) == 0) {
      std::string e = tok.substr(2);
      size_t dash = e.find('-');
      if (dash == std::string::npos)
        fail(ErrorCode::ParseError, "bad root edge token");
      eu = std::atoi(e.substr(0, dash).c_str());
      ev = std::atoi(e.substr(dash + 1).c_str());
    } else if (tok.rfind("v=", 0) == 0) {
      rv = std::atoi(tok.substr(2).c_str());
    } else {
      fail(ErrorCode::ParseError, "bad root token '" + tok + "'");
    }
  }
  if (fcode.empty() || !eu || !ev || !rv)
    fail(ErrorCode::ParseError, "incomplete root line");
  Face f = m.face_by_code(fcode);
  return validate_near_triangulation(m, {f, Cell::edge(eu, ev), rv});
}

std::vector<Cell> chords(const NearTriangulation& near) {
  std::set<Vertex> outer(near.outer.begin(), near.outer.end());
  std::set<Cell> boundary;
  int L = static_cast<int>(near.outer.size());
  for (int i = 0; i < L; ++i)
    boundary.insert(Cell::edge(near.outer[i], near.outer[(i + 1) % L]));
  std::vector<Cell> out;
  for (Dart d = 0; d < near.map.num_darts(); d += 2) {
    Cell e = Cell::edge(near.map.tail(d), near.map.head(d));
    if (boundary.count(e)) continue;
    if (outer.count(e.a) && outer.count(e.b)) out.push_back(e);
  }
  return out;
}

bool chordless_outside(const NearTriangulation& near,
                       const std::set<Vertex>& D) {
  for (const Cell& c : chords(near))
    if (!D.count(c.a) && !D.count(c.b)) return false;
  return true;
}

namespace {

NearTriangulation mirrored_near(const NearTriangulation& N) {
  PlanarMap m = N.map.mirrored();
  Face outer = m.face_of(m.dart(N.outer[1], N.outer[0]));
  return validate_near_triangulation(
      m, {outer, N.root_edge, N.root_vertex});
}

}  // namespace

BoundaryAlignment align_boundary(const NearTriangulation& N0,
                                 const PlanarMap& G, Face f, Vertex v,
                                 const Cell& e) {
  const auto& fd = G.face_darts(f);
  int L = static_cast<int>(fd.size());
  std::vector<Vertex> B;
  for (Dart d : fd) B.push_back(G.tail(d));
  {
    std::set<Vertex> uniq(B.begin(), B.end());
    if (uniq.size() != B.size())
      fail(ErrorCode::OuterNotCycle, "target face boundary is not a cycle");
  }
  if (static_cast<int>(N0.outer.size()) != L)
    fail(ErrorCode::BoundaryLengthMismatch,
         "outer cycle has " + std::to_string(N0.outer.size()) +
             " vertices, face needs " + std::to_string(L));
  int u0 = index_of(B, v);
  if (u0 < 0) fail(ErrorCode::NotIncident, "v not on target face");
  int dirG;
  if (e == Cell::edge(v, B[(u0 + 1) % L]))
    dirG = +1;
  else if (e == Cell::edge(v, B[(u0 + L - 1) % L]))
    dirG = -1;
  else
    fail(ErrorCode::NotIncident, "e not on target face at v");

  // The boundary correspondence is orientation-reversing between the two
  // traced cycles; mirror N when the rooting directions coincide.
  auto dir_of = [](const NearTriangulation& nt) {
    int len = static_cast<int>(nt.outer.size());
    return nt.root_edge == Cell::edge(nt.outer[0], nt.outer[1])
               ? +1
               : (nt.root_edge == Cell::edge(nt.outer[0], nt.outer[len - 1])
                      ? -1
                      : 0);
  };
  BoundaryAlignment out;
  out.near = N0;
  int dirN = dir_of(out.near);
  if (dirN == 0)
    fail(ErrorCode::RootNotIncident, "bad near-triangulation root");
  if (dirN == dirG) {
    out.near = mirrored_near(N0);
    dirN = dir_of(out.near);
  }
  if (dirN != -dirG) fail(ErrorCode::InvariantViolation, "alignment failed");
  out.image.resize(L);
  for (int t = 0; t < L; ++t) out.image[t] = B[((u0 - t) % L + L) % L];
  return out;
}

PlanarMap insert(const NearTriangulation& N0, const PlanarMap& G, Face f,
                 Vertex v, const Cell& e) {
  BoundaryAlignment al = align_boundary(N0, G, f, v, e);
  const NearTriangulation* N = &al.near;
  const std::vector<Vertex>& A = N->outer;
  const auto& fd = G.face_darts(f);
  int L = static_cast<int>(fd.size());
  std::vector<Vertex> B;
  for (Dart d : fd) B.push_back(G.tail(d));

  int VG = G.num_vertices();
  std::vector<Vertex> mu(N->map.num_vertices() + 1, 0);
  std::set<Vertex> on_outer(A.begin(), A.end());
  for (int t = 0; t < L; ++t) mu[A[t]] = al.image[t];
  int fresh = VG;
  for (Vertex w = 1; w <= N->map.num_vertices(); ++w)
    if (!on_outer.count(w)) mu[w] = ++fresh;

  // Guard: a chord of N must not duplicate an existing edge of G.
  for (Dart d = 0; d < N->map.num_darts(); d += 2) {
    Vertex x = N->map.tail(d), y = N->map.head(d);
    if (on_outer.count(x) && on_outer.count(y)) {
      Cell img = Cell::edge(mu[x], mu[y]);
      bool on_cycle = false;
      for (int t = 0; t < L; ++t)
        if (Cell::edge(B[t], B[(t + 1) % L]) == img) on_cycle = true;
      if (!on_cycle && G.has_edge(img.a, img.b))
        fail(ErrorCode::DoubleEdgeCreated,
             "chord image " + img.str() + " already an edge");
    }
  }

  std::vector<std::vector<Vertex>> rot(fresh);
  for (Vertex w = 1; w <= VG; ++w) rot[w - 1] = G.neighbors(w);
  for (Vertex w = 1; w <= N->map.num_vertices(); ++w)
    if (!on_outer.count(w)) {
      auto& r = rot[mu[w] - 1];
      for (Vertex x : N->map.neighbors(w)) r.push_back(mu[x]);
    }
  for (int t = 0; t < L; ++t) {
    Vertex at = A[t];
    int st = index_of(B, al.image[t]);
    Vertex b_prev = B[(st + L - 1) % L];
    Vertex b_next = B[(st + 1) % L];
    // Interior fan of N at at: rotation rotated to start at the outer
    // successor; ends at the outer predecessor.
    std::vector<Vertex> rn = N->map.neighbors(at);
    Vertex succ = A[(t + 1) % L], pred = A[(t + L - 1) % L];
    int i0 = index_of(rn, succ);
    if (i0 < 0) fail(ErrorCode::InvariantViolation, "outer cycle broken");
    std::rotate(rn.begin(), rn.begin() + i0, rn.end());
    if (rn.back() != pred)
      fail(ErrorCode::InvariantViolation, "outer corner not contiguous");
    // rn = (succ, fan..., pred); mu(succ) == b_prev, mu(pred) == b_next.
    auto& r = rot[al.image[t] - 1];
    std::vector<Vertex> merged;
    int gpos = index_of(r, b_next);
    for (int k = 0; k < static_cast<int>(r.size()); ++k)
      merged.push_back(r[(gpos + k) % r.size()]);
    if (merged.back() != b_prev)
      fail(ErrorCode::InvariantViolation, "face corner not contiguous");
    for (int k = 1; k + 1 < static_cast<int>(rn.size()); ++k)
      merged.push_back(mu[rn[k]]);
    r = merged;
  }
  try {
    return PlanarMap::build(rot);
  } catch (const MapError& err) {
    if (err.code() == ErrorCode::ParallelEdge)
      fail(ErrorCode::DoubleEdgeCreated, err.what());
    throw;
  }
}

NearTriangulation induced_near_triangulation(const PlanarMap& T,
                                             const std::vector<Dart>& boundary,
                                             Vertex v, const Cell& e) {
  int L = static_cast<int>(boundary.size());
  if (L < 3) fail(ErrorCode::NotADiscBoundary, "boundary too short");
  std::vector<Vertex> C;
  for (int i = 0; i < L; ++i) {
    if (T.head(boundary[i]) != T.tail(boundary[(i + 1) % L]))
      fail(ErrorCode::NotADiscBoundary, "boundary darts not consecutive");
    C.push_back(T.tail(boundary[i]));
  }
  {
    std::set<Vertex> uniq(C.begin(), C.end());
    if (uniq.size() != C.size())
      fail(ErrorCode::NotADiscBoundary, "boundary is not a simple cycle");
  }
  std::set<Cell> cyc_edges;
  for (int i = 0; i < L; ++i)
    cyc_edges.insert(Cell::edge(C[i], C[(i + 1) % L]));

  // Faces on the traced side of the boundary darts, flooded without
  // crossing the cycle.
  std::vector<char> inside(T.num_faces(), 0);
  std::deque<Face> q;
  for (Dart d : boundary)
    if (!inside[T.face_of(d)]) {
      inside[T.face_of(d)] = 1;
      q.push_back(T.face_of(d));
    }
  while (!q.empty()) {
    Face f = q.front();
    q.pop_front();
    for (Dart d : T.face_darts(f)) {
      if (cyc_edges.count(Cell::edge(T.tail(d), T.head(d)))) continue;
      Face g = T.face_of(T.rev(d));
      if (!inside[g]) {
        inside[g] = 1;
        q.push_back(g);
      }
    }
  }
  for (Dart d : boundary)
    if (inside[T.face_of(T.rev(d))])
      fail(ErrorCode::NotADiscBoundary, "boundary does not separate");

  std::set<Cell> kept_edges(cyc_edges);
  std::set<Vertex> kept_vertices(C.begin(), C.end());
  for (Face f = 0; f < T.num_faces(); ++f)
    if (inside[f])
      for (Dart d : T.face_darts(f)) {
        kept_edges.insert(Cell::edge(T.tail(d), T.head(d)));
        kept_vertices.insert(T.tail(d));
      }

  std::vector<Vertex> verts(kept_vertices.begin(), kept_vertices.end());
  std::map<Vertex, Vertex> mu;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    mu[verts[i]] = i + 1;
  std::vector<std::vector<Vertex>> rot(verts.size());
  for (Vertex w : verts)
    for (Vertex x : T.neighbors(w))
      if (kept_edges.count(Cell::edge(w, x))) rot[mu[w] - 1].push_back(mu[x]);

  PlanarMap Nm = PlanarMap::build(rot);
  Face outer = Nm.face_of(Nm.dart(mu[C[1]], mu[C[0]]));
  if (Nm.face_degree(outer) != L)
    fail(ErrorCode::NotADiscBoundary, "outer face mismatch");
  if (e.dim != CellDim::Edge || !cyc_edges.count(e) ||
      (e.a != v && e.b != v) || !kept_vertices.count(v))
    fail(ErrorCode::RootNotIncident, "root not on boundary");
  return validate_near_triangulation(
      Nm, {outer, Cell::edge(mu[e.a], mu[e.b]), mu[v]});
}

BigInt count_rooted(const CountParams& p) {
  if (p.n < 0 || p.m < 0) fail(ErrorCode::BadParams, "negative parameter");
  auto fact = [](long long k) {
    BigInt r = 1;
    for (long long i = 2; i <= k; ++i) r *= i;
    return r;
  };
  BigInt num = 2 * fact(2 * p.m + 3) * fact(4 * p.n + 2 * p.m + 1);
  BigInt den =
      fact(p.m + 2) * fact(p.m) * fact(p.n) * fact(3 * p.n + 2 * p.m + 3);
  return num / den;
}

}  // namespace trisym
