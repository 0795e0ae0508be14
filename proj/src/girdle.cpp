#include "trisym/girdle.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace trisym {

SubMap extract_submap(const PlanarMap& T, const std::set<Vertex>& vertices,
                      const std::set<Cell>& edges) {
  SubMap out;
  out.to_orig.assign(vertices.begin(), vertices.end());
  for (int i = 0; i < static_cast<int>(out.to_orig.size()); ++i)
    out.to_sub[out.to_orig[i]] = i + 1;
  std::vector<std::vector<Vertex>> rot(out.to_orig.size());
  for (Vertex v : vertices)
    for (Vertex w : T.neighbors(v))
      if (edges.count(Cell::edge(v, w)))
        rot[out.to_sub[v] - 1].push_back(out.to_sub[w]);
  out.map = PlanarMap::build(rot);
  return out;
}

std::vector<Cell> invariant_cycle(const Triangulation& T, const Cell& c0,
                                  const MapAutomorphism& phi, bool flip) {
  if (!phi.fixes(c0) ||
      classify_at(phi, c0).kind != AutClassKind::ReflectiveAt)
    fail(ErrorCode::NotReflective,
         "automorphism is not reflective at " + c0.str());
  const PlanarMap& m = T.map;
  std::vector<Cell> I = fixed_cells(phi);
  std::set<Cell> iset(I.begin(), I.end());

  // Walk the incidence cycle through c0: each invariant cell has exactly
  // two invariant incident cells and they lie opposite.
  auto fixed_nbrs = [&](const Cell& c) {
    std::vector<Cell> nb;
    for (const Cell& x : m.incident_cells_cyclic(c))
      if (iset.count(x) && (nb.empty() || !(nb.back() == x) ) &&
          index_of(nb, x) < 0)
        nb.push_back(x);
    return nb;
  };
  auto start_nbrs = fixed_nbrs(c0);
  if (start_nbrs.size() != 2)
    fail(ErrorCode::InvariantViolation,
         "root has " + std::to_string(start_nbrs.size()) +
             " invariant incident cells");
  std::vector<Cell> cyc{c0};
  Cell prev = c0;
  Cell cur = std::min(start_nbrs[0], start_nbrs[1]);
  while (!(cur == c0)) {
    cyc.push_back(cur);
    auto nb = fixed_nbrs(cur);
    if (nb.size() != 2)
      fail(ErrorCode::InvariantViolation,
           cur.str() + " has " + std::to_string(nb.size()) +
               " invariant incident cells");
    Cell next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (cyc.size() != I.size())
    fail(ErrorCode::InvariantViolation,
         "invariant cells do not form a single cycle");

  // Canonical orientation: the direction with the lexicographically
  // smaller serialized sequence; `flip` selects the other one.
  auto serialize = [](const std::vector<Cell>& cs) {
    std::ostringstream os;
    for (const Cell& c : cs) os << c.str() << ";";
    return os.str();
  };
  std::vector<Cell> rev{cyc[0]};
  for (int i = static_cast<int>(cyc.size()) - 1; i >= 1; --i)
    rev.push_back(cyc[i]);
  bool take_rev = serialize(rev) < serialize(cyc);
  if (flip) take_rev = !take_rev;
  return take_rev ? rev : cyc;
}

namespace {

// Shared marker derivation: everything a girdle carries follows from its
// map and the oriented central sequence.
Girdle finish_girdle(PlanarMap map, std::vector<Cell> central) {
  Girdle g;
  g.map = std::move(map);
  g.central = std::move(central);
  int n = static_cast<int>(g.central.size());
  std::set<Cell> central_set(g.central.begin(), g.central.end());

  std::set<Face> central_faces;
  for (const Cell& c : g.central)
    if (c.dim == CellDim::Face) central_faces.insert(c.f);
  for (int i = 0; i < n; ++i) {
    const Cell& c = g.central[i];
    if (c.dim == CellDim::Face) {
      const Cell& nxt = g.central[(i + 1) % n];
      if (nxt.dim == CellDim::Edge) {
        const Cell& f2 = g.central[(i + 2) % n];
        if (f2.dim != CellDim::Face)
          fail(ErrorCode::InvariantViolation, "malformed diamond");
        g.diamonds.emplace_back(c.f, f2.f);
      }
    }
  }
  std::vector<Face> sides;
  for (Face f = 0; f < g.map.num_faces(); ++f)
    if (!central_faces.count(f)) sides.push_back(f);
  if (sides.size() != 2)
    fail(ErrorCode::InvariantViolation,
         "girdle has " + std::to_string(sides.size()) + " sides");
  if (g.map.face_key(sides[1]) < g.map.face_key(sides[0]))
    std::swap(sides[0], sides[1]);
  g.side1 = sides[0];
  g.side2 = sides[1];
  if (g.map.face_degree(g.side1) != g.map.face_degree(g.side2))
    fail(ErrorCode::InvariantViolation, "side lengths differ");

  g.j = -1;
  for (int i = 0; i < n; ++i)
    if (g.central[i].dim == CellDim::Vertex) {
      g.j = i;
      break;
    }
  if (g.j < 0) fail(ErrorCode::InvariantViolation, "no central vertex");
  g.v1 = g.central[g.j].a;
  const Cell& after = g.central[(g.j + 1) % n];
  auto side_has = [&](Face s, const Cell& e) {
    return g.map.incident(e, Cell::face(s));
  };
  if (after.dim == CellDim::Edge) {
    g.e1 = g.e2 = after;
    if (!side_has(g.side1, g.e1) || !side_has(g.side2, g.e2))
      fail(ErrorCode::InvariantViolation, "root edge not on both sides");
  } else if (after.dim == CellDim::Face) {
    // The unique boundary edge of each side incident with the diamond
    // face that follows the root vertex.
    g.e1 = g.e2 = Cell{};
    bool got1 = false, got2 = false;
    for (Dart d : g.map.face_darts(after.f)) {
      Cell e = Cell::edge(g.map.tail(d), g.map.head(d));
      if (!(e.a == g.v1 || e.b == g.v1)) continue;
      if (side_has(g.side1, e)) {
        g.e1 = e;
        got1 = true;
      }
      if (side_has(g.side2, e)) {
        g.e2 = e;
        got2 = true;
      }
    }
    if (!got1 || !got2)
      fail(ErrorCode::InvariantViolation, "no side edge at the root vertex");
  } else {
    fail(ErrorCode::InvariantViolation, "vertex follows vertex in sequence");
  }

  std::set<Vertex> central_vertices;
  for (const Cell& c : g.central)
    if (c.dim == CellDim::Vertex) central_vertices.insert(c.a);
  for (Face s : {g.side1, g.side2}) {
    std::set<Vertex>& D = (s == g.side1) ? g.outer1 : g.outer2;
    for (Vertex v : g.map.face_vertices(s))
      if (!central_vertices.count(v)) D.insert(v);
  }
  return g;
}

}  // namespace

Girdle build_girdle(const Triangulation& T, const Cell& c0,
                    const MapAutomorphism& phi, bool flip) {
  const PlanarMap& m = T.map;
  std::vector<Cell> cyc = invariant_cycle(T, c0, phi, flip);

  std::set<Vertex> verts;
  std::set<Cell> edges;
  for (const Cell& c : cyc) {
    switch (c.dim) {
      case CellDim::Vertex:
        verts.insert(c.a);
        break;
      case CellDim::Edge:
        verts.insert(c.a);
        verts.insert(c.b);
        edges.insert(c);
        break;
      case CellDim::Face:
        for (Dart d : m.face_darts(c.f)) {
          verts.insert(m.tail(d));
          edges.insert(Cell::edge(m.tail(d), m.head(d)));
        }
        break;
    }
  }
  SubMap sub = extract_submap(m, verts, edges);
  std::vector<Cell> central;
  for (const Cell& c : cyc) {
    switch (c.dim) {
      case CellDim::Vertex:
        central.push_back(Cell::vertex(sub.sub(c.a)));
        break;
      case CellDim::Edge:
        central.push_back(sub.sub_edge(c));
        break;
      case CellDim::Face: {
        Dart d = m.face_darts(c.f)[0];
        Dart sd = sub.map.dart(sub.sub(m.tail(d)), sub.sub(m.head(d)));
        central.push_back(Cell::face(sub.map.face_of(sd)));
        break;
      }
    }
  }
  return finish_girdle(sub.map, central);
}

namespace {

// Boundary of a girdle side as a dart cycle of the host triangulation.
std::vector<Dart> side_boundary_in_host(const PlanarMap& host,
                                        const Girdle& g, const SubMap& sub,
                                        Face side) {
  std::vector<Dart> out;
  for (Dart d : g.map.face_darts(side))
    out.push_back(host.dart(sub.to_orig[g.map.tail(d) - 1],
                            sub.to_orig[g.map.head(d) - 1]));
  return out;
}

}  // namespace

std::pair<Girdle, NearTriangulation> decompose_reflective(
    const Triangulation& T, const Cell& c0, const MapAutomorphism& phi,
    bool flip) {
  const PlanarMap& m = T.map;
  std::vector<Cell> cyc = invariant_cycle(T, c0, phi, flip);

  // Rebuild the submap bookkeeping to translate between spaces.
  std::set<Vertex> verts;
  std::set<Cell> edges;
  for (const Cell& c : cyc) {
    if (c.dim == CellDim::Vertex) verts.insert(c.a);
    if (c.dim == CellDim::Edge) {
      verts.insert(c.a);
      verts.insert(c.b);
      edges.insert(c);
    }
    if (c.dim == CellDim::Face)
      for (Dart d : m.face_darts(c.f)) {
        verts.insert(m.tail(d));
        edges.insert(Cell::edge(m.tail(d), m.head(d)));
      }
  }
  SubMap sub = extract_submap(m, verts, edges);
  Girdle g = build_girdle(T, c0, phi, flip);

  auto to_host_vertex = [&](Vertex v) { return sub.to_orig[v - 1]; };
  auto to_host_edge = [&](const Cell& e) {
    return Cell::edge(to_host_vertex(e.a), to_host_vertex(e.b));
  };

  std::vector<Dart> b1 = side_boundary_in_host(m, g, sub, g.side1);
  std::vector<Dart> b2 = side_boundary_in_host(m, g, sub, g.side2);
  NearTriangulation N1 = induced_near_triangulation(
      m, b1, to_host_vertex(g.v1), to_host_edge(g.e1));
  NearTriangulation N2 = induced_near_triangulation(
      m, b2, to_host_vertex(g.v1), to_host_edge(g.e2));
  if (N1.rooted_code() != N2.rooted_code())
    fail(ErrorCode::InvariantViolation,
         "the two side fillings are not isomorphic");

  // Chords of the filling must end in outer vertices of the girdle. The
  // outer cycle of the extraction runs along the reversed host boundary,
  // anchored at the root vertex.
  {
    std::vector<Vertex> host_cycle;
    for (Dart d : b1) host_cycle.push_back(m.tail(d));
    int L = static_cast<int>(host_cycle.size());
    int at = index_of(host_cycle, to_host_vertex(g.v1));
    std::set<Vertex> Dn;
    for (int t = 0; t < L; ++t) {
      Vertex hv = host_cycle[((at - t) % L + L) % L];
      if (g.outer1.count(sub.sub(hv))) Dn.insert(N1.outer[t]);
    }
    if (!chordless_outside(N1, Dn))
      fail(ErrorCode::InvariantViolation,
           "side filling has a chord between central vertices");
  }
  return {std::move(g), std::move(N1)};
}

RootedTriangulation compose_reflective(const Girdle& g,
                                       const NearTriangulation& N) {
  if (static_cast<int>(N.outer.size()) != g.length())
    fail(ErrorCode::LengthMismatch,
         "filling has " + std::to_string(N.outer.size()) +
             " outer vertices, girdle length is " +
             std::to_string(g.length()));
  // Chordless outside D: check the first side's alignment.
  for (int side = 0; side < 2; ++side) {
    Face f = side == 0 ? g.side1 : g.side2;
    const Cell& e = side == 0 ? g.e1 : g.e2;
    const std::set<Vertex>& D = side == 0 ? g.outer1 : g.outer2;
    BoundaryAlignment al = align_boundary(N, g.map, f, g.v1, e);
    std::map<Vertex, Vertex> to_g;
    for (size_t t = 0; t < al.image.size(); ++t)
      to_g[al.near.outer[t]] = al.image[t];
    for (const Cell& ch : chords(al.near))
      if (!D.count(to_g[ch.a]) && !D.count(to_g[ch.b]))
        fail(ErrorCode::ChordViolation,
             "chord " + ch.str() + " joins two central vertices");
  }
  // Insert into side1, then locate side2 by its untouched boundary.
  std::string side2_key = g.map.face_code(g.side2);
  PlanarMap H = insert(N, g.map, g.side1, g.v1, g.e1);
  Face f2 = H.face_by_code(side2_key);
  H = insert(N, H, f2, g.v1, g.e2);

  Triangulation T = validate_triangulation(H);
  Cell root = g.root();
  if (root.dim == CellDim::Face) {
    // Diamond faces keep their boundary across insertions.
    root = Cell::face(H.face_by_code(g.map.face_code(root.f)));
  }
  return RootedTriangulation{std::move(T), root};
}

std::vector<Girdle> enumerate_girdles(const GirdleParams& p) {
  int L = p.length, d = p.diamonds;
  if (L < 3 || d < 0) fail(ErrorCode::BadParams, "need length >= 3");
  int nv = L - d;  // central vertices
  if (2 * d > L)
    fail(ErrorCode::BadParams, "diamonds may cover at most half the girdle");
  if (nv < 2) fail(ErrorCode::BadParams, "need at least two central vertices");
  if (p.root_dim == CellDim::Face && d < 1)
    fail(ErrorCode::BadParams, "a face root requires at least one diamond");
  if (p.root_dim == CellDim::Edge && d == nv)
    fail(ErrorCode::BadParams, "an edge root requires a central edge");

  std::vector<Girdle> out;
  std::set<std::string> seen;
  // Arrangement: slot i sits between central vertices i and i+1.
  for (int mask = 0; mask < (1 << nv); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != d) continue;
    // Build the arrangement's map. Vertex ids: b_i = i+1; diamond corners
    // appended in slot order, north first.
    std::vector<int> corner_x(nv, 0), corner_y(nv, 0);
    int next = nv;
    for (int i = 0; i < nv; ++i)
      if (mask & (1 << i)) {
        corner_x[i] = ++next;
        corner_y[i] = ++next;
      }
    std::vector<std::vector<Vertex>> rot(next);
    auto bi = [&](int i) { return ((i % nv) + nv) % nv + 1; };
    bool bad = false;
    for (int i = 0; i < nv && !bad; ++i) {
      bool prev_d = mask & (1 << ((i + nv - 1) % nv));
      bool next_d = mask & (1 << i);
      auto& r = rot[i];
      if (!prev_d && !next_d) {
        if (nv == 2) {  // two parallel plain edges would coincide
          bad = true;
          break;
        }
        r = {bi(i - 1), bi(i + 1)};
      } else if (!prev_d && next_d) {
        r = {bi(i - 1), corner_y[i], corner_x[i]};
      } else if (prev_d && !next_d) {
        r = {corner_x[(i + nv - 1) % nv], corner_y[(i + nv - 1) % nv],
             bi(i + 1)};
      } else {
        r = {corner_x[(i + nv - 1) % nv], corner_y[(i + nv - 1) % nv],
             corner_y[i], corner_x[i]};
      }
    }
    if (bad) continue;
    for (int i = 0; i < nv; ++i)
      if (mask & (1 << i)) {
        rot[corner_x[i] - 1] = {bi(i), corner_y[i], bi(i + 1)};
        rot[corner_y[i] - 1] = {bi(i + 1), corner_x[i], bi(i)};
      }
    PlanarMap map = [&]() -> PlanarMap {
      return PlanarMap::build(rot);
    }();

    // Central sequence.
    std::vector<Cell> central;
    for (int i = 0; i < nv; ++i) {
      central.push_back(Cell::vertex(bi(i)));
      if (mask & (1 << i)) {
        Dart dw = map.dart(corner_x[i], corner_y[i]);
        Face fw = map.face_of(dw), fe = map.face_of(map.rev(dw));
        // West face contains b_i, east face contains b_{i+1}.
        if (index_of(map.face_vertices(fw), bi(i)) < 0) std::swap(fw, fe);
        central.push_back(Cell::face(fw));
        central.push_back(Cell::edge(corner_x[i], corner_y[i]));
        central.push_back(Cell::face(fe));
      } else {
        central.push_back(Cell::edge(bi(i), bi(i + 1)));
      }
    }
    // Root placements of the requested dimension.
    std::vector<int> placements;
    for (int idx = 0; idx < static_cast<int>(central.size()); ++idx)
      if (central[idx].dim == p.root_dim) placements.push_back(idx);
    for (int at : placements) {
      std::vector<Cell> rooted(central.begin() + at, central.end());
      rooted.insert(rooted.end(), central.begin(), central.begin() + at);
      Girdle g = finish_girdle(map, rooted);
      std::string key = g.map.canonical_code({g.root()});
      if (seen.insert(key).second) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace trisym
