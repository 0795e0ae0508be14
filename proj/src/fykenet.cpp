#include "trisym/fykenet.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

namespace trisym {

namespace {

Face anchor_face(const PlanarMap& m, const Cell& c) {
  switch (c.dim) {
    case CellDim::Face:
      return c.f;
    case CellDim::Edge:
      return m.face_of(m.dart(c.a, c.b));
    case CellDim::Vertex:
      return m.face_of(m.dart(c.a, m.neighbors(c.a)[0]));
  }
  return -1;
}

std::vector<Dart> cycle_darts(const PlanarMap& m,
                              const std::vector<Vertex>& cyc) {
  std::vector<Dart> out;
  int L = static_cast<int>(cyc.size());
  for (int i = 0; i < L; ++i) out.push_back(m.dart(cyc[i], cyc[(i + 1) % L]));
  return out;
}

// Faces on the traced side of an oriented cycle.
std::vector<char> flood_side(const PlanarMap& m,
                             const std::vector<Dart>& darts) {
  std::set<Cell> cyc_edges;
  for (Dart d : darts) cyc_edges.insert(Cell::edge(m.tail(d), m.head(d)));
  std::vector<char> inside(m.num_faces(), 0);
  std::deque<Face> q;
  for (Dart d : darts)
    if (!inside[m.face_of(d)]) {
      inside[m.face_of(d)] = 1;
      q.push_back(m.face_of(d));
    }
  while (!q.empty()) {
    Face f = q.front();
    q.pop_front();
    for (Dart d : m.face_darts(f)) {
      if (cyc_edges.count(Cell::edge(m.tail(d), m.head(d)))) continue;
      Face g = m.face_of(m.rev(d));
      if (!inside[g]) {
        inside[g] = 1;
        q.push_back(g);
      }
    }
  }
  return inside;
}

// Orient a vertex cycle so the traced side contains `toward`.
std::vector<Dart> orient_cycle_toward(const PlanarMap& m,
                                      std::vector<Vertex> cyc, Face toward) {
  std::vector<Dart> d = cycle_darts(m, cyc);
  if (flood_side(m, d)[toward]) return d;
  std::reverse(cyc.begin(), cyc.end());
  d = cycle_darts(m, cyc);
  if (!flood_side(m, d)[toward])
    fail(ErrorCode::InvariantViolation, "cycle does not separate the anchor");
  return d;
}

// The generator of a cyclic group advancing the cells incident with c0 by
// one orbit step clockwise.
const MapAutomorphism* clockwise_generator(
    const PlanarMap& m, const Cell& c0,
    const std::vector<MapAutomorphism>& H) {
  int order = static_cast<int>(H.size());
  auto cyc = m.incident_cells_cyclic(c0);
  int two_d = static_cast<int>(cyc.size());
  if (order < 2 || two_d % order != 0) return nullptr;
  int step = two_d / order;
  for (const auto& phi : H) {
    if (phi.chirality != Chirality::Preserving || phi.is_identity()) continue;
    if (!phi.fixes(c0)) return nullptr;
    Cell img = phi.cell_image(cyc[0]);
    int at = index_of(cyc, img);
    if (at == step) {
      // Must generate the whole group.
      MapAutomorphism p = phi;
      int k = 1;
      while (!p.is_identity()) {
        p = p.compose(phi);
        ++k;
      }
      if (k == order) return &phi;
    }
  }
  return nullptr;
}

Cell south_pole(const MapAutomorphism& phi, const Cell& c0) {
  auto fc = fixed_cells(phi);
  if (fc.size() != 2)
    fail(ErrorCode::InvariantViolation,
         "rotation fixes " + std::to_string(fc.size()) + " cells");
  return fc[0] == c0 ? fc[1] : fc[0];
}

// Biconnected components (edge partition) of an abstract graph given by
// adjacency over a vertex subset.
std::vector<std::set<Cell>> biconnected_components(
    const std::set<Vertex>& verts, const std::set<Cell>& edges) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Cell& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::map<Vertex, int> num, low;
  std::vector<std::pair<Vertex, Vertex>> stack;
  std::vector<std::set<Cell>> comps;
  int counter = 0;
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    num[v] = low[v] = ++counter;
    for (Vertex w : adj[v]) {
      if (!num.count(w)) {
        stack.push_back({v, w});
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= num[v]) {
          std::set<Cell> comp;
          while (true) {
            auto [x, y] = stack.back();
            stack.pop_back();
            comp.insert(Cell::edge(x, y));
            if (x == v && y == w) break;
          }
          comps.push_back(std::move(comp));
        }
      } else if (w != parent && num[w] < num[v]) {
        stack.push_back({v, w});
        low[v] = std::min(low[v], num[w]);
      }
    }
  };
  for (Vertex v : verts)
    if (!num.count(v) && adj.count(v)) dfs(v, 0);
  return comps;
}

}  // namespace

int PlaneCactus::block_of_edge(const Cell& e) const {
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i)
    if (blocks[i].edges.count(e)) return i;
  return -1;
}

Spindle find_spindle(const Triangulation& T, const Cell& c0,
                     const std::vector<MapAutomorphism>& H,
                     bool prefer_high_ids) {
  const PlanarMap& m = T.map;
  const MapAutomorphism* phi = clockwise_generator(m, c0, H);
  if (!phi) fail(ErrorCode::NoRotation, "no rotation group at " + c0.str());
  Cell c1 = south_pole(*phi, c0);
  int mm = static_cast<int>(H.size());

  auto endpoints = [&](const Cell& c) {
    std::set<Vertex> out;
    if (c.dim == CellDim::Vertex) {
      out.insert(c.a);
    } else if (c.dim == CellDim::Edge) {
      out.insert(c.a);
      out.insert(c.b);
    } else {
      for (Vertex v : m.face_vertices(c.f)) out.insert(v);
    }
    return out;
  };
  std::set<Vertex> src = endpoints(c0), dst = endpoints(c1);
  for (Vertex v : src)
    if (dst.count(v))
      fail(ErrorCode::InvariantViolation, "poles share a boundary vertex");

  // Shortest path with deterministic tie-breaking.
  std::map<Vertex, Vertex> parent;
  std::deque<Vertex> q;
  for (Vertex v : src) {
    parent[v] = v;
    q.push_back(v);
  }
  Vertex hit = 0;
  while (!q.empty() && !hit) {
    Vertex v = q.front();
    q.pop_front();
    std::vector<Vertex> nb = m.neighbors(v);
    std::sort(nb.begin(), nb.end());
    if (prefer_high_ids) std::reverse(nb.begin(), nb.end());
    for (Vertex w : nb) {
      if (parent.count(w)) continue;
      parent[w] = v;
      if (dst.count(w)) {
        hit = w;
        break;
      }
      q.push_back(w);
    }
  }
  if (!hit) fail(ErrorCode::InvariantViolation, "poles not connected");
  std::vector<Vertex> path{hit};
  while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());

  Spindle s;
  s.north = c0;
  s.south = c1;
  MapAutomorphism power = identity_automorphism(m);
  for (int t = 0; t < mm; ++t) {
    std::vector<Vertex> img;
    for (Vertex v : path) img.push_back(power.vertex_image(v));
    s.paths.push_back(img);
    power = power.compose(*phi);
  }
  // Internal disjointness across the orbit.
  std::map<Vertex, int> count;
  for (const auto& p : s.paths)
    for (size_t i = 1; i + 1 < p.size(); ++i) ++count[p[i]];
  for (auto& [v, c] : count)
    if (c > 1)
      fail(ErrorCode::InvariantViolation,
           "spindle paths share internal vertex " + std::to_string(v));

  // Segment fillings: faces of the spindle submap that are not poles.
  std::set<Vertex> verts = src;
  std::set<Cell> edges;
  for (const auto& p : s.paths) {
    for (Vertex v : p) verts.insert(v);
    for (size_t i = 0; i + 1 < p.size(); ++i)
      edges.insert(Cell::edge(p[i], p[i + 1]));
  }
  auto add_boundary = [&](const Cell& c) {
    if (c.dim == CellDim::Edge) {
      edges.insert(c);
    } else if (c.dim == CellDim::Face) {
      for (Dart d : m.face_darts(c.f)) {
        verts.insert(m.tail(d));
        edges.insert(Cell::edge(m.tail(d), m.head(d)));
      }
    }
  };
  add_boundary(c0);
  add_boundary(c1);
  for (Vertex v : dst) verts.insert(v);
  SubMap sub = extract_submap(m, verts, edges);
  std::set<Face> pole_faces;
  for (const Cell& c : {c0, c1})
    if (c.dim == CellDim::Face) {
      Dart d = m.face_darts(c.f)[0];
      pole_faces.insert(
          sub.map.face_of(sub.map.dart(sub.sub(m.tail(d)), sub.sub(m.head(d)))));
    }
  for (Face f = 0; f < sub.map.num_faces(); ++f) {
    if (pole_faces.count(f)) continue;
    // Extract the region of T inside this spindle face.
    std::vector<Dart> host;
    for (Dart d : sub.map.face_darts(f))
      host.push_back(m.dart(sub.to_orig[sub.map.tail(d) - 1],
                            sub.to_orig[sub.map.head(d) - 1]));
    Vertex v0 = m.tail(host[0]);
    NearTriangulation n = induced_near_triangulation(
        m, host, v0, Cell::edge(v0, m.head(host[0])));
    s.segment_codes.push_back(n.map.canonical_code());
  }
  std::sort(s.segment_codes.begin(), s.segment_codes.end());
  if (static_cast<int>(s.segment_codes.size()) != mm)
    fail(ErrorCode::InvariantViolation,
         "spindle has " + std::to_string(s.segment_codes.size()) +
             " segments, expected " + std::to_string(mm));
  return s;
}

std::vector<Dart> first_level(const Triangulation& T, const Cell& c0) {
  const PlanarMap& m = T.map;
  std::vector<Vertex> cyc;
  std::set<Face> north_faces;
  switch (c0.dim) {
    case CellDim::Vertex: {
      cyc = m.neighbors(c0.a);
      for (Vertex w : cyc) north_faces.insert(m.face_of(m.dart(c0.a, w)));
      break;
    }
    case CellDim::Edge: {
      Dart d = m.dart(c0.a, c0.b);
      Face f1 = m.face_of(d), f2 = m.face_of(m.rev(d));
      north_faces = {f1, f2};
      Vertex x = 0, y = 0;
      for (Vertex v : m.face_vertices(f1))
        if (v != c0.a && v != c0.b) x = v;
      for (Vertex v : m.face_vertices(f2))
        if (v != c0.a && v != c0.b) y = v;
      cyc = {c0.a, x, c0.b, y};
      break;
    }
    case CellDim::Face: {
      cyc = m.face_vertices(c0.f);
      north_faces = {c0.f};
      break;
    }
  }
  // Orient away from the north faces.
  std::vector<Dart> d = cycle_darts(m, cyc);
  auto side = flood_side(m, d);
  bool hits_north = false;
  for (Face f : north_faces)
    if (side[f]) hits_north = true;
  if (hits_north) {
    std::reverse(cyc.begin(), cyc.end());
    d = cycle_darts(m, cyc);
  }
  return d;
}

namespace {

// Distances from the centre within a subgraph; used for branch bases and
// leaf anchors.
void compute_branches(const PlanarMap& m, PlaneCactus& pc) {
  std::set<Vertex> centre_set(pc.centre.begin(), pc.centre.end());
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Cell& e : pc.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::map<Vertex, int> dist;
  std::deque<Vertex> q;
  for (Vertex v : pc.centre) {
    dist[v] = 0;
    pc.base_of[v] = v;
    q.push_back(v);
  }
  std::set<Cell> centre_edges;
  int L = static_cast<int>(pc.centre.size());
  if (!pc.centre_darts.empty())
    for (int i = 0; i < L; ++i)
      centre_edges.insert(Cell::edge(pc.centre[i], pc.centre[(i + 1) % L]));
  else if (L == 2)
    centre_edges.insert(Cell::edge(pc.centre[0], pc.centre[1]));
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop_front();
    for (Vertex w : adj[v]) {
      if (centre_set.count(w)) continue;
      if (dist.count(w)) continue;
      dist[w] = dist[v] + 1;
      pc.base_of[w] = pc.base_of[v];
      q.push_back(w);
    }
  }
  for (const auto& [v, b] : pc.base_of) (void)v, (void)b;

  // Blocks of the branches: biconnected components of the level minus the
  // centre edges, grouped per branch.
  std::set<Cell> branch_edges;
  for (const Cell& e : pc.edges)
    if (!centre_edges.count(e)) branch_edges.insert(e);
  for (auto& comp : biconnected_components(pc.vertices, branch_edges)) {
    PlaneCactus::Block blk;
    blk.edges = comp;
    for (const Cell& e : comp) {
      blk.vertices.insert(e.a);
      blk.vertices.insert(e.b);
    }
    blk.is_cycle = comp.size() > 1;
    int best = -1;
    for (Vertex v : blk.vertices)
      if (best < 0 || dist[v] < best) {
        best = dist[v];
        blk.anchor = v;
      } else if (dist[v] == best && v < blk.anchor) {
        blk.anchor = v;
      }
    pc.blocks.push_back(std::move(blk));
  }
  // Parent links by anchor containment.
  for (int i = 0; i < static_cast<int>(pc.blocks.size()); ++i) {
    pc.blocks[i].parent = -1;
    if (centre_set.count(pc.blocks[i].anchor)) continue;
    for (int j = 0; j < static_cast<int>(pc.blocks.size()); ++j)
      if (j != i && pc.blocks[j].vertices.count(pc.blocks[i].anchor) &&
          pc.blocks[j].anchor != pc.blocks[i].anchor)
        pc.blocks[i].parent = j;
  }
  (void)m;
}

}  // namespace

PlaneCactus next_level(const Triangulation& T,
                       const std::vector<MapAutomorphism>& H,
                       const std::vector<Dart>& centre, const Cell& south) {
  const PlanarMap& m = T.map;
  std::set<Vertex> cset;
  for (Dart d : centre) cset.insert(m.tail(d));

  auto side = flood_side(m, centre);
  Face south_f = anchor_face(m, south);
  if (!side[south_f])
    fail(ErrorCode::InvariantViolation, "centre not oriented toward south");

  // Faces in the south side touching the centre cycle.
  std::set<Face> touching;
  for (Face f = 0; f < m.num_faces(); ++f) {
    if (!side[f]) continue;
    for (Vertex v : m.face_vertices(f))
      if (cset.count(v)) touching.insert(f);
  }
  std::set<Vertex> fverts;
  std::set<Cell> fedges;
  for (Face f : touching)
    for (Dart d : m.face_darts(f)) {
      Vertex x = m.tail(d), y = m.head(d);
      if (!cset.count(x)) fverts.insert(x);
      if (!cset.count(x) && !cset.count(y))
        fedges.insert(Cell::edge(x, y));
    }
  if (fverts.empty())
    fail(ErrorCode::AlreadyTerminal, "no frontier below the centre");

  // Components of the frontier.
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Cell& e : fedges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::map<Vertex, int> comp;
  int ncomp = 0;
  for (Vertex v : fverts)
    if (!comp.count(v)) {
      ++ncomp;
      std::deque<Vertex> q{v};
      comp[v] = ncomp;
      while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (Vertex y : adj[x])
          if (!comp.count(y)) {
            comp[y] = ncomp;
            q.push_back(y);
          }
      }
    }

  // Select the component containing or surrounding the south pole.
  int chosen = -1;
  if (south.dim == CellDim::Vertex && comp.count(south.a)) {
    chosen = comp[south.a];
  } else if (south.dim == CellDim::Edge && comp.count(south.a) &&
             fedges.count(south)) {
    chosen = comp[south.a];
  } else {
    for (int c = 1; c <= ncomp && chosen < 0; ++c) {
      std::set<Cell> comp_edges;
      for (const Cell& e : fedges)
        if (comp[e.a] == c) comp_edges.insert(e);
      if (comp_edges.empty()) continue;
      // Flood the south anchor without crossing this component; if the
      // region misses the centre, the component surrounds the pole.
      std::vector<char> reach(m.num_faces(), 0);
      std::deque<Face> q{south_f};
      reach[south_f] = 1;
      bool sees_centre = false;
      while (!q.empty()) {
        Face f = q.front();
        q.pop_front();
        for (Vertex v : m.face_vertices(f))
          if (cset.count(v)) sees_centre = true;
        for (Dart d : m.face_darts(f)) {
          if (comp_edges.count(Cell::edge(m.tail(d), m.head(d)))) continue;
          Face g = m.face_of(m.rev(d));
          if (!reach[g]) {
            reach[g] = 1;
            q.push_back(g);
          }
        }
      }
      if (!sees_centre) chosen = c;
    }
  }
  if (chosen < 0)
    fail(ErrorCode::InvariantViolation, "no frontier component holds the pole");

  PlaneCactus pc;
  for (Vertex v : fverts)
    if (comp[v] == chosen) pc.vertices.insert(v);
  for (const Cell& e : fedges)
    if (comp[e.a] == chosen) pc.edges.insert(e);

  // Invariance under the group.
  for (const auto& phi : H)
    for (Vertex v : pc.vertices)
      if (!pc.vertices.count(phi.vertex_image(v)))
        fail(ErrorCode::InvariantViolation, "frontier cactus not invariant");

  // Classify and find the centre of the next level.
  if (south.dim == CellDim::Vertex && pc.vertices.count(south.a)) {
    pc.kind = PlaneCactus::Kind::Antarctic;
    pc.centre = {south.a};
  } else if (south.dim == CellDim::Edge && pc.edges.count(south)) {
    pc.kind = PlaneCactus::Kind::Antarctic;
    pc.centre = {south.a, south.b};
  } else if (south.dim == CellDim::Face && [&] {
               for (Dart d : m.face_darts(south.f))
                 if (!pc.edges.count(Cell::edge(m.tail(d), m.head(d))))
                   return false;
               return true;
             }()) {
    pc.kind = PlaneCactus::Kind::Antarctic;
    pc.centre = m.face_vertices(south.f);
    pc.centre_darts = orient_cycle_toward(m, pc.centre, south.f);
  } else {
    // The unique invariant non-outer face of the cactus: flood the south
    // anchor across edges not in the cactus; its boundary cycle within
    // the cactus is the centre.
    std::vector<char> region(m.num_faces(), 0);
    std::deque<Face> q{south_f};
    region[south_f] = 1;
    while (!q.empty()) {
      Face f = q.front();
      q.pop_front();
      for (Dart d : m.face_darts(f)) {
        if (pc.edges.count(Cell::edge(m.tail(d), m.head(d)))) continue;
        Face g = m.face_of(m.rev(d));
        if (!region[g]) {
          region[g] = 1;
          q.push_back(g);
        }
      }
    }
    // Boundary darts of the region lying in the cactus.
    std::set<Dart> bdarts;
    for (Face f = 0; f < m.num_faces(); ++f) {
      if (!region[f]) continue;
      for (Dart d : m.face_darts(f))
        if (pc.edges.count(Cell::edge(m.tail(d), m.head(d))) &&
            !region[m.face_of(m.rev(d))])
          bdarts.insert(m.rev(d));
    }
    if (bdarts.empty())
      fail(ErrorCode::InvariantViolation, "cactus has no centre cycle");
    // Chain the boundary into a cycle (it bounds a disc).
    std::map<Vertex, Dart> by_tail;
    for (Dart d : bdarts) by_tail[m.tail(d)] = d;
    Dart d0 = *bdarts.begin();
    std::vector<Vertex> cyc;
    Dart d = d0;
    do {
      cyc.push_back(m.tail(d));
      auto it = by_tail.find(m.head(d));
      if (it == by_tail.end())
        fail(ErrorCode::InvariantViolation, "centre boundary not a cycle");
      d = it->second;
    } while (d != d0);
    if (cyc.size() != bdarts.size())
      fail(ErrorCode::InvariantViolation, "centre boundary disconnected");
    pc.centre = cyc;
    pc.centre_darts = orient_cycle_toward(m, pc.centre, south_f);
    // Pseudo-antarctic when the pole boundary sits on the centre.
    std::set<Vertex> centre_set(pc.centre.begin(), pc.centre.end());
    bool pseudo = false;
    if (south.dim == CellDim::Edge)
      pseudo = centre_set.count(south.a) && centre_set.count(south.b);
    if (south.dim == CellDim::Face) {
      pseudo = true;
      for (Vertex v : m.face_vertices(south.f))
        if (!centre_set.count(v)) pseudo = false;
    }
    pc.kind = pseudo ? PlaneCactus::Kind::PseudoAntarctic
                     : PlaneCactus::Kind::Ordinary;
  }
  compute_branches(m, pc);
  return pc;
}

Levels compute_levels(const Triangulation& T, const Cell& c0,
                      const std::vector<MapAutomorphism>& H) {
  const PlanarMap& m = T.map;
  const MapAutomorphism* phi = clockwise_generator(m, c0, H);
  if (!phi) fail(ErrorCode::NoRotation, "no rotation group at " + c0.str());
  Cell c1 = south_pole(*phi, c0);

  Levels L;
  L.north = c0;
  L.south = c1;

  std::vector<Dart> f0 = first_level(T, c0);
  PlaneCactus lvl0;
  lvl0.centre_darts = f0;
  for (Dart d : f0) lvl0.centre.push_back(m.tail(d));
  for (Dart d : f0) {
    lvl0.vertices.insert(m.tail(d));
    lvl0.edges.insert(Cell::edge(m.tail(d), m.head(d)));
  }
  // F_0 terminal cases: the pole bounded by the first cycle.
  std::set<Vertex> c0set(lvl0.centre.begin(), lvl0.centre.end());
  if (c1.dim == CellDim::Edge && c0set.count(c1.a) && c0set.count(c1.b)) {
    lvl0.kind = PlaneCactus::Kind::PseudoAntarctic;
  } else if (c1.dim == CellDim::Face && [&] {
               for (Vertex v : m.face_vertices(c1.f))
                 if (!c0set.count(v)) return false;
               return true;
             }()) {
    bool all_edges = true;
    for (Dart d : m.face_darts(c1.f))
      if (!lvl0.edges.count(Cell::edge(m.tail(d), m.head(d))))
        all_edges = false;
    lvl0.kind = all_edges ? PlaneCactus::Kind::Antarctic
                          : PlaneCactus::Kind::PseudoAntarctic;
  }
  compute_branches(m, lvl0);
  L.levels.push_back(std::move(lvl0));

  while (L.levels.back().kind == PlaneCactus::Kind::Ordinary) {
    const PlaneCactus& prev = L.levels.back();
    if (prev.centre_darts.empty())
      fail(ErrorCode::InvariantViolation, "ordinary level without a cycle");
    L.levels.push_back(next_level(T, H, prev.centre_darts, c1));
    if (L.levels.size() > static_cast<size_t>(m.num_vertices()) + 2)
      fail(ErrorCode::InvariantViolation, "level iteration does not stop");
  }
  return L;
}

LiaisonTable compute_liaisons(const Triangulation& T, const Cell& c0,
                              const std::vector<MapAutomorphism>& H,
                              const Levels& L) {
  const PlanarMap& m = T.map;
  const MapAutomorphism* phi = clockwise_generator(m, c0, H);
  if (!phi) fail(ErrorCode::NoRotation, "no rotation group");
  int mm = static_cast<int>(H.size());
  int k = L.k();

  LiaisonTable table;
  table.m = mm;

  // u_j^0 along the oriented first cycle.
  const PlaneCactus& lvl0 = L.levels[0];
  std::vector<Vertex> u0;
  if (c0.dim == CellDim::Vertex) {
    table.a = static_cast<int>(lvl0.centre.size()) / mm;
    u0 = lvl0.centre;
  } else if (c0.dim == CellDim::Edge) {
    table.a = 1;
    for (Vertex v : lvl0.centre)
      if (v != c0.a && v != c0.b) u0.push_back(v);
  } else {
    table.a = 1;
    u0 = lvl0.centre;
  }
  // Anchor at the smallest id, keeping the cyclic (clockwise) order.
  {
    int at = 0;
    for (int i = 1; i < static_cast<int>(u0.size()); ++i)
      if (u0[i] < u0[at]) at = i;
    std::rotate(u0.begin(), u0.begin() + at, u0.end());
  }
  int am = table.a * mm;
  if (static_cast<int>(u0.size()) != am)
    fail(ErrorCode::InvariantViolation, "base count mismatch");
  for (int j = 0; j < am; ++j) {
    Vertex img = phi->vertex_image(u0[j]);
    if (img != u0[(j + table.a) % am])
      fail(ErrorCode::InvariantViolation,
           "generator does not advance bases clockwise");
  }

  std::vector<Vertex> bases = u0;
  for (int i = 0; i < k; ++i) {
    const PlaneCactus& cur = L.levels[i];
    const PlaneCactus& nxt = L.levels[i + 1];
    std::vector<Liaison> row(am);
    for (int j = 0; j < am; ++j) {
      row[j].base = bases[j];
      // Source: walk the oriented centre clockwise from the base.
      int pos = index_of(cur.centre, bases[j]);
      if (pos < 0)
        fail(ErrorCode::InvariantViolation, "base not on the centre");
      int Lc = static_cast<int>(cur.centre.size());
      int steps = 0;
      Vertex v = 0;
      for (; steps <= Lc; ++steps) {
        Vertex cand = cur.centre[(pos + steps) % Lc];
        bool has = false;
        for (Vertex w : m.neighbors(cand))
          if (nxt.vertices.count(w)) has = true;
        if (has) {
          v = cand;
          break;
        }
      }
      if (!v)
        fail(ErrorCode::InvariantViolation, "no source on the centre");
      row[j].source = v;
      // Leftmost neighbour: scan clockwise after the centre predecessor.
      int vpos = index_of(cur.centre, v);
      Vertex pred = cur.centre[(vpos + Lc - 1) % Lc];
      const auto& rot = m.neighbors(v);
      int start = index_of(rot, pred);
      Vertex w = 0;
      for (int t = 1; t <= static_cast<int>(rot.size()) && !w; ++t) {
        Vertex cand = rot[(start + t) % rot.size()];
        if (nxt.vertices.count(cand)) w = cand;
      }
      if (!w) fail(ErrorCode::InvariantViolation, "no leftmost neighbour");
      row[j].target = w;
    }
    // Next bases: branch bases of the targets.
    for (int j = 0; j < am; ++j) bases[j] = nxt.base_of.at(row[j].target);
    // Equivariance.
    for (int j = 0; j < am; ++j) {
      if (phi->vertex_image(row[j].source) != row[(j + table.a) % am].source ||
          phi->vertex_image(row[j].target) != row[(j + table.a) % am].target)
        fail(ErrorCode::InvariantViolation, "liaisons not equivariant");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

struct NetSpaces {
  std::set<Vertex> verts;
  std::set<Cell> edges;
};

NetSpaces fyke_net_support(const PlanarMap& m, const Cell& c0,
                           const Levels& L, const LiaisonTable& table) {
  NetSpaces ns;
  for (const auto& lvl : L.levels) {
    ns.verts.insert(lvl.vertices.begin(), lvl.vertices.end());
    ns.edges.insert(lvl.edges.begin(), lvl.edges.end());
  }
  for (const auto& row : table.rows)
    for (const auto& li : row)
      ns.edges.insert(Cell::edge(li.source, li.target));
  if (c0.dim == CellDim::Vertex) {
    ns.verts.insert(c0.a);
    for (Vertex w : m.neighbors(c0.a)) ns.edges.insert(Cell::edge(c0.a, w));
  } else if (c0.dim == CellDim::Edge) {
    ns.edges.insert(c0);
  }
  const PlaneCactus& last = L.levels.back();
  if (last.kind == PlaneCactus::Kind::PseudoAntarctic) {
    if (L.south.dim == CellDim::Edge) {
      ns.edges.insert(L.south);
    } else {
      for (Dart d : m.face_darts(L.south.f))
        ns.edges.insert(Cell::edge(m.tail(d), m.head(d)));
    }
  }
  for (const Cell& e : ns.edges) {
    ns.verts.insert(e.a);
    ns.verts.insert(e.b);
  }
  return ns;
}

}  // namespace

FykeNet build_fyke_net(const Triangulation& T, const Cell& c0,
                       const std::vector<MapAutomorphism>& H) {
  const PlanarMap& m = T.map;
  const MapAutomorphism* phi = clockwise_generator(m, c0, H);
  if (!phi) fail(ErrorCode::NoRotation, "no rotation group at " + c0.str());
  Levels L = compute_levels(T, c0, H);
  LiaisonTable table = compute_liaisons(T, c0, H, L);
  int mm = static_cast<int>(H.size());
  int k = L.k();

  NetSpaces ns = fyke_net_support(m, c0, L, table);

  // Maximal 2-connected subgraph containing both poles.
  auto comps = biconnected_components(ns.verts, ns.edges);
  Cell north_anchor_edge =
      c0.dim == CellDim::Vertex
          ? Cell::edge(c0.a, L.levels[0].centre[0])
          : (c0.dim == CellDim::Edge
                 ? c0
                 : Cell::edge(L.levels[0].centre[0], L.levels[0].centre[1]));
  Vertex south_anchor = L.south.dim == CellDim::Face
                            ? m.face_vertices(L.south.f)[0]
                            : L.south.a;
  const std::set<Cell>* net_edges = nullptr;
  for (const auto& comp : comps)
    if (comp.count(north_anchor_edge)) net_edges = &comp;
  if (!net_edges)
    fail(ErrorCode::InvariantViolation, "no block at the north pole");
  std::set<Vertex> net_verts;
  for (const Cell& e : *net_edges) {
    net_verts.insert(e.a);
    net_verts.insert(e.b);
  }
  if (!net_verts.count(south_anchor))
    fail(ErrorCode::InvariantViolation, "net block misses the south pole");

  SubMap sub = extract_submap(m, net_verts, *net_edges);

  FykeNet net;
  net.map = sub.map;
  net.m = mm;
  net.a = table.a;
  net.k = k;
  net.to_host = sub.to_orig;
  net.liaisons = table;

  auto to_net_cell = [&](const Cell& c) -> Cell {
    switch (c.dim) {
      case CellDim::Vertex:
        return Cell::vertex(sub.sub(c.a));
      case CellDim::Edge:
        return sub.sub_edge(c);
      case CellDim::Face: {
        Dart d = m.face_darts(c.f)[0];
        return Cell::face(
            net.map.face_of(net.map.dart(sub.sub(m.tail(d)), sub.sub(m.head(d)))));
      }
    }
    return c;
  };
  net.north = to_net_cell(c0);
  net.south = to_net_cell(L.south);

  for (const auto& lvl : L.levels) {
    std::set<Vertex> layer;
    for (Vertex v : lvl.vertices)
      if (net_verts.count(v)) layer.insert(sub.sub(v));
    net.layers.push_back(std::move(layer));
  }

  // ---- face classification ----
  std::map<Cell, std::pair<int, int>> liaison_index;  // net edge -> (i, j)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < table.a * mm; ++j) {
      const Liaison& li = table.rows[i][j];
      Cell e = sub.sub_edge(Cell::edge(li.source, li.target));
      if (!liaison_index.count(e)) liaison_index[e] = {i, j};
    }

  std::set<Face> north_faces;
  if (c0.dim == CellDim::Vertex) {
    Vertex nv = sub.sub(c0.a);
    for (Vertex w : net.map.neighbors(nv)) {
      north_faces.insert(net.map.face_of(net.map.dart(nv, w)));
      north_faces.insert(net.map.face_of(net.map.dart(w, nv)));
    }
  } else if (c0.dim == CellDim::Edge) {
    Cell ne = sub.sub_edge(c0);
    Dart d = net.map.dart(ne.a, ne.b);
    north_faces.insert(net.map.face_of(d));
    north_faces.insert(net.map.face_of(net.map.rev(d)));
  } else {
    north_faces.insert(net.north.f);
  }
  std::set<Face> south_faces;
  if (L.south.dim == CellDim::Face) south_faces.insert(net.south.f);
  std::set<Face> pseudo_faces;
  if (L.levels.back().kind == PlaneCactus::Kind::PseudoAntarctic) {
    if (L.south.dim == CellDim::Edge) {
      Cell se = sub.sub_edge(L.south);
      Dart d = net.map.dart(se.a, se.b);
      pseudo_faces.insert(net.map.face_of(d));
      pseudo_faces.insert(net.map.face_of(net.map.rev(d)));
    } else {
      for (Dart d : m.face_darts(L.south.f)) {
        Dart nd = net.map.dart(sub.sub(m.tail(d)), sub.sub(m.head(d)));
        Face f1 = net.map.face_of(nd), f2 = net.map.face_of(net.map.rev(nd));
        pseudo_faces.insert(f1 == net.south.f ? f2 : f1);
      }
    }
  }

  // Distances to branch bases per level for leaf anchors.
  std::vector<std::map<Vertex, int>> lvl_dist(L.levels.size());
  for (size_t i = 0; i < L.levels.size(); ++i) {
    const PlaneCactus& lvl = L.levels[i];
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const Cell& e : lvl.edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    std::deque<Vertex> q;
    for (Vertex v : lvl.centre) {
      lvl_dist[i][v] = 0;
      q.push_back(v);
    }
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex w : adj[v])
        if (!lvl_dist[i].count(w)) {
          lvl_dist[i][w] = lvl_dist[i][v] + 1;
          q.push_back(w);
        }
    }
  }

  for (Face f = 0; f < net.map.num_faces(); ++f) {
    FykeFace info;
    info.face = f;
    std::vector<std::pair<int, int>> lias;
    for (Dart d : net.map.face_darts(f)) {
      Cell e = Cell::edge(net.map.tail(d), net.map.head(d));
      auto it = liaison_index.find(e);
      if (it != liaison_index.end()) lias.push_back(it->second);
    }
    if (north_faces.count(f)) {
      info.cls = FykeFaceClass::North;
    } else if (south_faces.count(f)) {
      info.cls = FykeFaceClass::South;
    } else if (pseudo_faces.count(f)) {
      info.cls = FykeFaceClass::PseudoAntarctic;
      // Root edge: the south pole (edge) or the unique boundary edge of
      // the pole face; root vertex: head of that edge on this face.
      Cell re = L.south.dim == CellDim::Edge
                    ? sub.sub_edge(L.south)
                    : [&] {
                        for (Dart d : m.face_darts(L.south.f)) {
                          Cell cand = sub.sub_edge(
                              Cell::edge(m.tail(d), m.head(d)));
                          Dart nd = net.map.dart(cand.a, cand.b);
                          if (net.map.face_of(nd) == f ||
                              net.map.face_of(net.map.rev(nd)) == f)
                            return cand;
                        }
                        fail(ErrorCode::InvariantViolation,
                             "pseudo face misses the pole");
                      }();
      info.root_e = re;
      for (Dart d : net.map.face_darts(f))
        if (Cell::edge(net.map.tail(d), net.map.head(d)) == re)
          info.root_v = net.map.head(d);
    } else if (lias.size() == 2) {
      info.cls = FykeFaceClass::Segment;
      // The left liaison appears on the face as the downward dart
      // (target -> source); the right one as the upward dart. The
      // segment's index pair is (end of the left run, start of the right
      // run), which must be consecutive.
      int i1 = lias[0].first;
      if (lias[1].first != i1)
        fail(ErrorCode::InvariantViolation, "segment spans two levels");
      info.level = i1;
      int am = table.a * mm;
      auto same = [&](int x, int y) {
        return table.rows[i1][x].source == table.rows[i1][y].source &&
               table.rows[i1][x].target == table.rows[i1][y].target;
      };
      int jleft = -1, jright = -1;
      for (Dart d : net.map.face_darts(f)) {
        Cell e = Cell::edge(net.map.tail(d), net.map.head(d));
        auto it = liaison_index.find(e);
        if (it == liaison_index.end()) continue;
        int j0 = it->second.second;
        Vertex host_tail = sub.to_orig[net.map.tail(d) - 1];
        bool upward = (host_tail == table.rows[i1][j0].source);
        if (upward) {
          // run start
          int j = j0;
          while (same(j, (j + am - 1) % am)) j = (j + am - 1) % am;
          jright = j;
        } else {
          // run end
          int j = j0;
          while (same(j, (j + 1) % am)) j = (j + 1) % am;
          jleft = j;
        }
      }
      if (jleft < 0 || jright < 0 || (jleft + 1) % am != jright)
        fail(ErrorCode::InvariantViolation,
             "segment liaisons are not consecutive");
      const Liaison& l1 = table.rows[i1][jleft];
      const Liaison& l2 = table.rows[i1][jright];
      info.sv1 = sub.sub(l1.source);
      info.sw1 = sub.sub(l1.target);
      info.sv2 = sub.sub(l2.source);
      info.sw2 = sub.sub(l2.target);
      info.su = sub.sub(l2.base);
      info.order2 = (mm == 2 && phi->vertex_image(l1.source) == l2.source);
      info.root_v = info.sv1;
      info.root_e = Cell::edge(info.sv1, info.sw1);
    } else if (lias.size() != 0) {
      fail(ErrorCode::InvariantViolation,
           "face with " + std::to_string(lias.size()) + " liaisons");
    } else {
      info.cls = FykeFaceClass::Leaf;
      // Anchor: boundary vertex closest to the centre of its level.
      int level = -1;
      {
        Vertex hv = sub.to_orig[net.map.face_vertices(f)[0] - 1];
        for (size_t i = 0; i < L.levels.size(); ++i)
          if (L.levels[i].vertices.count(hv)) level = static_cast<int>(i);
      }
      if (level < 0)
        fail(ErrorCode::InvariantViolation, "leaf outside all levels");
      info.level = level;
      Vertex anchor = 0;
      int best = -1;
      for (Vertex v : net.map.face_vertices(f)) {
        Vertex hv = sub.to_orig[v - 1];
        int dist = lvl_dist[level].at(hv);
        if (best < 0 || dist < best) {
          best = dist;
          anchor = v;
        }
      }
      info.root_v = anchor;
      for (Dart d : net.map.face_darts(f))
        if (net.map.tail(d) == anchor)
          info.root_e = Cell::edge(anchor, net.map.head(d));
    }
    net.faces.push_back(info);
  }

  // ---- orbits ----
  // phi acts on net faces; propagate orbit ids.
  std::map<std::string, Face> by_key;
  for (Face f = 0; f < net.map.num_faces(); ++f)
    by_key[net.map.face_code(f)] = f;
  auto face_image = [&](Face f) {
    // Map the boundary through phi in host space.
    std::vector<Dart> darts = net.map.face_darts(f);
    Dart d0 = darts[0];
    Vertex ht = phi->vertex_image(sub.to_orig[net.map.tail(d0) - 1]);
    Vertex hh = phi->vertex_image(sub.to_orig[net.map.head(d0) - 1]);
    Dart nd = net.map.dart(sub.sub(ht), sub.sub(hh));
    return net.map.face_of(nd);
  };
  int next_orbit = 0;
  std::vector<int> orbit(net.map.num_faces(), -1);
  for (Face f = 0; f < net.map.num_faces(); ++f) {
    if (orbit[f] >= 0) continue;
    int id = next_orbit++;
    Face cur = f;
    int size = 0;
    while (orbit[cur] < 0) {
      orbit[cur] = id;
      cur = face_image(cur);
      ++size;
    }
    if (cur != f)
      fail(ErrorCode::InvariantViolation, "face orbit is not a cycle");
    bool fillable = net.faces[f].cls == FykeFaceClass::Leaf ||
                    net.faces[f].cls == FykeFaceClass::Segment ||
                    net.faces[f].cls == FykeFaceClass::PseudoAntarctic;
    if (fillable && size != mm)
      fail(ErrorCode::InvariantViolation,
           "orbit of size " + std::to_string(size));
    net.faces[f].orbit_rep = true;
  }
  for (Face f = 0; f < net.map.num_faces(); ++f) net.faces[f].orbit = orbit[f];
  return net;
}

const FykeFace* FykeNet::face_info(Face f) const {
  for (const auto& info : faces)
    if (info.face == f) return &info;
  return nullptr;
}

bool is_two_layered(const NearTriangulation& N, Vertex v2, Vertex w1,
                    Vertex w2, Vertex u, bool order2) {
  const std::vector<Vertex>& outer = N.outer;
  int L = static_cast<int>(outer.size());
  Vertex v1 = N.root_vertex;
  int iw1 = index_of(outer, w1);
  int iw2 = index_of(outer, w2);
  int iv2 = index_of(outer, v2);
  int iu = index_of(outer, u);
  if (iw1 < 0 || iw2 < 0 || iv2 < 0 || iu < 0) return false;
  int s = (iw1 == 1) ? 1 : (iw1 == L - 1 ? -1 : 0);
  if (s == 0) return false;
  auto step = [&](int i) { return ((i + s) % L + L) % L; };
  // Layout: v1, w1, ..., w2, v2, ..., back to v1.
  std::vector<Vertex> Pw, Pv;
  {
    int i = iw1;
    Pw.push_back(outer[i]);
    while (i != iw2) {
      i = step(i);
      Pw.push_back(outer[i]);
      if (static_cast<int>(Pw.size()) > L) return false;
    }
    if (step(i) != iv2) return false;
    i = iv2;
    Pv.push_back(outer[i]);
    while (i != 0) {
      i = step(i);
      Pv.push_back(outer[i]);
      if (static_cast<int>(Pv.size()) > L) return false;
    }
  }
  // Pv runs from v2 back to v1; the paper's P_i runs v1 -> v2.
  std::vector<Vertex> Pi(Pv.rbegin(), Pv.rend());
  if (Pi.size() < 2) return false;
  int upos = index_of(Pi, u);
  if (upos <= 0) return false;  // u must lie on P_i away from v1

  std::set<Vertex> pv_set(Pv.begin(), Pv.end());
  std::set<Vertex> pw_set(Pw.begin(), Pw.end());

  auto inner_face_third = [&](Vertex x, Vertex y) -> Vertex {
    Dart d = N.map.dart(x, y);
    Face f = N.map.face_of(d);
    if (f == N.root_face) f = N.map.face_of(N.map.rev(d));
    if (f == N.root_face) return 0;
    for (Vertex v : N.map.face_vertices(f))
      if (v != x && v != y) return v;
    return 0;
  };

  // Rightmost face: the face at the edge v2-w2 has its third vertex in
  // the prefix of P_i before u.
  {
    Vertex x = inner_face_third(v2, w2);
    if (!x) return false;
    bool ok = false;
    for (int t = 0; t < upos; ++t)
      if (Pi[t] == x) ok = true;
    if (!ok) return false;
  }
  // Every top-path edge bounds a face whose third vertex is on P_i.
  for (size_t t = 0; t + 1 < Pw.size(); ++t) {
    Vertex x = inner_face_third(Pw[t], Pw[t + 1]);
    if (!x || !pv_set.count(x)) return false;
  }
  // No chords between top-path vertices.
  for (const Cell& ch : chords(N))
    if (pw_set.count(ch.a) && pw_set.count(ch.b)) return false;
  // Order-2 clause.
  if (order2 && N.map.has_edge(v1, v2)) return false;
  return true;
}

RotativeDecomposition decompose_rotative(
    const Triangulation& T, const Cell& c0,
    const std::vector<MapAutomorphism>& H) {
  const PlanarMap& m = T.map;
  RotativeDecomposition out;
  out.net = build_fyke_net(T, c0, H);
  const FykeNet& net = out.net;

  for (const FykeFace& info : net.faces) {
    if (!info.orbit_rep) continue;
    if (info.cls != FykeFaceClass::Leaf &&
        info.cls != FykeFaceClass::Segment &&
        info.cls != FykeFaceClass::PseudoAntarctic)
      continue;
    std::vector<Dart> host;
    for (Dart d : net.map.face_darts(info.face))
      host.push_back(m.dart(net.to_host[net.map.tail(d) - 1],
                            net.to_host[net.map.head(d) - 1]));
    Vertex rv = net.to_host[info.root_v - 1];
    Cell re = Cell::edge(net.to_host[info.root_e.a - 1],
                         net.to_host[info.root_e.b - 1]);
    NearTriangulation n = induced_near_triangulation(m, host, rv, re);
    if (info.cls == FykeFaceClass::Segment) {
      // Marker images inside the extraction: the outer cycle runs along
      // the reversed host boundary anchored at the root.
      std::vector<Vertex> host_cycle;
      for (Dart d : host) host_cycle.push_back(m.tail(d));
      int L = static_cast<int>(host_cycle.size());
      int at = index_of(host_cycle, rv);
      std::map<Vertex, Vertex> to_n;
      for (int t = 0; t < L; ++t)
        to_n[host_cycle[((at - t) % L + L) % L]] = n.outer[t];
      if (!is_two_layered(n, to_n.at(net.to_host[info.sv2 - 1]),
                          to_n.at(net.to_host[info.sw1 - 1]),
                          to_n.at(net.to_host[info.sw2 - 1]),
                          to_n.at(net.to_host[info.su - 1]), info.order2))
        fail(ErrorCode::InvariantViolation,
             "extracted segment filling is not 2-layered");
    }
    out.fillings.emplace(info.orbit, std::move(n));
  }
  return out;
}

RootedTriangulation compose_rotative(
    const FykeNet& net, const std::map<int, NearTriangulation>& fillings) {
  struct Job {
    std::string key;
    Vertex root_v;
    Cell root_e;
    int orbit;
    const FykeFace* info;
  };
  std::vector<Job> jobs;
  for (const FykeFace& info : net.faces) {
    if (info.cls != FykeFaceClass::Leaf &&
        info.cls != FykeFaceClass::Segment &&
        info.cls != FykeFaceClass::PseudoAntarctic)
      continue;
    auto it = fillings.find(info.orbit);
    if (it == fillings.end())
      fail(ErrorCode::LengthMismatch,
           "missing filling for orbit " + std::to_string(info.orbit));
    if (static_cast<int>(it->second.outer.size()) !=
        net.map.face_degree(info.face))
      fail(ErrorCode::LengthMismatch,
           "filling does not fit face " + net.map.face_code(info.face));
    if (info.cls == FykeFaceClass::Segment) {
      BoundaryAlignment al = align_boundary(it->second, net.map, info.face,
                                            info.root_v, info.root_e);
      std::map<Vertex, Vertex> to_n;
      for (size_t t = 0; t < al.image.size(); ++t)
        to_n[al.image[t]] = al.near.outer[t];
      if (!is_two_layered(al.near, to_n.at(info.sv2), to_n.at(info.sw1),
                          to_n.at(info.sw2), to_n.at(info.su), info.order2))
        fail(ErrorCode::TwoLayeredViolation,
             "filling for face " + net.map.face_code(info.face) +
                 " is not 2-layered");
    }
    jobs.push_back(
        {net.map.face_code(info.face), info.root_v, info.root_e, info.orbit,
         &info});
  }
  PlanarMap H = net.map;
  for (const Job& job : jobs) {
    Face f = H.face_by_code(job.key);
    H = insert(fillings.at(job.orbit), H, f, job.root_v, job.root_e);
  }
  Triangulation T = validate_triangulation(H);
  Cell root = net.north;
  if (root.dim == CellDim::Face)
    root = Cell::face(H.face_by_code(net.map.face_code(root.f)));
  return RootedTriangulation{std::move(T), root};
}

std::set<Cell> proposition_edge_set(const Triangulation& T, const Cell& c0,
                                    const std::vector<MapAutomorphism>& H) {
  Levels L = compute_levels(T, c0, H);
  LiaisonTable table = compute_liaisons(T, c0, H, L);
  std::set<Cell> out;
  // Clause 1: liaisons.
  for (const auto& row : table.rows)
    for (const auto& li : row)
      out.insert(Cell::edge(li.source, li.target));
  // Clause 2: centre edges of every level.
  for (const auto& lvl : L.levels) {
    int n = static_cast<int>(lvl.centre.size());
    if (!lvl.centre_darts.empty())
      for (int i = 0; i < n; ++i)
        out.insert(Cell::edge(lvl.centre[i], lvl.centre[(i + 1) % n]));
    else if (n == 2)
      out.insert(Cell::edge(lvl.centre[0], lvl.centre[1]));
  }
  // Clause 3: branch blocks weakly below a target in the block order.
  for (int i = 1; i <= L.k(); ++i) {
    const PlaneCactus& lvl = L.levels[i];
    std::set<Vertex> targets;
    for (const auto& li : table.rows[i - 1]) targets.insert(li.target);
    for (Vertex w : targets) {
      if (lvl.base_of.at(w) == w) continue;  // target on the centre
      // B(w): the unique block containing w as a non-anchor; keep it and
      // all blocks below it toward the base.
      int b = -1;
      for (int bi = 0; bi < static_cast<int>(lvl.blocks.size()); ++bi)
        if (lvl.blocks[bi].vertices.count(w) && lvl.blocks[bi].anchor != w)
          b = bi;
      if (b < 0)
        fail(ErrorCode::InvariantViolation, "target without a parent block");
      while (b >= 0) {
        out.insert(lvl.blocks[b].edges.begin(), lvl.blocks[b].edges.end());
        b = lvl.blocks[b].parent;
      }
    }
  }
  return out;
}

}  // namespace trisym
