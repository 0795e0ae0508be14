#include "trisym/core_map.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace trisym {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::ParallelEdge: return "ParallelEdge";
    case ErrorCode::InconsistentRotation: return "InconsistentRotation";
    case ErrorCode::EulerViolation: return "EulerViolation";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::NotIncident: return "NotIncident";
    case ErrorCode::DualNotSimple: return "DualNotSimple";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonTriangularFace: return "NonTriangularFace";
    case ErrorCode::Trivial: return "Trivial";
    case ErrorCode::OuterNotCycle: return "OuterNotCycle";
    case ErrorCode::InnerFaceNotTriangle: return "InnerFaceNotTriangle";
    case ErrorCode::RootNotIncident: return "RootNotIncident";
    case ErrorCode::BoundaryLengthMismatch: return "BoundaryLengthMismatch";
    case ErrorCode::DoubleEdgeCreated: return "DoubleEdgeCreated";
    case ErrorCode::NotADiscBoundary: return "NotADiscBoundary";
    case ErrorCode::NotReflective: return "NotReflective";
    case ErrorCode::NoRotation: return "NoRotation";
    case ErrorCode::NotDihedral: return "NotDihedral";
    case ErrorCode::AlreadyTerminal: return "AlreadyTerminal";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ChordViolation: return "ChordViolation";
    case ErrorCode::TwoLayeredViolation: return "TwoLayeredViolation";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

std::string Cell::str() const {
  std::ostringstream os;
  switch (dim) {
    case CellDim::Vertex: os << "v:" << a; break;
    case CellDim::Edge: os << "e:" << a << "-" << b; break;
    case CellDim::Face: os << "f#" << f; break;
  }
  return os.str();
}

PlanarMap PlanarMap::build(const std::vector<std::vector<Vertex>>& rotation) {
  PlanarMap m;
  m.n_ = static_cast<int>(rotation.size());
  if (m.n_ < 1) fail(ErrorCode::EulerViolation, "empty map");
  m.rot_ = rotation;

  std::set<std::pair<Vertex, Vertex>> seen;
  for (Vertex v = 1; v <= m.n_; ++v) {
    for (Vertex w : m.rot_[v - 1]) {
      if (w < 1 || w > m.n_)
        fail(ErrorCode::InconsistentRotation,
             "vertex " + std::to_string(v) + " lists undeclared neighbour " +
                 std::to_string(w));
      if (w == v)
        fail(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(v));
      if (!seen.insert({v, w}).second)
        fail(ErrorCode::ParallelEdge, "vertex " + std::to_string(v) +
                                          " lists " + std::to_string(w) +
                                          " twice");
    }
  }
  for (auto& [v, w] : seen)
    if (!seen.count({w, v}))
      fail(ErrorCode::InconsistentRotation,
           std::to_string(v) + " lists " + std::to_string(w) +
               " but not vice versa");

  // Darts in rev-adjacent pairs.
  m.vdart_.assign(m.n_ + 1, -1);
  for (Vertex v = 1; v <= m.n_; ++v)
    for (Vertex w : m.rot_[v - 1])
      if (v < w) {
        Dart d = static_cast<int>(m.tail_.size());
        m.tail_.push_back(v);
        m.head_.push_back(w);
        m.tail_.push_back(w);
        m.head_.push_back(v);
        m.dart_index_[{v, w}] = d;
        m.dart_index_[{w, v}] = d + 1;
      }
  int nd = static_cast<int>(m.tail_.size());
  m.rot_pos_.assign(nd, -1);
  for (Dart d = 0; d < nd; ++d) {
    if (m.vdart_[m.tail_[d]] < 0) m.vdart_[m.tail_[d]] = d;
  }
  for (Vertex v = 1; v <= m.n_; ++v)
    for (int i = 0; i < static_cast<int>(m.rot_[v - 1].size()); ++i)
      m.rot_pos_[m.dart_index_.at({v, m.rot_[v - 1][i]})] = i;

  if (nd == 0) fail(ErrorCode::NotConnected, "no edges");

  // Connectivity.
  {
    std::vector<char> vis(m.n_ + 1, 0);
    std::deque<Vertex> q{1};
    vis[1] = 1;
    int cnt = 1;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex w : m.rot_[v - 1])
        if (!vis[w]) {
          vis[w] = 1;
          ++cnt;
          q.push_back(w);
        }
    }
    if (cnt != m.n_) fail(ErrorCode::NotConnected, "map is not connected");
  }

  // Face tracing: next(u->v) = (v->w), w the clockwise successor of u at v.
  m.fnext_.assign(nd, -1);
  m.fprev_.assign(nd, -1);
  for (Dart d = 0; d < nd; ++d) {
    Vertex v = m.head_[d];
    const auto& rv = m.rot_[v - 1];
    int i = m.rot_pos_[m.rev(d)];
    Vertex w = rv[(i + 1) % rv.size()];
    m.fnext_[d] = m.dart_index_.at({v, w});
    m.fprev_[m.fnext_[d]] = d;
  }
  m.face_of_.assign(nd, -1);
  for (Dart d = 0; d < nd; ++d) {
    if (m.face_of_[d] >= 0) continue;
    Face f = static_cast<int>(m.faces_.size());
    m.faces_.emplace_back();
    Dart x = d;
    do {
      m.face_of_[x] = f;
      m.faces_[f].push_back(x);
      x = m.fnext_[x];
    } while (x != d);
  }

  int V = m.n_, E = nd / 2, F = static_cast<int>(m.faces_.size());
  if (V - E + F != 2)
    fail(ErrorCode::EulerViolation,
         "V-E+F = " + std::to_string(V - E + F) + ", expected 2");
  return m;
}

Dart PlanarMap::dart(Vertex u, Vertex v) const {
  auto it = dart_index_.find({u, v});
  if (it == dart_index_.end())
    fail(ErrorCode::UnknownCell,
         "no edge " + std::to_string(u) + "-" + std::to_string(v));
  return it->second;
}

bool PlanarMap::has_edge(Vertex u, Vertex v) const {
  return dart_index_.count({u, v}) > 0;
}

std::vector<Vertex> PlanarMap::face_vertices(Face f) const {
  std::vector<Vertex> out;
  for (Dart d : faces_[f]) out.push_back(tail_[d]);
  return out;
}

std::vector<Vertex> PlanarMap::face_key(Face f) const {
  std::vector<Vertex> vs = face_vertices(f);
  int k = static_cast<int>(vs.size());
  int best = 0;
  for (int s = 1; s < k; ++s) {
    for (int i = 0; i < k; ++i) {
      int a = vs[(s + i) % k], b = vs[(best + i) % k];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  std::vector<Vertex> out(k);
  for (int i = 0; i < k; ++i) out[i] = vs[(best + i) % k];
  return out;
}

std::string PlanarMap::face_code(Face f) const {
  auto k = face_key(f);
  std::string s;
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(k[i]);
  }
  return s;
}

Face PlanarMap::face_by_code(const std::string& code) const {
  for (Face f = 0; f < num_faces(); ++f)
    if (face_code(f) == code) return f;
  fail(ErrorCode::UnknownCell, "no face with code " + code);
}

Flag PlanarMap::flag_se(Flag fl) const {
  Dart d = fl / 2;
  if (fl & 1) {
    // Corner at head(d): the other boundary edge of face_of(d) at head(d)
    // is the next dart on the face.
    return flag(fnext_[d], 0);
  }
  return flag(fprev_[d], 1);
}

Flag PlanarMap::flag_at(Vertex v, const Cell& e, Face f) const {
  if (e.dim != CellDim::Edge || (e.a != v && e.b != v))
    fail(ErrorCode::NotIncident, "vertex not an end of flag edge");
  Vertex w = (e.a == v) ? e.b : e.a;
  Dart out = dart(v, w);
  if (face_of_[out] == f) return flag(out, 0);
  if (face_of_[rev(out)] == f) return flag(rev(out), 1);
  fail(ErrorCode::NotIncident, "no flag (" + std::to_string(v) + "," +
                                   e.str() + ",f#" + std::to_string(f) + ")");
}

bool PlanarMap::has_cell(const Cell& c) const {
  switch (c.dim) {
    case CellDim::Vertex: return c.a >= 1 && c.a <= n_;
    case CellDim::Edge: return dart_index_.count({c.a, c.b}) > 0;
    case CellDim::Face: return c.f >= 0 && c.f < num_faces();
  }
  return false;
}

int PlanarMap::degree(const Cell& c) const {
  if (!has_cell(c)) fail(ErrorCode::UnknownCell, "degree of " + c.str());
  switch (c.dim) {
    case CellDim::Vertex: return static_cast<int>(rot_[c.a - 1].size());
    case CellDim::Edge: return 2;
    case CellDim::Face: return face_degree(c.f);
  }
  return 0;
}

std::vector<Cell> PlanarMap::all_cells() const {
  std::vector<Cell> out;
  for (Vertex v = 1; v <= n_; ++v) out.push_back(Cell::vertex(v));
  for (Dart d = 0; d < num_darts(); d += 2)
    out.push_back(Cell::edge(tail_[d], head_[d]));
  for (Face f = 0; f < num_faces(); ++f) out.push_back(Cell::face(f));
  return out;
}

std::vector<Cell> PlanarMap::incident_cells_cyclic(const Cell& c) const {
  if (!has_cell(c)) fail(ErrorCode::UnknownCell, "incident cells of " + c.str());
  std::vector<Cell> out;
  switch (c.dim) {
    case CellDim::Vertex: {
      const auto& rv = rot_[c.a - 1];
      int d = static_cast<int>(rv.size());
      for (int i = 0; i < d; ++i) {
        out.push_back(Cell::edge(c.a, rv[i]));
        out.push_back(Cell::face(face_of_[dart_index_.at({c.a, rv[(i + 1) % d]})]));
      }
      break;
    }
    case CellDim::Edge: {
      Dart d = dart(c.a, c.b);
      out.push_back(Cell::vertex(c.a));
      out.push_back(Cell::face(face_of_[d]));
      out.push_back(Cell::vertex(c.b));
      out.push_back(Cell::face(face_of_[rev(d)]));
      break;
    }
    case CellDim::Face: {
      for (Dart d : faces_[c.f]) {
        out.push_back(Cell::vertex(tail_[d]));
        out.push_back(Cell::edge(tail_[d], head_[d]));
      }
      break;
    }
  }
  return out;
}

bool PlanarMap::incident(const Cell& c, const Cell& x) const {
  if (c.dim == x.dim) return false;
  const Cell* lo = &c;
  const Cell* hi = &x;
  if (static_cast<int>(lo->dim) > static_cast<int>(hi->dim)) std::swap(lo, hi);
  if (lo->dim == CellDim::Vertex && hi->dim == CellDim::Edge)
    return hi->a == lo->a || hi->b == lo->a;
  if (lo->dim == CellDim::Edge && hi->dim == CellDim::Face) {
    for (Dart d : faces_[hi->f])
      if (Cell::edge(tail_[d], head_[d]) == *lo) return true;
    return false;
  }
  // vertex vs face
  for (Dart d : faces_[hi->f])
    if (tail_[d] == lo->a) return true;
  return false;
}

Cell PlanarMap::opposite_cell(const Cell& c, const Cell& x) const {
  auto cyc = incident_cells_cyclic(c);
  int i = index_of(cyc, x);
  if (i < 0) fail(ErrorCode::NotIncident, x.str() + " not incident with " + c.str());
  return cyc[(i + degree(c)) % cyc.size()];
}

int PlanarMap::cell_distance(const Cell& c, const Cell& c2) const {
  if (!has_cell(c) || !has_cell(c2))
    fail(ErrorCode::UnknownCell, "cell_distance");
  if (c == c2) return 0;
  // BFS over the incidence graph of all cells.
  auto cells = all_cells();
  std::map<Cell, int> dist;
  std::deque<Cell> q{c};
  dist[c] = 0;
  while (!q.empty()) {
    Cell cur = q.front();
    q.pop_front();
    for (const Cell& nb : incident_cells_cyclic(cur)) {
      if (dist.count(nb)) continue;
      dist[nb] = dist[cur] + 1;
      if (nb == c2) return dist[nb];
      q.push_back(nb);
    }
  }
  fail(ErrorCode::InvariantViolation, "incidence graph disconnected");
}

PlanarMap PlanarMap::dual() const {
  int F = num_faces();
  std::vector<std::vector<Vertex>> rot(F);
  for (Face f = 0; f < F; ++f) {
    for (Dart d : faces_[f]) {
      Face g = face_of_[rev(d)];
      if (g == f) fail(ErrorCode::DualNotSimple, "dual has a loop");
      rot[f].push_back(g + 1);
    }
    std::set<Vertex> uniq(rot[f].begin(), rot[f].end());
    if (uniq.size() != rot[f].size())
      fail(ErrorCode::DualNotSimple, "dual has parallel edges");
  }
  return build(rot);
}

PlanarMap PlanarMap::mirrored() const {
  std::vector<std::vector<Vertex>> rot = rot_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return build(rot);
}

PlanarMap PlanarMap::relabeled(const std::vector<Vertex>& perm) const {
  std::vector<std::vector<Vertex>> rot(n_);
  for (Vertex v = 1; v <= n_; ++v) {
    auto& r = rot[perm[v - 1] - 1];
    for (Vertex w : rot_[v - 1]) r.push_back(perm[w - 1]);
  }
  return build(rot);
}

// BFS encoding used by the canonical code. Vertices are numbered in
// discovery order; each vertex emits its rotation starting from the dart it
// was discovered by, clockwise (or counterclockwise when mirrored).
void PlanarMap::encode_from(Dart start, bool mirror, std::string& out,
                            std::vector<int>& label,
                            std::vector<Vertex>& order) const {
  label.assign(n_ + 1, 0);
  order.clear();
  int next_label = 0;
  std::deque<Dart> queue;  // entry dart of each discovered vertex
  auto discover = [&](Vertex v) {
    label[v] = ++next_label;
    order.push_back(v);
  };
  discover(tail_[start]);
  discover(head_[start]);
  queue.push_back(rev(start));  // scan head's rotation anchored at tail
  out.clear();
  // Root vertex: rotation anchored at the start dart itself.
  queue.push_front(start);
  std::vector<char> scanned(n_ + 1, 0);
  while (!queue.empty()) {
    Dart ent = queue.front();
    queue.pop_front();
    Vertex v = tail_[ent];
    if (scanned[v]) continue;
    scanned[v] = 1;
    const auto& rv = rot_[v - 1];
    int deg = static_cast<int>(rv.size());
    int i0 = rot_pos_[ent];
    out += '(';
    for (int k = 0; k < deg; ++k) {
      int i = mirror ? (i0 - k + 2 * deg) % deg : (i0 + k) % deg;
      Vertex w = rv[i];
      if (!label[w]) {
        discover(w);
        queue.push_back(dart_index_.at({w, v}));
      }
      out += std::to_string(label[w]);
      out += ',';
    }
    out += ')';
  }
}

std::string PlanarMap::canonical_code(const std::vector<Cell>& marks) const {
  std::string best;
  std::string cur;
  std::vector<int> label;
  std::vector<Vertex> order;
  for (Dart d = 0; d < num_darts(); ++d) {
    for (int mir = 0; mir < 2; ++mir) {
      encode_from(d, mir, cur, label, order);
      for (const Cell& c : marks) {
        cur += '|';
        switch (c.dim) {
          case CellDim::Vertex:
            cur += 'v' + std::to_string(label[c.a]);
            break;
          case CellDim::Edge: {
            int x = label[c.a], y = label[c.b];
            cur += 'e' + std::to_string(std::min(x, y)) + '-' +
                   std::to_string(std::max(x, y));
            break;
          }
          case CellDim::Face: {
            // Relabel the face cycle, in trace orientation for upright
            // encodings and reversed for mirrored ones, minimal rotation.
            std::vector<int> seq;
            for (Dart fd : faces_[c.f]) seq.push_back(label[tail_[fd]]);
            if (mir) std::reverse(seq.begin(), seq.end());
            int k = static_cast<int>(seq.size());
            int bestrot = 0;
            for (int s = 1; s < k; ++s)
              for (int i = 0; i < k; ++i) {
                int a = seq[(s + i) % k], b = seq[(bestrot + i) % k];
                if (a != b) {
                  if (a < b) bestrot = s;
                  break;
                }
              }
            cur += 'f';
            for (int i = 0; i < k; ++i) {
              cur += std::to_string(seq[(bestrot + i) % k]);
              cur += '.';
            }
            break;
          }
        }
      }
      if (best.empty() || cur < best) best = cur;
    }
  }
  return best;
}

std::string PlanarMap::serialize_rs1() const {
  std::ostringstream os;
  os << "RS1 " << n_ << "\n";
  for (Vertex v = 1; v <= n_; ++v) {
    const auto& rv = rot_[v - 1];
    int deg = static_cast<int>(rv.size());
    int i0 = 0;
    for (int i = 1; i < deg; ++i)
      if (rv[i] < rv[i0]) i0 = i;
    os << v << ":";
    for (int k = 0; k < deg; ++k) os << " " << rv[(i0 + k) % deg];
    os << "\n";
  }
  return os.str();
}

PlanarMap parse_rs1(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto parse_fail = [&](int col, const std::string& msg) {
    fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ", col " +
                                    std::to_string(col) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      size_t h = line.find('#');
      if (h != std::string::npos) line.erase(h);
      size_t end = line.find_last_not_of(" \t\r");
      if (end == std::string::npos) continue;
      line.erase(end + 1);
      return true;
    }
    return false;
  };
  if (!next_line()) { lineno = 1; parse_fail(1, "missing RS1 header"); }
  std::istringstream hd(line);
  std::string magic;
  int n = 0;
  if (!(hd >> magic >> n) || magic != "RS1" || n < 1)
    parse_fail(1, "expected 'RS1 <V>'");
  std::string rest;
  if (hd >> rest) parse_fail(1, "trailing tokens after header");
  std::vector<std::vector<Vertex>> rot(n);
  std::vector<char> seen(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    if (!next_line()) { ++lineno; parse_fail(1, "expected " + std::to_string(n) + " rotation lines"); }
    size_t colon = line.find(':');
    if (colon == std::string::npos) parse_fail(1, "missing ':'");
    std::string idtok = line.substr(0, colon);
    size_t p0 = idtok.find_first_not_of(" \t");
    size_t p1 = idtok.find_last_not_of(" \t");
    if (p0 == std::string::npos) parse_fail(1, "missing vertex id");
    idtok = idtok.substr(p0, p1 - p0 + 1);
    if (idtok.empty() ||
        idtok.find_first_not_of("0123456789") != std::string::npos)
      parse_fail(static_cast<int>(p0) + 1, "bad vertex id '" + idtok + "'");
    int id = std::atoi(idtok.c_str());
    if (id < 1 || id > n) parse_fail(1, "vertex id out of range");
    if (seen[id]) parse_fail(1, "duplicate vertex id " + std::to_string(id));
    seen[id] = 1;
    std::istringstream body(line.substr(colon + 1));
    int w;
    while (body >> w) {
      if (w < 1 || w > n)
        parse_fail(static_cast<int>(colon) + 2, "neighbour out of range");
      rot[id - 1].push_back(w);
    }
    if (!body.eof()) parse_fail(static_cast<int>(colon) + 2, "bad neighbour token");
    if (rot[id - 1].empty()) parse_fail(static_cast<int>(colon) + 2, "empty rotation");
  }
  if (next_line()) parse_fail(1, "unexpected trailing content");
  return PlanarMap::build(rot);
}

}  // namespace trisym
