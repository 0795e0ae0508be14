#include "trisym/automorphism.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace trisym {

bool MapAutomorphism::is_identity() const {
  for (Dart d = 0; d < static_cast<int>(dart_image.size()); ++d)
    if (dart_image[d] != d) return false;
  return true;
}

Vertex MapAutomorphism::vertex_image(Vertex v) const {
  for (Vertex w : map->neighbors(v)) {
    Dart d = map->dart(v, w);
    return map->tail(dart_image[d]);
  }
  fail(ErrorCode::UnknownCell, "isolated vertex");
}

Face MapAutomorphism::face_image(Face f) const {
  Dart d = map->face_darts(f)[0];
  Dart img = dart_image[d];
  return chirality == Chirality::Preserving ? map->face_of(img)
                                            : map->face_of(map->rev(img));
}

Cell MapAutomorphism::cell_image(const Cell& c) const {
  switch (c.dim) {
    case CellDim::Vertex:
      return Cell::vertex(vertex_image(c.a));
    case CellDim::Edge: {
      Dart img = dart_image[map->dart(c.a, c.b)];
      return Cell::edge(map->tail(img), map->head(img));
    }
    case CellDim::Face:
      return Cell::face(face_image(c.f));
  }
  fail(ErrorCode::UnknownCell, "bad cell");
}

MapAutomorphism MapAutomorphism::compose(const MapAutomorphism& inner) const {
  MapAutomorphism out;
  out.map = map;
  out.dart_image.resize(dart_image.size());
  for (Dart d = 0; d < static_cast<int>(dart_image.size()); ++d)
    out.dart_image[d] = dart_image[inner.dart_image[d]];
  out.chirality = (chirality == inner.chirality) ? Chirality::Preserving
                                                 : Chirality::Reversing;
  return out;
}

MapAutomorphism MapAutomorphism::inverse() const {
  MapAutomorphism out;
  out.map = map;
  out.dart_image.resize(dart_image.size());
  for (Dart d = 0; d < static_cast<int>(dart_image.size()); ++d)
    out.dart_image[dart_image[d]] = d;
  out.chirality = chirality;
  return out;
}

MapAutomorphism identity_automorphism(const PlanarMap& map) {
  MapAutomorphism id;
  id.map = &map;
  id.dart_image.resize(map.num_darts());
  for (Dart d = 0; d < map.num_darts(); ++d) id.dart_image[d] = d;
  return id;
}

std::optional<MapAutomorphism> extend_flag_pair(const PlanarMap& map, Flag src,
                                                Flag dst) {
  int nf = map.num_flags();
  std::vector<Flag> img(nf, -1);
  std::vector<char> hit(nf, 0);
  img[src] = dst;
  if (hit[dst]) return std::nullopt;
  hit[dst] = 1;
  std::deque<Flag> q{src};
  auto step = [&](Flag sx, Flag sy) -> bool {
    if (img[sx] < 0) {
      if (hit[sy]) return false;
      img[sx] = sy;
      hit[sy] = 1;
      q.push_back(sx);
      return true;
    }
    return img[sx] == sy;
  };
  while (!q.empty()) {
    Flag x = q.front();
    q.pop_front();
    Flag y = img[x];
    if (!step(map.flag_sv(x), map.flag_sv(y))) return std::nullopt;
    if (!step(map.flag_se(x), map.flag_se(y))) return std::nullopt;
    if (!step(map.flag_sf(x), map.flag_sf(y))) return std::nullopt;
  }
  for (Flag x = 0; x < nf; ++x)
    if (img[x] < 0) return std::nullopt;  // flag graph disconnected

  MapAutomorphism out;
  out.map = &map;
  out.chirality = (map.flag_sign(src) == map.flag_sign(dst))
                      ? Chirality::Preserving
                      : Chirality::Reversing;
  out.dart_image.resize(map.num_darts());
  for (Dart d = 0; d < map.num_darts(); ++d) {
    Flag y = img[map.flag(d, 0)];
    Dart dd = map.flag_dart(y);
    out.dart_image[d] = (map.flag_sign(y) == 0) ? dd : map.rev(dd);
  }
  return out;
}

std::optional<MapAutomorphism> extend_from_flag(const PlanarMap& map, Flag src,
                                                Flag dst, Chirality chi) {
  Chirality implied = (map.flag_sign(src) == map.flag_sign(dst))
                          ? Chirality::Preserving
                          : Chirality::Reversing;
  if (implied != chi) return std::nullopt;
  return extend_flag_pair(map, src, dst);
}

std::vector<MapAutomorphism> full_group(const PlanarMap& map) {
  std::vector<MapAutomorphism> out;
  Flag src = 0;
  for (Flag dst = 0; dst < map.num_flags(); ++dst)
    if (auto phi = extend_flag_pair(map, src, dst)) out.push_back(*phi);
  return out;
}

std::string GroupType::str() const {
  switch (kind) {
    case GroupKind::Trivial: return "Trivial";
    case GroupKind::Reflection: return "Z2";
    case GroupKind::Cyclic: return "Z" + std::to_string(param);
    case GroupKind::Dihedral: return "D" + std::to_string(param);
  }
  return "?";
}

std::vector<const MapAutomorphism*> RootedGroup::reflections() const {
  std::vector<const MapAutomorphism*> out;
  for (const auto& e : elements)
    if (e.chirality == Chirality::Reversing) out.push_back(&e);
  return out;
}

std::vector<const MapAutomorphism*> RootedGroup::rotations() const {
  std::vector<const MapAutomorphism*> out;
  for (const auto& e : elements)
    if (e.chirality == Chirality::Preserving && !e.is_identity())
      out.push_back(&e);
  return out;
}

namespace {

std::vector<Flag> flags_at_cell(const PlanarMap& map, const Cell& c) {
  std::vector<Flag> out;
  for (Flag fl = 0; fl < map.num_flags(); ++fl) {
    switch (c.dim) {
      case CellDim::Vertex:
        if (map.flag_vertex(fl) == c.a) out.push_back(fl);
        break;
      case CellDim::Edge:
        if (map.flag_edge(fl) == c) out.push_back(fl);
        break;
      case CellDim::Face:
        if (map.flag_face(fl) == c.f) out.push_back(fl);
        break;
    }
  }
  return out;
}

}  // namespace

RootedGroup rooted_group(const PlanarMap& map, const Cell& root) {
  if (!map.has_cell(root)) fail(ErrorCode::UnknownCell, "root " + root.str());
  RootedGroup g;
  g.root = root;
  auto flags = flags_at_cell(map, root);
  Flag src = flags.front();
  std::set<std::vector<Dart>> seen;
  for (Flag dst : flags)
    if (auto phi = extend_flag_pair(map, src, dst))
      if (seen.insert(phi->dart_image).second) g.elements.push_back(*phi);
  std::sort(g.elements.begin(), g.elements.end(),
            [](const MapAutomorphism& a, const MapAutomorphism& b) {
              if (a.is_identity() != b.is_identity()) return a.is_identity();
              return a.dart_image < b.dart_image;
            });
  return g;
}

GroupType group_type(const RootedGroup& g) {
  int refl = static_cast<int>(g.reflections().size());
  int rot = static_cast<int>(g.rotations().size());
  int order = g.order();
  if (order != 1 + refl + rot)
    fail(ErrorCode::InvariantViolation, "group element count mismatch");
  if (order == 1) return {GroupKind::Trivial, 1};
  if (refl == 0) return {GroupKind::Cyclic, order};
  if (rot == 0) {
    if (order != 2)
      fail(ErrorCode::InvariantViolation,
           "several reflections but no rotation");
    return {GroupKind::Reflection, 2};
  }
  if (order != 2 * refl || refl < 2)
    fail(ErrorCode::InvariantViolation,
         "mixed group of order " + std::to_string(order) + " with " +
             std::to_string(refl) + " reflections");
  return {GroupKind::Dihedral, refl};
}

AutClass classify_at(const MapAutomorphism& phi, const Cell& c0) {
  if (!phi.fixes(c0))
    fail(ErrorCode::NotIncident, "automorphism does not fix " + c0.str());
  if (phi.is_identity()) return {AutClassKind::Identity, c0};
  auto cyc = phi.map->incident_cells_cyclic(c0);
  std::vector<int> fixed;
  for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
    if (phi.fixes(cyc[i])) fixed.push_back(i);
  if (fixed.empty()) return {AutClassKind::RotativeAt, c0};
  if (fixed.size() == 2) {
    int d = phi.map->degree(c0);
    if ((fixed[1] - fixed[0]) != d)
      fail(ErrorCode::InvariantViolation,
           "fixed incident cells do not lie opposite at " + c0.str());
    return {AutClassKind::ReflectiveAt, c0};
  }
  fail(ErrorCode::InvariantViolation,
       "automorphism fixes " + std::to_string(fixed.size()) +
           " cells incident with " + c0.str());
}

std::vector<Cell> fixed_cells(const MapAutomorphism& phi) {
  std::vector<Cell> out;
  for (const Cell& c : phi.map->all_cells())
    if (phi.fixes(c)) out.push_back(c);
  return out;
}

std::optional<std::vector<MapAutomorphism>> cyclic_subgroup(
    const RootedGroup& g, int order) {
  if (order < 2) return std::nullopt;
  for (const auto& e : g.elements) {
    if (e.chirality != Chirality::Preserving || e.is_identity()) continue;
    // Order of e.
    MapAutomorphism p = e;
    int k = 1;
    while (!p.is_identity()) {
      p = p.compose(e);
      ++k;
    }
    if (k == order) {
      std::vector<MapAutomorphism> sub{identity_automorphism(*e.map)};
      MapAutomorphism q = e;
      for (int i = 1; i < order; ++i) {
        sub.push_back(q);
        q = q.compose(e);
      }
      return sub;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<MapAutomorphism>> dihedral_subgroup(
    const RootedGroup& g, int n) {
  if (n < 2) return std::nullopt;
  auto rots = cyclic_subgroup(g, n);
  std::vector<MapAutomorphism> rotpart;
  if (rots) {
    rotpart = *rots;
  } else if (n == 2) {
    return std::nullopt;  // D2 needs a rotation of order 2
  } else {
    return std::nullopt;
  }
  // Reflections conjugate-compatible with the rotation part: phi such that
  // phi * rot * phi == rot^{-1}; any reflection works inside a dihedral
  // rooted group, so take the ones whose composition with the generator
  // stays in the subgroup.
  std::set<std::vector<Dart>> rotset;
  for (const auto& r : rotpart) rotset.insert(r.dart_image);
  std::vector<const MapAutomorphism*> refl = g.reflections();
  if (refl.empty()) return std::nullopt;
  // Anchor: reflection with the smallest fixed cell incident to the root.
  const MapAutomorphism* anchor = nullptr;
  Cell best{};
  for (const MapAutomorphism* r : refl) {
    auto cyc = r->map->incident_cells_cyclic(g.root);
    Cell fixed_min{};
    bool found = false;
    for (const Cell& c : cyc)
      if (r->fixes(c) && (!found || c < fixed_min)) {
        fixed_min = c;
        found = true;
      }
    if (!found) continue;
    if (!anchor || fixed_min < best) {
      anchor = r;
      best = fixed_min;
    }
  }
  if (!anchor) return std::nullopt;
  std::vector<MapAutomorphism> sub = rotpart;
  for (const auto& r : rotpart) sub.push_back(anchor->compose(r));
  if (static_cast<int>(sub.size()) != 2 * n) return std::nullopt;
  std::set<std::vector<Dart>> uniq;
  for (const auto& e : sub)
    if (!uniq.insert(e.dart_image).second) return std::nullopt;
  return sub;
}

}  // namespace trisym
