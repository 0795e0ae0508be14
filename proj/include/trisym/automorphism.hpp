#ifndef TRISYM_AUTOMORPHISM_HPP
#define TRISYM_AUTOMORPHISM_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trisym/core_map.hpp"
#include "trisym/triangulation.hpp"

namespace trisym {

enum class Chirality { Preserving, Reversing };

// An automorphism of a map, stored as its action on darts plus the
// orientation class. Composition is right-to-left.
struct MapAutomorphism {
  const PlanarMap* map = nullptr;
  std::vector<Dart> dart_image;
  Chirality chirality = Chirality::Preserving;

  bool is_identity() const;
  Vertex vertex_image(Vertex v) const;
  Dart image(Dart d) const { return dart_image[d]; }
  Face face_image(Face f) const;
  Cell cell_image(const Cell& c) const;
  bool fixes(const Cell& c) const { return cell_image(c) == c; }
  MapAutomorphism compose(const MapAutomorphism& inner) const;
  MapAutomorphism inverse() const;
  bool operator==(const MapAutomorphism& o) const {
    return dart_image == o.dart_image;
  }
  bool operator<(const MapAutomorphism& o) const {
    return dart_image < o.dart_image;
  }
};

MapAutomorphism identity_automorphism(const PlanarMap& map);

// The unique automorphism mapping flag src to flag dst, if the propagation
// over all flags is consistent and its chirality matches chi.
std::optional<MapAutomorphism> extend_from_flag(const PlanarMap& map,
                                                Flag src, Flag dst,
                                                Chirality chi);
// As above but without the chirality filter.
std::optional<MapAutomorphism> extend_flag_pair(const PlanarMap& map,
                                                Flag src, Flag dst);

std::vector<MapAutomorphism> full_group(const PlanarMap& map);

enum class GroupKind { Trivial, Reflection, Cyclic, Dihedral };

struct GroupType {
  GroupKind kind = GroupKind::Trivial;
  int param = 1;  // group order for Cyclic/Reflection, n for Dihedral
  std::string str() const;
  bool operator==(const GroupType& o) const {
    return kind == o.kind && param == o.param;
  }
};

struct RootedGroup {
  Cell root;
  std::vector<MapAutomorphism> elements;  // identity first
  int order() const { return static_cast<int>(elements.size()); }
  std::vector<const MapAutomorphism*> reflections() const;
  std::vector<const MapAutomorphism*> rotations() const;  // non-identity
};

RootedGroup rooted_group(const PlanarMap& map, const Cell& root);
inline RootedGroup rooted_group(const RootedTriangulation& rt) {
  return rooted_group(rt.tri.map, rt.root);
}
GroupType group_type(const RootedGroup& g);

enum class AutClassKind { Identity, ReflectiveAt, RotativeAt };

struct AutClass {
  AutClassKind kind;
  Cell at;
};

// Classification by the number of fixed cells incident with c0: all for the
// identity, exactly two (lying opposite) for reflections, none for
// rotations. Anything else falsifies the fixed-cell lemma.
AutClass classify_at(const MapAutomorphism& phi, const Cell& c0);

std::vector<Cell> fixed_cells(const MapAutomorphism& phi);

// Cyclic subgroup of given order generated by rotations in g, if any.
std::optional<std::vector<MapAutomorphism>> cyclic_subgroup(
    const RootedGroup& g, int order);
// Dihedral subgroup with n reflections; the anchor reflection is chosen
// deterministically (smallest fixed incident cell).
std::optional<std::vector<MapAutomorphism>> dihedral_subgroup(
    const RootedGroup& g, int n);

}  // namespace trisym

#endif
