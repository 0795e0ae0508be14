#include "trisym/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "trisym/girdle.hpp"
#include "trisym/fykenet.hpp"
#include "trisym/skeleton.hpp"

namespace trisym {

namespace {

PlanarMap k4() {
  return PlanarMap::build({{2, 3, 4}, {1, 4, 3}, {1, 2, 4}, {1, 3, 2}});
}

// Split vertex v along the neighbour positions i < j: v keeps the arc
// rot[i..j] plus the new vertex, the new vertex takes the complementary arc.
// Inverse of contracting the new edge; always yields a simple triangulation.
PlanarMap split_vertex(const PlanarMap& m, Vertex v, int i, int j) {
  int n = m.num_vertices();
  std::vector<std::vector<Vertex>> rot(n + 1);
  for (Vertex w = 1; w <= n; ++w) rot[w - 1] = m.neighbors(w);
  const auto& rv = m.neighbors(v);
  int deg = static_cast<int>(rv.size());
  Vertex nu = n + 1;
  Vertex x = rv[i], y = rv[j];
  std::vector<Vertex> keep, give;
  for (int k = i; ; k = (k + 1) % deg) {
    keep.push_back(rv[k]);
    if (k == j) break;
  }
  for (int k = j; ; k = (k + 1) % deg) {
    give.push_back(rv[k]);
    if (k == i) break;
  }
  keep.push_back(nu);
  give.push_back(v);
  rot[v - 1] = keep;
  rot[nu - 1] = give;
  // In the link, v is replaced by (u, w) clockwise at x and (w, u) at y;
  // interior arc vertices see only their own side.
  auto replace = [&](Vertex at, std::vector<Vertex> subst) {
    auto& r = rot[at - 1];
    std::vector<Vertex> out;
    for (Vertex w : r) {
      if (w == v)
        out.insert(out.end(), subst.begin(), subst.end());
      else
        out.push_back(w);
    }
    r = out;
  };
  replace(x, {v, nu});
  replace(y, {nu, v});
  for (int k = (i + 1) % deg; k != j; k = (k + 1) % deg) {
    // keep side: nothing to change (still sees v)
    (void)k;
  }
  for (int k = (j + 1) % deg; k != i; k = (k + 1) % deg) replace(rv[k], {nu});
  return PlanarMap::build(rot);
}

}  // namespace

int census_soft_cap() {
  if (const char* env = std::getenv("TRISYM_VMAX_CAP")) {
    int cap = std::atoi(env);
    if (cap >= 5) return cap;
  }
  return 10;
}

std::vector<CensusEntry> generate_all(int v_max, int schedule) {
  if (v_max < 5) fail(ErrorCode::BadParams, "v_max must be at least 5");
  if (v_max > census_soft_cap())
    fail(ErrorCode::BoundTooLarge,
         "v_max " + std::to_string(v_max) + " exceeds cap " +
             std::to_string(census_soft_cap()));
  std::vector<CensusEntry> out;
  std::vector<PlanarMap> level{k4()};
  for (int v = 5; v <= v_max; ++v) {
    std::map<std::string, PlanarMap> next;
    for (const PlanarMap& m : level) {
      std::vector<std::tuple<Vertex, int, int>> splits;
      for (Vertex w = 1; w <= m.num_vertices(); ++w) {
        int deg = static_cast<int>(m.neighbors(w).size());
        for (int i = 0; i < deg; ++i)
          for (int j = i + 1; j < deg; ++j) splits.emplace_back(w, i, j);
      }
      if (schedule % 2 == 1) std::reverse(splits.begin(), splits.end());
      for (auto [w, i, j] : splits) {
        PlanarMap s = split_vertex(m, w, i, j);
        next.emplace(s.canonical_code(), std::move(s));
      }
    }
    level.clear();
    std::vector<std::pair<std::string, PlanarMap>> ordered(
        std::make_move_iterator(next.begin()),
        std::make_move_iterator(next.end()));
    for (auto& [code, m] : ordered) {
      Triangulation t = validate_triangulation(m);
      int aut = static_cast<int>(full_group(t.map).size());
      out.push_back(CensusEntry{std::move(t), code, aut});
      level.push_back(out.back().tri.map);
    }
  }
  return out;
}

std::vector<RootedCountCheck> verify_rooted_counts(int v_max) {
  auto census = generate_all(v_max);
  std::vector<RootedCountCheck> out;
  for (int v = 5; v <= v_max; ++v) {
    RootedCountCheck chk;
    chk.v = v;
    chk.formula_side = count_rooted({v - 3, 0});
    for (const auto& e : census) {
      if (e.tri.map.num_vertices() != v) continue;
      long long flags = 4LL * e.tri.map.num_edges();
      if (flags % e.aut_order != 0)
        fail(ErrorCode::InvariantViolation,
             "automorphism order does not divide flag count");
      chk.census_side += flags / e.aut_order;
    }
    out.push_back(chk);
  }
  return out;
}

std::vector<SymmetryRow> symmetry_statistics(int v_max) {
  auto census = generate_all(v_max);
  std::vector<SymmetryRow> rows;
  for (const auto& e : census) {
    for (const Cell& c : e.tri.map.all_cells()) {
      RootedGroup g = rooted_group(e.tri.map, c);
      SymmetryRow row;
      row.code = e.code;
      row.v = e.tri.map.num_vertices();
      row.root = c;
      row.type = group_type(g);
      row.order = g.order();
      row.degree = e.tri.map.degree(c);
      rows.push_back(row);
    }
  }
  return rows;
}

RoundtripReport roundtrip_suite(int v_max) {
  RoundtripReport rep;
  auto census = generate_all(v_max);
  for (const auto& e : census) {
    const PlanarMap& T = e.tri.map;
    for (const Cell& c0 : T.all_cells()) {
      RootedGroup g = rooted_group(T, c0);
      if (g.order() == 1) continue;
      std::string want = T.canonical_code({c0});
      // Reflective roundtrips, one per reflection.
      for (const MapAutomorphism* phi : g.reflections()) {
        ++rep.reflective_cases;
        try {
          auto [girdle, filling] = decompose_reflective(e.tri, c0, *phi);
          RootedTriangulation back = compose_reflective(girdle, filling);
          if (back.tri.map.canonical_code({back.root}) != want)
            rep.failures.push_back("reflective mismatch at " + c0.str() +
                                   " of " + e.code);
        } catch (const MapError& err) {
          rep.failures.push_back("reflective error at " + c0.str() + " of " +
                                 e.code + ": " + err.what());
        }
      }
      // Rotative roundtrips, one per cyclic subgroup order.
      GroupType gt = group_type(g);
      int rot_order = (gt.kind == GroupKind::Cyclic) ? gt.param
                      : (gt.kind == GroupKind::Dihedral) ? gt.param
                                                         : 1;
      for (int mdiv = 2; mdiv <= rot_order; ++mdiv) {
        if (rot_order % mdiv) continue;
        auto H = cyclic_subgroup(g, mdiv);
        if (!H) continue;
        ++rep.rotative_cases;
        try {
          auto dec = decompose_rotative(e.tri, c0, *H);
          RootedTriangulation back = compose_rotative(dec.net, dec.fillings);
          if (back.tri.map.canonical_code({back.root}) != want)
            rep.failures.push_back("rotative mismatch at " + c0.str() +
                                   " of " + e.code);
        } catch (const MapError& err) {
          rep.failures.push_back("rotative error at " + c0.str() + " of " +
                                 e.code + ": " + err.what());
        }
      }
      // Dihedral roundtrips, one per dihedral subgroup parameter.
      if (gt.kind == GroupKind::Dihedral) {
        for (int n = 2; n <= gt.param; ++n) {
          if (gt.param % n) continue;
          auto H = dihedral_subgroup(g, n);
          if (!H) continue;
          ++rep.dihedral_cases;
          try {
            auto dec = decompose_dihedral(e.tri, c0, *H);
            RootedTriangulation back = compose_dihedral(dec.skeleton, dec.fillings);
            if (back.tri.map.canonical_code({back.root}) != want)
              rep.failures.push_back("dihedral mismatch at " + c0.str() +
                                     " of " + e.code);
          } catch (const MapError& err) {
            rep.failures.push_back("dihedral error at " + c0.str() + " of " +
                                   e.code + ": " + err.what());
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace trisym
