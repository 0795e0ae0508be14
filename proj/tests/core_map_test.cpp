#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "trisym/core_map.hpp"

using namespace trisym;
using namespace trisym::testing;

TEST_CASE("build k4 from the rotation table") {
  PlanarMap m = k4();
  CHECK(m.num_vertices() == 4);
  CHECK(m.num_edges() == 6);
  CHECK(m.num_faces() == 4);
  for (Face f = 0; f < m.num_faces(); ++f) CHECK(m.face_degree(f) == 3);
}

TEST_CASE("single triangle satisfies euler") {
  PlanarMap m = PlanarMap::build({{2, 3}, {3, 1}, {1, 2}});
  CHECK(m.num_vertices() == 3);
  CHECK(m.num_edges() == 3);
  CHECK(m.num_faces() == 2);
}

TEST_CASE("inconsistent rotation is rejected") {
  CHECK_THROWS_WITH_AS(PlanarMap::build({{2}, {1}, {1, 2}}),
                       doctest::Contains("vice versa"), MapError);
}

TEST_CASE("loops and duplicates are rejected") {
  CHECK_THROWS_AS(PlanarMap::build({{1, 2}, {1}}), MapError);
  CHECK_THROWS_AS(PlanarMap::build({{2, 2}, {1, 1}}), MapError);
}

TEST_CASE("disconnected input is rejected") {
  std::vector<std::vector<Vertex>> rot = {{2}, {1}, {4}, {3}};
  CHECK_THROWS_AS(PlanarMap::build(rot), MapError);
}

TEST_CASE("incident cells around a k4 vertex") {
  PlanarMap m = k4();
  auto cyc = m.incident_cells_cyclic(Cell::vertex(1));
  REQUIRE(cyc.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(cyc[i].dim == (i % 2 == 0 ? CellDim::Edge : CellDim::Face));
    // Consecutive cells are incident.
    CHECK(m.incident(cyc[i], cyc[(i + 1) % 6]));
  }
}

TEST_CASE("incidence cycle invariants on fixtures") {
  for (const PlanarMap& m : {k4(), bipyr5(), oct6()}) {
    for (const Cell& c : m.all_cells()) {
      auto cyc = m.incident_cells_cyclic(c);
      CHECK(static_cast<int>(cyc.size()) == 2 * m.degree(c));
      for (size_t i = 0; i < cyc.size(); ++i) {
        CHECK(m.incident(cyc[i], cyc[(i + 1) % cyc.size()]));
        CHECK(m.incident(c, cyc[i]));
      }
      // Non-consecutive cells of the cycle around an edge are the two end
      // vertices / the two faces, which lie opposite.
      if (c.dim == CellDim::Edge) {
        CHECK(m.opposite_cell(c, cyc[0]) == cyc[2]);
        CHECK(m.opposite_cell(c, cyc[1]) == cyc[3]);
      }
    }
  }
}

TEST_CASE("degrees") {
  PlanarMap m = k4();
  CHECK(m.degree(Cell::vertex(1)) == 3);
  CHECK(m.degree(Cell::edge(1, 2)) == 2);
  for (Face f = 0; f < m.num_faces(); ++f)
    CHECK(m.degree(Cell::face(f)) == 3);
  CHECK_THROWS_AS(m.degree(Cell::edge(5, 6)), MapError);
}

TEST_CASE("opposite cell on a triangulation face") {
  PlanarMap m = bipyr5();
  // Face (4,1,2): vertex 4 lies opposite the edge 1-2.
  Face f = m.face_of(m.dart(1, 2));
  if (index_of(m.face_vertices(f), 4) < 0) f = m.face_of(m.dart(2, 1));
  auto verts = m.face_vertices(f);
  REQUIRE(index_of(verts, 4) >= 0);
  CHECK(m.opposite_cell(Cell::face(f), Cell::vertex(4)) == Cell::edge(1, 2));
  // Edge ends lie opposite.
  CHECK(m.opposite_cell(Cell::edge(1, 2), Cell::vertex(1)) ==
        Cell::vertex(2));
  CHECK_THROWS_AS(m.opposite_cell(Cell::edge(1, 2), Cell::vertex(3)),
                  MapError);
}

TEST_CASE("opposite at odd-degree vertex maps edges to faces") {
  PlanarMap m = k4();  // every vertex has degree 3
  Cell v = Cell::vertex(2);
  for (const Cell& x : m.incident_cells_cyclic(v)) {
    Cell o = m.opposite_cell(v, x);
    if (x.dim == CellDim::Edge) CHECK(o.dim == CellDim::Face);
    if (x.dim == CellDim::Face) CHECK(o.dim == CellDim::Edge);
  }
}

TEST_CASE("cell distance") {
  PlanarMap m = k4();
  CHECK(m.cell_distance(Cell::vertex(1), Cell::vertex(1)) == 0);
  CHECK(m.cell_distance(Cell::vertex(1), Cell::edge(1, 2)) == 1);
  CHECK(m.cell_distance(Cell::vertex(1), Cell::vertex(2)) == 2);
}

TEST_CASE("face tracing partitions darts") {
  for (const PlanarMap& m : {k4(), bipyr5(), oct6()}) {
    std::vector<int> seen(m.num_darts(), 0);
    for (Face f = 0; f < m.num_faces(); ++f)
      for (Dart d : m.face_darts(f)) seen[d]++;
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("dual of k4 is k4") {
  PlanarMap d = k4().dual();
  CHECK(d.canonical_code() == k4().canonical_code());
}

TEST_CASE("dual of the octahedron is the cube") {
  PlanarMap d = oct6().dual();
  CHECK(d.num_vertices() == 8);
  CHECK(d.num_edges() == 12);
  CHECK(d.num_faces() == 6);
  for (Vertex v = 1; v <= 8; ++v) CHECK(d.neighbors(v).size() == 3);
  CHECK(d.dual().canonical_code() == oct6().canonical_code());
}

TEST_CASE("dual of a bare triangle is not simple") {
  PlanarMap tri = PlanarMap::build({{2, 3}, {3, 1}, {1, 2}});
  CHECK_THROWS_AS(tri.dual(), MapError);
}

TEST_CASE("canonical code is invariant under relabeling and mirroring") {
  std::mt19937 rng(20240811);
  for (const PlanarMap& m : {k4(), bipyr5(), oct6(),
                             load_fixture("spindle2.rs1")}) {
    std::string code = m.canonical_code();
    CHECK(m.mirrored().canonical_code() == code);
    for (int i = 0; i < 100; ++i)
      CHECK(random_relabeling(m, rng).canonical_code() == code);
  }
}

TEST_CASE("canonical code distinguishes fixtures") {
  CHECK(oct6().canonical_code() != bipyr5().canonical_code());
  CHECK(oct6().canonical_code() != k4().canonical_code());
}

TEST_CASE("rs1 parse of the k4 table") {
  PlanarMap m = parse_rs1("RS1 4\n1: 2 3 4\n2: 1 4 3\n3: 1 2 4\n4: 1 3 2\n");
  CHECK(m.canonical_code() == k4().canonical_code());
}

TEST_CASE("rs1 roundtrip is the identity on normalized text") {
  for (const PlanarMap& m : {k4(), bipyr5(), oct6()}) {
    std::string s = m.serialize_rs1();
    CHECK(parse_rs1(s).serialize_rs1() == s);
  }
}

TEST_CASE("rs1 handles comments and reports positions") {
  PlanarMap m = parse_rs1("# comment\nRS1 2\n1: 2\n2: 1\n");
  CHECK(m.num_vertices() == 2);
  CHECK(m.num_edges() == 1);
  CHECK(m.num_faces() == 1);
  try {
    parse_rs1("RS1 2\n1: 2\nx: 1\n");
    FAIL("expected parse error");
  } catch (const MapError& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("fixture files build and have triangular faces") {
  for (const char* name : {"levels3.rs1", "levels2.rs1", "spindle2.rs1"}) {
    PlanarMap m = load_fixture(name);
    CHECK(m.num_edges() == 3 * m.num_vertices() - 6);
    for (Face f = 0; f < m.num_faces(); ++f) CHECK(m.face_degree(f) == 3);
  }
}

TEST_CASE("flag moves are involutions that flip orientation class") {
  for (const PlanarMap& m : {k4(), bipyr5()}) {
    CHECK(m.num_flags() == 4 * m.num_edges());
    for (Flag fl = 0; fl < m.num_flags(); ++fl) {
      CHECK(m.flag_sv(m.flag_sv(fl)) == fl);
      CHECK(m.flag_se(m.flag_se(fl)) == fl);
      CHECK(m.flag_sf(m.flag_sf(fl)) == fl);
      CHECK(m.flag_sign(m.flag_sv(fl)) != m.flag_sign(fl));
      CHECK(m.flag_sign(m.flag_se(fl)) != m.flag_sign(fl));
      CHECK(m.flag_sign(m.flag_sf(fl)) != m.flag_sign(fl));
      // Moves change exactly the advertised coordinate.
      CHECK(m.flag_vertex(m.flag_sv(fl)) != m.flag_vertex(fl));
      CHECK(m.flag_edge(m.flag_sv(fl)) == m.flag_edge(fl));
      CHECK(m.flag_face(m.flag_sv(fl)) == m.flag_face(fl));
      CHECK(m.flag_vertex(m.flag_se(fl)) == m.flag_vertex(fl));
      CHECK(m.flag_face(m.flag_se(fl)) == m.flag_face(fl));
      CHECK(m.flag_vertex(m.flag_sf(fl)) == m.flag_vertex(fl));
      CHECK(m.flag_edge(m.flag_sf(fl)) == m.flag_edge(fl));
    }
  }
}
