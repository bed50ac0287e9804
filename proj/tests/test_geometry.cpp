#include <doctest.h>

#include "oracles.hpp"
#include "polylab/constructors.hpp"
#include "polylab/geometry.hpp"
#include "polylab/projective.hpp"

using namespace polylab;

TEST_CASE("builder rejects duplicate flags and bad indices") {
    IncidenceGeometryBuilder b(2, 2);
    b.add_flag(0, 0);
    b.add_flag(0, 0);
    CHECK_THROWS_AS(b.build(), DomainError);

    IncidenceGeometryBuilder c(2, 2);
    CHECK_THROWS_AS(c.add_flag(2, 0), IndexError);
    CHECK_THROWS_AS(c.add_flag(0, -1), IndexError);
}

TEST_CASE("distance on the ordinary quadrangle") {
    GeometryPtr g = ordinary_polygon(4);
    CHECK(*g->distance(point_element(0), point_element(0)) == 0);
    CHECK(*g->distance(point_element(0), point_element(2)) == 4);  // opposite point
    CHECK(*g->distance(point_element(0), line_element(0)) == 1);
    CHECK_THROWS_AS(g->distance(point_element(9), point_element(0)), IndexError);
}

TEST_CASE("distances in the Fano plane match a fresh BFS and are 3 off a line") {
    GeometryPtr g = projective_plane(2).geometry;
    auto adj = oracles::incidence_adjacency(*g);
    int np = g->point_count();
    for (int p = 0; p < np; ++p) {
        std::vector<int> row = oracles::bfs(adj, p);
        for (int l = 0; l < g->line_count(); ++l) {
            CHECK(*g->distance(point_element(p), line_element(l)) == row[np + l]);
            if (!g->has_flag(p, l)) CHECK(row[np + l] == 3);
        }
    }
}

TEST_CASE("independently built Fano plane has the same shape") {
    oracles::TinyGeometry fano = oracles::fano_from_xor();
    CHECK(fano.points == 7);
    CHECK(fano.lines.size() == 7);
    IncidenceGeometryBuilder b(fano.points, static_cast<int>(fano.lines.size()));
    for (std::size_t l = 0; l < fano.lines.size(); ++l)
        for (int p : fano.lines[l]) b.add_flag(p, static_cast<int>(l));
    GeometryPtr g = b.build();
    auto adj = oracles::incidence_adjacency(*g);
    CHECK(oracles::girth(adj) == 6);
    CHECK(oracles::diameter(adj) == 3);
}

TEST_CASE("line graph distance") {
    GeometryPtr hexagon = ordinary_polygon(6);
    CHECK(*hexagon->line_graph_distance(0, 0) == 0);
    CHECK(*hexagon->line_graph_distance(0, 1) == 1);  // concurrent
    CHECK(*hexagon->line_graph_distance(0, 3) == 3);  // opposite
    // brute-force check against BFS in an independently built line graph
    int nl = hexagon->line_count();
    std::vector<std::vector<int>> lg(nl);
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
            if (a == b) continue;
            for (int p : hexagon->points_of_line(a))
                if (hexagon->has_flag(p, b)) {
                    lg[a].push_back(b);
                    break;
                }
        }
    for (int a = 0; a < nl; ++a) {
        std::vector<int> row = oracles::bfs(lg, a);
        for (int b = 0; b < nl; ++b) CHECK(*hexagon->line_graph_distance(a, b) == row[b]);
    }
}

TEST_CASE("dual is an involution and swaps digon sides") {
    GeometryPtr d = digon(2, 3);
    GeometryPtr dd = dual(d);
    CHECK(dd->point_count() == 3);
    CHECK(dd->line_count() == 2);
    CHECK(*dual(dd) == *d);

    GeometryPtr g = grid(3, 3);
    GeometryPtr dg = dual(g);
    CHECK(dg->point_count() == 6);
    CHECK(dg->line_count() == 9);
    CHECK(*dual(dg) == *g);

    GeometryPtr plane = projective_plane(2).geometry;
    CHECK(*dual(dual(plane)) == *plane);
}

TEST_CASE("point rows and pencils") {
    GeometryPtr g = grid(3, 3);
    CHECK(incident_points(*g, 0).size() == 3);
    GeometryPtr plane = projective_plane(2).geometry;
    for (int p = 0; p < plane->point_count(); ++p) CHECK(pencil(*plane, p).size() == 3);
    GeometryPtr d = digon(2, 5);
    for (int l = 0; l < 5; ++l) CHECK(incident_points(*d, l).size() == 2);
    CHECK_THROWS_AS(incident_points(*g, 99), IndexError);
}

TEST_CASE("induced subgeometry") {
    GeometryPtr g = grid(3, 3);
    std::vector<int> all_pts(9), all_lines(6);
    for (int i = 0; i < 9; ++i) all_pts[i] = i;
    for (int i = 0; i < 6; ++i) all_lines[i] = i;

    InducedSubgeometry full = induced_subgeometry(*g, all_pts, all_lines);
    CHECK(*full.geometry == *g);

    InducedSubgeometry empty = induced_subgeometry(*g, {}, {});
    CHECK(empty.geometry->point_count() == 0);
    CHECK(empty.geometry->line_count() == 0);

    InducedSubgeometry row = induced_subgeometry(*g, {0, 1, 2}, {0});
    CHECK(row.geometry->point_count() == 3);
    CHECK(row.geometry->line_count() == 1);
    CHECK(row.geometry->flag_count() == 3);

    CHECK_THROWS_AS(induced_subgeometry(*g, {42}, {}), IndexError);
}

TEST_CASE("flag count equals both degree sums") {
    for (const GeometryPtr& g :
         {grid(3, 4), digon(3, 3), projective_plane(3).geometry, ordinary_polygon(6)}) {
        std::size_t by_points = 0, by_lines = 0;
        for (int p = 0; p < g->point_count(); ++p) by_points += g->point_degree(p);
        for (int l = 0; l < g->line_count(); ++l) by_lines += g->line_degree(l);
        CHECK(g->flag_count() == by_points);
        CHECK(g->flag_count() == by_lines);
    }
}

TEST_CASE("distance agrees with the dual and doubles the line-graph distance") {
    for (const GeometryPtr& g : {grid(3, 3), projective_plane(2).geometry, ordinary_polygon(5)}) {
        GeometryPtr d = dual(g);
        for (int p = 0; p < g->point_count(); ++p)
            for (int l = 0; l < g->line_count(); ++l)
                CHECK(g->distance(point_element(p), line_element(l)) ==
                      d->distance(line_element(p), point_element(l)));
        for (int a = 0; a < g->line_count(); ++a)
            for (int b = 0; b < g->line_count(); ++b)
                CHECK(*g->line_graph_distance(a, b) * 2 ==
                      *g->distance(line_element(a), line_element(b)));
    }
}
