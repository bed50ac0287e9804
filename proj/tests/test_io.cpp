#include <doctest.h>

#include "polylab/constructors.hpp"
#include "polylab/io.hpp"

using namespace polylab;

TEST_CASE("triangle serializes to the fixed six-line body") {
    CHECK(write_geometry(*ordinary_polygon(3)) ==
          "ig 1\n"
          "points 3\n"
          "lines 3\n"
          "0 1\n"
          "1 2\n"
          "0 2\n");
}

TEST_CASE("parse accepts comments and blank lines") {
    GeometryPtr g = parse_geometry(
        "# a triangle\n"
        "ig 1\n"
        "points 3\n\n"
        "lines 3\n"
        "0 1\n"
        "  1 2\n"
        "0 2\n"
        "# trailing comment\n");
    CHECK(*g == *ordinary_polygon(3));
}

TEST_CASE("parse reports positions for malformed input") {
    CHECK_THROWS_AS(parse_geometry("ig 2\n"), ParseError);
    CHECK_THROWS_AS(parse_geometry("points 3\n"), ParseError);
    try {
        parse_geometry("ig 1\npoints 3\nlines 1\n0 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
    // duplicate index within a record
    CHECK_THROWS_AS(parse_geometry("ig 1\npoints 3\nlines 1\n1 1\n"), ParseError);
    // wrong record count
    CHECK_THROWS_AS(parse_geometry("ig 1\npoints 3\nlines 2\n0 1\n"), ParseError);
}

TEST_CASE("geometry round trips are byte-identical") {
    for (const GeometryPtr& g :
         {ordinary_polygon(3), grid(3, 4), projective_plane(2).geometry,
          projective_plane(3).geometry, q4(2).geometry, q4(3).geometry,
          split_cayley_hexagon(2), double_geometry(projective_plane(2).geometry).geometry,
          thin_hexagon_from_plane(projective_plane(2).geometry)}) {
        std::string bytes = write_geometry(*g);
        GeometryPtr parsed = parse_geometry(bytes);
        CHECK(*parsed == *g);
        CHECK(write_geometry(*parsed) == bytes);
    }
}

TEST_CASE("morphism round trips are byte-identical") {
    GeometryMorphism m = subfield_embedding(2, 2);
    std::string bytes = write_morphism(m);
    GeometryMorphism parsed = parse_morphism(bytes, m.source, m.target);
    CHECK(parsed == m);
    CHECK(write_morphism(parsed) == bytes);
}

TEST_CASE("morphism digests guard against the wrong geometry") {
    GeometryMorphism m = identity_morphism(ordinary_polygon(4));
    std::string bytes = write_morphism(m);
    CHECK_THROWS_AS(parse_morphism(bytes, grid(2, 2), grid(2, 2)), ParseError);
}

TEST_CASE("lines without points refuse to serialize") {
    IncidenceGeometryBuilder b(2, 1);
    GeometryPtr g = b.build();
    CHECK_THROWS_AS(write_geometry(*g), DomainError);
}
