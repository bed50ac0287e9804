#include <doctest.h>

#include "polylab/classification.hpp"
#include "polylab/constructors.hpp"
#include "polylab/isomorphism.hpp"
#include "polylab/polygon.hpp"

using namespace polylab;

namespace {

std::vector<int> first_cycle(const GeometryPtr& tgt, int m) {
    // deterministic traversal starting at point 0
    std::vector<int> cyc{0};
    int prev = -1;
    while (static_cast<int>(cyc.size()) < m) {
        int cur = cyc.back();
        for (int l : tgt->lines_of_point(cur)) {
            bool found = false;
            for (int q : tgt->points_of_line(l))
                if (q != cur && q != prev) {
                    cyc.push_back(q);
                    prev = cur;
                    found = true;
                    break;
                }
            if (found) break;
        }
    }
    return cyc;
}

}  // namespace

TEST_CASE("canonical plane epimorphism on the Fano plane") {
    GeometryPtr fano = projective_plane(2).geometry;
    GeometryPtr triangle = ordinary_polygon(3);
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::plane;
    d.epi_case = EpiCase::A;
    d.base = 0;
    std::vector<int> row = fano->points_of_line(0);
    d.block_first = {row[0]};
    d.block_second = {row[1], row[2]};
    d.target_cycle = first_cycle(triangle, 3);

    GeometryMorphism m = canonical_plane_epimorphism(fano, triangle, d);
    CHECK(is_epimorphism(m));
    // the ab line fiber is exactly {base}
    Fibers fb = fibers(m);
    int ab = -1;
    for (int l : triangle->lines_of_point(d.target_cycle[0]))
        if (triangle->has_flag(d.target_cycle[1], l)) ab = l;
    CHECK(fb.line_fibers[ab] == std::vector<int>{0});

    // swapping the blocks gives the same map with roles a and b exchanged
    CanonicalEpiDescriptor swapped = d;
    std::swap(swapped.block_first, swapped.block_second);
    std::swap(swapped.target_cycle[0], swapped.target_cycle[1]);
    GeometryMorphism m2 = canonical_plane_epimorphism(fano, triangle, swapped);
    CHECK(m2 == m);

    // invalid descriptors are rejected
    CanonicalEpiDescriptor bad = d;
    bad.block_first.clear();
    CHECK_THROWS_AS(canonical_plane_epimorphism(fano, triangle, bad), DescriptorError);
    bad = d;
    bad.block_second = {row[1]};  // not a partition
    CHECK_THROWS_AS(canonical_plane_epimorphism(fano, triangle, bad), DescriptorError);
}

TEST_CASE("canonical plane epimorphism, case B on PG(2,3)") {
    GeometryPtr plane = projective_plane(3).geometry;
    GeometryPtr triangle = ordinary_polygon(3);
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::plane;
    d.epi_case = EpiCase::B;
    d.base = 0;
    std::vector<int> pen = plane->lines_of_point(0);
    d.block_first = {pen[0]};
    d.block_second = {pen[1], pen[2], pen[3]};
    d.target_cycle = first_cycle(triangle, 3);
    GeometryMorphism m = canonical_plane_epimorphism(plane, triangle, d);
    CHECK(is_epimorphism(m));
    CHECK(!line_saturation(m));
}

TEST_CASE("canonical quadrangle epimorphism fiber sizes on W(2)") {
    GeometryPtr w2 = q4(2).geometry;
    GeometryPtr target = grid(2, 2);
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::quadrangle;
    d.epi_case = EpiCase::A;
    d.base = 0;
    std::vector<int> row = w2->points_of_line(0);
    d.block_first = {row[0]};           // |A| = 1
    d.block_second = {row[1], row[2]};  // |B| = 2
    d.target_cycle = first_cycle(target, 4);

    GeometryMorphism m = canonical_gq_epimorphism(w2, target, d);
    Fibers fb = fibers(m);
    CHECK(fb.point_fibers[d.target_cycle[2]].size() == 8);  // C
    CHECK(fb.point_fibers[d.target_cycle[3]].size() == 4);  // D
    int ab = -1;
    for (int l : target->lines_of_point(d.target_cycle[0]))
        if (target->has_flag(d.target_cycle[1], l)) ab = l;
    CHECK(fb.line_fibers[ab] == std::vector<int>{0});
    CHECK(!line_saturation(m));

    // case B with a 1+2 pencil split
    CanonicalEpiDescriptor db;
    db.family = PolygonFamily::quadrangle;
    db.epi_case = EpiCase::B;
    db.base = 0;
    std::vector<int> pen = w2->lines_of_point(0);
    db.block_first = {pen[0]};
    db.block_second = {pen[1], pen[2]};
    db.target_cycle = first_cycle(target, 4);
    CHECK(is_epimorphism(canonical_gq_epimorphism(w2, target, db)));
}

TEST_CASE("canonical hexagon epimorphisms on H(2)") {
    GeometryPtr h2 = split_cayley_hexagon(2);
    GeometryPtr target = ordinary_polygon(6);
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::hexagon;
    d.epi_case = EpiCase::A;
    d.base = 0;
    std::vector<int> row = h2->points_of_line(0);
    d.block_first = {row[0]};           // C
    d.block_second = {row[1], row[2]};  // B
    d.target_cycle = first_cycle(target, 6);
    GeometryMorphism m = canonical_hexagon_epimorphism(h2, target, d);
    CHECK(is_epimorphism(m));
    CHECK(!line_saturation(m));

    CanonicalEpiDescriptor r = d;  // reflected blocks still build
    std::swap(r.block_first, r.block_second);
    CHECK(is_epimorphism(canonical_hexagon_epimorphism(h2, target, r)));

    CanonicalEpiDescriptor db;
    db.family = PolygonFamily::hexagon;
    db.epi_case = EpiCase::B;
    db.base = 0;
    std::vector<int> pen = h2->lines_of_point(0);
    db.block_first = {pen[0]};
    db.block_second = {pen[1], pen[2]};
    db.target_cycle = first_cycle(target, 6);
    CHECK(is_epimorphism(canonical_hexagon_epimorphism(h2, target, db)));
}

TEST_CASE("classify round-trips canonical descriptors") {
    GeometryPtr fano = projective_plane(2).geometry;
    GeometryPtr triangle = ordinary_polygon(3);
    std::vector<CanonicalEpiDescriptor> all =
        enumerate_canonical_descriptors(fano, triangle, PolygonFamily::plane);
    REQUIRE(!all.empty());
    int step = 37;  // sample the descriptor space
    for (std::size_t i = 0; i < all.size(); i += step) {
        GeometryMorphism m = canonical_epimorphism(fano, triangle, all[i]);
        ClassifyOutcome c = classify_epimorphism(m);
        REQUIRE(c.classified());
        CHECK(canonical_epimorphism(fano, triangle, *c.descriptor) == m);
    }
}

TEST_CASE("classify handles case-B-only maps") {
    GeometryPtr plane = projective_plane(3).geometry;
    GeometryPtr triangle = ordinary_polygon(3);
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::plane;
    d.epi_case = EpiCase::B;
    d.base = 2;
    std::vector<int> pen = plane->lines_of_point(2);
    d.block_first = {pen[0], pen[1]};
    d.block_second = {pen[2], pen[3]};  // 2+2: not expressible as case A
    d.target_cycle = first_cycle(triangle, 3);
    GeometryMorphism m = canonical_epimorphism(plane, triangle, d);
    ClassifyOutcome c = classify_epimorphism(m);
    REQUIRE(c.classified());
    CHECK(c.descriptor->epi_case == EpiCase::B);
    CHECK(canonical_epimorphism(plane, triangle, *c.descriptor) == m);
}

TEST_CASE("doubling epimorphisms") {
    GeometryPtr fano = projective_plane(2).geometry;
    GeometryPtr triangle = ordinary_polygon(3);

    // identity doubles to an automorphism of the double
    GeometryMorphism id = identity_morphism(fano);
    GeometryMorphism did = double_epimorphism(id, false);
    CHECK(is_epimorphism(did));
    CHECK(did.source->point_count() == did.target->point_count());

    // a canonical plane epimorphism doubles onto the ordinary hexagon
    CanonicalEpiDescriptor d;
    d.family = PolygonFamily::plane;
    d.epi_case = EpiCase::A;
    d.base = 0;
    std::vector<int> row = fano->points_of_line(0);
    d.block_first = {row[0]};
    d.block_second = {row[1], row[2]};
    d.target_cycle = first_cycle(triangle, 3);
    GeometryMorphism gt = canonical_plane_epimorphism(fano, triangle, d);
    GeometryMorphism doubled = double_epimorphism(gt, false);
    CHECK(is_epimorphism(doubled));
    CHECK(is_isomorphic(doubled.target, ordinary_polygon(6)));

    // round trip
    UndoubledEpi back = undouble_epimorphism(doubled);
    CHECK(!back.dualized);
    CHECK(back.core == gt);

    // composing with a target duality flips the flag
    GeometryMorphism twisted = double_epimorphism(gt, true);
    CHECK(is_epimorphism(twisted));
    UndoubledEpi tback = undouble_epimorphism(twisted);
    CHECK(tback.dualized);

    // digon epimorphisms double as well
    GeometryMorphism de = digon_epimorphism(digon(3, 3), digon(2, 2), {0, 0, 1}, {0, 1, 1});
    GeometryMorphism dd = double_epimorphism(de, false);
    CHECK(is_epimorphism(dd));
    CHECK(undouble_epimorphism(dd).core == de);

    CHECK_THROWS_AS(double_epimorphism(identity_morphism(grid(3, 3)), false), DomainError);
}

TEST_CASE("digon epimorphisms require surjections") {
    CHECK_THROWS_AS(digon_epimorphism(digon(3, 3), digon(2, 2), {0, 0, 0}, {0, 1, 1}),
                    DomainError);
    GeometryMorphism id = digon_epimorphism(digon(2, 2), digon(2, 2), {0, 1}, {0, 1});
    CHECK(is_epimorphism(id));
}

TEST_CASE("thin quadrangle theorem at (s,sp) = (2,1)") {
    Report rep = thin_polygon_theorem_check(4, 2, 1);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("thin quadrangle theorem at (s,sp) = (2,2) gives the automorphisms") {
    Report rep = thin_polygon_theorem_check(4, 2, 2);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("ordinary hexagon self-epimorphisms are its 12 automorphisms") {
    Report rep = thin_polygon_theorem_check(6, 1, 1);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("theorem reports for the smallest thick plane") {
    Report rep = verify_classification_theorem(projective_plane(2).geometry, 3);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(!rep.incomplete);
}
