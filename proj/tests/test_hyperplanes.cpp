#include <doctest.h>

#include <algorithm>

#include "polylab/constructors.hpp"
#include "polylab/hyperplanes.hpp"
#include "polylab/polygon.hpp"

using namespace polylab;

namespace {

std::vector<int> perp_of(const IncidenceGeometry& g, int x) {
    std::vector<int> out{x};
    for (int l : g.lines_of_point(x))
        for (int p : g.points_of_line(l))
            if (p != x) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("perps are type-B hyperplanes") {
    GeometryPtr w2 = q4(2).geometry;
    std::vector<int> perp = perp_of(*w2, 0);
    CHECK(perp.size() == 7);
    auto [ok, witness] = is_geometric_hyperplane(w2, perp);
    CHECK(ok);
    CHECK(!witness.has_value());
    HyperplaneVerdict v = classify_hyperplane(w2, perp);
    CHECK(v.kind == HyperplaneKind::B);
    CHECK(*v.center == 0);
}

TEST_CASE("degenerate sets are not hyperplanes") {
    GeometryPtr w2 = q4(2).geometry;
    std::vector<int> all(w2->point_count());
    for (int i = 0; i < w2->point_count(); ++i) all[i] = i;
    CHECK(!is_geometric_hyperplane(w2, all).first);
    CHECK(!is_geometric_hyperplane(w2, {}).first);
    auto [ok, witness] = is_geometric_hyperplane(w2, {0});
    CHECK(!ok);
    CHECK(witness.has_value());  // some line misses the single point entirely
    CHECK(classify_hyperplane(w2, {0}).kind == HyperplaneKind::not_hyperplane);
}

TEST_CASE("exhaustive enumeration on W(2)") {
    GeometryPtr w2 = q4(2).geometry;
    auto found = enumerate_hyperplanes(w2);
    int count_a = 0, count_b = 0, count_c = 0;
    for (const auto& [pts, verdict] : found) {
        REQUIRE(verdict.kind != HyperplaneKind::not_hyperplane);
        if (verdict.kind == HyperplaneKind::A) {
            ++count_a;
            CHECK(pts.size() == 5);  // ovoid size st + 1
        } else if (verdict.kind == HyperplaneKind::B) {
            ++count_b;
        } else {
            ++count_c;
            CHECK(*verdict.suborder == std::make_pair(2, 1));
            // the induced geometry really is a (2,1) quadrangle
            std::vector<int> full_lines;
            for (int l = 0; l < w2->line_count(); ++l) {
                bool inside = true;
                for (int p : w2->points_of_line(l))
                    if (!std::binary_search(pts.begin(), pts.end(), p)) inside = false;
                if (inside) full_lines.push_back(l);
            }
            InducedSubgeometry sub = induced_subgeometry(*w2, pts, full_lines);
            PolygonVerdict pv = classify_polygon(*sub.geometry);
            REQUIRE(pv.ok());
            CHECK(*pv.polygon->order == std::make_pair(2, 1));
        }
    }
    CHECK(count_b == 15);  // one perp per point
    CHECK(count_a > 0);
    CHECK(count_c > 0);
}

TEST_CASE("classification is total on Q(4,3) hyperplanes") {
    GeometryPtr g = q4(3).geometry;
    auto found = enumerate_hyperplanes(g);
    int count_b = 0;
    for (const auto& [pts, verdict] : found) {
        (void)pts;
        REQUIRE(verdict.kind != HyperplaneKind::not_hyperplane);
        if (verdict.kind == HyperplaneKind::B) ++count_b;
        if (verdict.kind == HyperplaneKind::C) CHECK(*verdict.suborder == std::make_pair(3, 1));
        if (verdict.kind == HyperplaneKind::A) CHECK(pts.size() == 10);
    }
    CHECK(count_b == 40);
}

TEST_CASE("grids inside W(2) are type C") {
    GeometryPtr w2 = q4(2).geometry;
    auto found = enumerate_hyperplanes(w2);
    for (const auto& [pts, verdict] : found)
        if (verdict.kind == HyperplaneKind::C) {
            CHECK(pts.size() == 9);
            return;
        }
    FAIL("no type-C hyperplane found in W(2)");
}

TEST_CASE("thin type-C corollary trace") {
    CorollaryTrace t22 = thin_type_c_corollary_check(2, 2);
    CHECK(t22.contradiction);
    CHECK(!t22.degenerate);

    CorollaryTrace t11 = thin_type_c_corollary_check(1, 1);
    CHECK(!t11.contradiction);
    CHECK(t11.degenerate);

    CorollaryTrace t33 = thin_type_c_corollary_check(3, 3);
    CHECK(t33.contradiction);

    CorollaryTrace t24 = thin_type_c_corollary_check(2, 4);
    CHECK(t24.contradiction);  // suborder (2,2) is thick, so never thin
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(enumerate_hyperplanes(split_cayley_hexagon(2)), DomainError);  // not a GQ
    CHECK_THROWS_AS(enumerate_hyperplanes(q4(4).geometry), TruncatedError);        // 85 points
}
