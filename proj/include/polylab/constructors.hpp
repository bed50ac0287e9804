#pragma once

#include <utility>
#include <vector>

#include "polylab/geometry.hpp"
#include "polylab/morphism.hpp"
#include "polylab/projective.hpp"

namespace polylab {

/// Ordinary m-gon: m points, m lines, incidence graph a 2m-cycle.
GeometryPtr ordinary_polygon(int m);

/// a points, b lines, every point on every line. Requires a, b >= 2.
GeometryPtr digon(int a, int b);

/// r*c cell points, r row lines and c column lines; each point on exactly
/// two lines. Weak generalized quadrangle; has an order iff r == c.
GeometryPtr grid(int r, int c);
GeometryPtr dual_grid(int r, int c);

struct DoubleResult {
    GeometryPtr geometry;
    /// double line index -> originating flag, in (point, line) order
    std::vector<Flag> flags;
    int flag_line(int point, int line) const;  // -1 when not a flag
};

/// Double of a weak polygon of order (s,s): points are the elements of g,
/// lines are its flags. Result has order (1,s).
DoubleResult double_geometry(const GeometryPtr& g);

struct UndoubleResult {
    GeometryPtr core;
    /// class of each point of the doubled geometry: 0 = point of core,
    /// 1 = line of core
    std::vector<int> point_class;
    /// index of each doubled-geometry point inside its class
    std::vector<int> core_index;
};

/// Splits the points of a thin 2n-gon of order (1,s) into two classes by
/// parity of half the distance from point 0 and reads off the underlying
/// n-gon. double(core) reproduces the input exactly.
UndoubleResult undouble(const GeometryPtr& g);

struct PlaneModel {
    GeometryPtr geometry;
    int q = 0;
    std::vector<ProjPoint> point_coords;
    std::vector<ProjPoint> line_coords;  // dual coordinates
    int point_index(const ProjPoint& x) const;

private:
    friend PlaneModel projective_plane(int);
    std::vector<int> sorted_perm_;
};

/// Classical projective plane PG(2,q): q^2+q+1 points and lines, order (q,q).
PlaneModel projective_plane(int q);

struct QuadrangleModel {
    GeometryPtr geometry;
    int q = 0;
    std::vector<ProjPoint> point_coords;
    int point_index(const ProjPoint& x) const;

private:
    friend QuadrangleModel q4(int);
    friend struct HexagonModelBuilder;
    std::vector<int> sorted_perm_;
};

/// Parabolic quadrangle Q(4,q): points of the quadric
/// X0^2 + X1 X2 + X3 X4 = 0 in PG(4,q), lines fully contained in it.
/// Generalized quadrangle of order (q,q).
QuadrangleModel q4(int q);

/// Injective morphism q4(q) -> q4(q^e) induced by the subfield inclusion.
GeometryMorphism subfield_embedding(int q, int e);

/// {(1 : t : t^(2^i))} plus (0:0:1) inside projective_plane(2^h), as sorted
/// point indices. An oval iff gcd(i,h) = 1.
std::vector<int> segre_oval(const PlaneModel& plane, int i, int h);

/// |S| = q+1 and no three points collinear.
bool is_oval(const IncidenceGeometry& plane, const std::vector<int>& s);

/// |S| = q+2 and no three points collinear.
bool is_hyperoval(const IncidenceGeometry& plane, const std::vector<int>& s);

/// The common point of all tangent lines of the oval; DomainError when the
/// tangents do not concur (odd characteristic).
int nucleus(const IncidenceGeometry& plane, const std::vector<int>& oval);

/// Tits quadrangle T2(O) for an oval O in PG(2,q), q even, embedded as the
/// hyperplane X0 = 0 of PG(3,q). Generalized quadrangle of order (q,q).
GeometryPtr t2_of_oval(const PlaneModel& plane, const std::vector<int>& oval);

/// Split Cayley hexagon H(q): points of the parabolic quadric
/// X0 X4 + X1 X5 + X2 X6 = X3^2 in PG(6,q); lines are the quadric lines whose
/// Grassmann coordinates satisfy six linear conditions. The construction is
/// gated by the polygon validator: a wrong condition set raises
/// ConstructionError instead of shipping a bad geometry.
/// Requires q in {2,3} (larger prime powers up to 8 accepted).
GeometryPtr split_cayley_hexagon(int q);

/// Thin hexagon of order (s,1) attached to a projective plane of order s:
/// the dual of the double.
GeometryPtr thin_hexagon_from_plane(const GeometryPtr& plane);

struct PlaneFromHexResult {
    GeometryPtr plane;
    /// hexagon line index -> (class, index in class); class 0 lines are the
    /// plane's points, class 1 lines its lines
    std::vector<int> line_class;
    std::vector<int> class_index;
};

/// Inverse of thin_hexagon_from_plane: partitions the hexagon's lines into
/// two classes by line-graph-distance parity; class-0 lines become points,
/// class-1 lines become lines, incidence is concurrence.
PlaneFromHexResult plane_from_thin_hexagon(const GeometryPtr& hexagon);

}  // namespace polylab
