#include "polylab/constructors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "polylab/polygon.hpp"

namespace polylab {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

PolygonVerdict require_polygon(const IncidenceGeometry& g, const std::string& who) {
    PolygonVerdict v = classify_polygon(g);
    if (!v.ok()) throw DomainError(who + ": input is not a weak generalized polygon (" +
                                   v.failure->detail + ")");
    return v;
}

void gate(const GeometryPtr& g, int gonality, int s, int t, const std::string& who) {
    if (g->element_count() > IncidenceGeometry::kDistanceCacheLimit) return;  // desk-scale guard
    PolygonVerdict v = classify_polygon(*g);
    if (!v.ok())
        throw ConstructionError(who + ": validation gate failed: " + v.failure->detail);
    const PolygonClass& c = *v.polygon;
    if (c.gonality != gonality || !c.order || c.order->first != s || c.order->second != t)
        throw ConstructionError(who + ": validation gate failed: got gonality " +
                                std::to_string(c.gonality) + ", want " + std::to_string(gonality));
}

}  // namespace

GeometryPtr ordinary_polygon(int m) {
    require(m >= 2, "ordinary_polygon: m must be at least 2");
    IncidenceGeometryBuilder b(m, m);
    for (int i = 0; i < m; ++i) {
        b.add_flag(i, i);
        b.add_flag((i + 1) % m, i);
    }
    return b.build();
}

GeometryPtr digon(int a, int b) {
    require(a >= 2 && b >= 2, "digon: both sides must be at least 2");
    IncidenceGeometryBuilder builder(a, b);
    for (int p = 0; p < a; ++p)
        for (int l = 0; l < b; ++l) builder.add_flag(p, l);
    return builder.build();
}

GeometryPtr grid(int r, int c) {
    require(r >= 2 && c >= 2, "grid: both sides must be at least 2");
    IncidenceGeometryBuilder b(r * c, r + c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            b.add_flag(i * c + j, i);      // row i
            b.add_flag(i * c + j, r + j);  // column j
        }
    return b.build();
}

GeometryPtr dual_grid(int r, int c) { return dual(grid(r, c)); }

int DoubleResult::flag_line(int point, int line) const {
    Flag key{point, line};
    auto it = std::lower_bound(flags.begin(), flags.end(), key);
    if (it == flags.end() || !(*it == key)) return -1;
    return static_cast<int>(it - flags.begin());
}

DoubleResult double_geometry(const GeometryPtr& g) {
    PolygonVerdict v = require_polygon(*g, "double");
    require(v.polygon->order.has_value() && v.polygon->order->first == v.polygon->order->second,
            "double: geometry must have an order of shape (s,s)");

    DoubleResult out;
    out.flags = g->flags();
    int np = g->point_count();
    IncidenceGeometryBuilder b(g->element_count(), static_cast<int>(out.flags.size()));
    for (std::size_t k = 0; k < out.flags.size(); ++k) {
        b.add_flag(out.flags[k].point, static_cast<int>(k));
        b.add_flag(np + out.flags[k].line, static_cast<int>(k));
        b.set_line_label(static_cast<int>(k), "(" + std::to_string(out.flags[k].point) + "," +
                                                  std::to_string(out.flags[k].line) + ")");
    }
    for (int p = 0; p < np; ++p) b.set_point_label(p, g->point_label(p));
    for (int l = 0; l < g->line_count(); ++l) b.set_point_label(np + l, g->line_label(l));
    out.geometry = b.build();
    return out;
}

UndoubleResult undouble(const GeometryPtr& g) {
    PolygonVerdict v = require_polygon(*g, "undouble");
    require(v.polygon->order.has_value(), "undouble: geometry has no order");
    auto [s, t] = *v.polygon->order;
    if (s != 1)
        throw DomainError("undouble: order is (" + std::to_string(s) + "," + std::to_string(t) +
                          "), expected shape (1,s); apply to the dual first");
    require(v.polygon->gonality % 2 == 0 && v.polygon->gonality >= 4,
            "undouble: gonality must be an even number >= 4");

    UndoubleResult out;
    int np = g->point_count();
    out.point_class.resize(np);
    out.core_index.assign(np, -1);
    std::vector<int> class0, class1;
    for (int p = 0; p < np; ++p) {
        auto d = g->distance(point_element(0), point_element(p));
        if (!d) throw ConstructionError("undouble: disconnected input");
        out.point_class[p] = (*d / 2) % 2;
        if (out.point_class[p] == 0) {
            out.core_index[p] = static_cast<int>(class0.size());
            class0.push_back(p);
        } else {
            out.core_index[p] = static_cast<int>(class1.size());
            class1.push_back(p);
        }
    }

    IncidenceGeometryBuilder b(static_cast<int>(class0.size()), static_cast<int>(class1.size()));
    for (int l = 0; l < g->line_count(); ++l) {
        const std::vector<int>& pts = g->points_of_line(l);
        if (pts.size() != 2) throw InternalError("undouble: line degree is not 2");
        int a = pts[0], c = pts[1];
        if (out.point_class[a] == out.point_class[c])
            throw ConstructionError("undouble: line " + std::to_string(l) +
                                    " joins two elements of the same class; not a double");
        if (out.point_class[a] == 1) std::swap(a, c);
        b.add_flag(out.core_index[a], out.core_index[c]);
    }
    for (std::size_t i = 0; i < class0.size(); ++i)
        b.set_point_label(static_cast<int>(i), g->point_label(class0[i]));
    for (std::size_t i = 0; i < class1.size(); ++i)
        b.set_line_label(static_cast<int>(i), g->point_label(class1[i]));
    out.core = b.build();

    // The doubled core must reproduce the input. Cheap and catches any
    // mis-split early.
    DoubleResult redo = double_geometry(out.core);
    std::size_t n0 = class0.size();
    std::vector<int> pm(np), lm(g->line_count());
    for (int p = 0; p < np; ++p)
        pm[p] = out.point_class[p] == 0 ? out.core_index[p]
                                        : static_cast<int>(n0) + out.core_index[p];
    for (int l = 0; l < g->line_count(); ++l) {
        const std::vector<int>& pts = g->points_of_line(l);
        int a = pts[0], c = pts[1];
        if (out.point_class[a] == 1) std::swap(a, c);
        lm[l] = redo.flag_line(out.core_index[a], out.core_index[c]);
        if (lm[l] < 0) throw InternalError("undouble: flag lookup failed");
    }
    GeometryMorphism iso{g, redo.geometry, pm, lm};
    if (verify_morphism(iso)) throw InternalError("undouble: rebuilt double does not match");
    return out;
}

// ---------------------------------------------------------------------------
// Coordinate models

namespace {

std::vector<int> sorted_perm_of(const std::vector<ProjPoint>& pts) {
    std::vector<int> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    return perm;
}

int lookup_point(const std::vector<ProjPoint>& pts, const std::vector<int>& perm,
                 const ProjPoint& x) {
    auto it = std::lower_bound(perm.begin(), perm.end(), x,
                               [&](int a, const ProjPoint& v) { return pts[a] < v; });
    if (it == perm.end() || !(pts[*it] == x)) return -1;
    return *it;
}

}  // namespace

int PlaneModel::point_index(const ProjPoint& x) const {
    return lookup_point(point_coords, sorted_perm_, x);
}

int QuadrangleModel::point_index(const ProjPoint& x) const {
    return lookup_point(point_coords, sorted_perm_, x);
}

PlaneModel projective_plane(int q) {
    require(is_prime_power(q) && q <= 512, "projective_plane: q must be a prime power <= 512");
    const Gf& f = Gf::get(q);

    PlaneModel model;
    model.q = q;
    model.point_coords = enumerate_projective_points(f, 3);
    model.line_coords = model.point_coords;
    model.sorted_perm_ = sorted_perm_of(model.point_coords);

    int n = static_cast<int>(model.point_coords.size());
    IncidenceGeometryBuilder b(n, n);
    for (int li = 0; li < n; ++li) {
        const ProjPoint& a = model.line_coords[li];
        // two independent kernel vectors of the form a0 x0 + a1 x1 + a2 x2
        std::array<std::uint16_t, 7> e1{}, e2{};
        if (a.c[0] != 0) {
            int i0 = f.inv(a.c[0]);
            e1 = {static_cast<std::uint16_t>(f.neg(f.mul(a.c[1], i0))), 1, 0};
            e2 = {static_cast<std::uint16_t>(f.neg(f.mul(a.c[2], i0))), 0, 1};
        } else if (a.c[1] != 0) {
            int i1 = f.inv(a.c[1]);
            e1 = {1, 0, 0};
            e2 = {0, static_cast<std::uint16_t>(f.neg(f.mul(a.c[2], i1))), 1};
        } else {
            e1 = {1, 0, 0};
            e2 = {0, 1, 0};
        }
        for (int lam = 0; lam < q; ++lam) {
            std::array<std::uint16_t, 7> v{};
            for (int i = 0; i < 3; ++i)
                v[i] = static_cast<std::uint16_t>(f.add(e1[i], f.mul(lam, e2[i])));
            int pi = model.point_index(normalize_proj(f, v, 3));
            if (pi < 0) throw InternalError("projective_plane: kernel point not found");
            b.add_flag(pi, li);
        }
        int pi = model.point_index(normalize_proj(f, e2, 3));
        if (pi < 0) throw InternalError("projective_plane: kernel point not found");
        b.add_flag(pi, li);
    }
    for (int i = 0; i < n; ++i) {
        b.set_point_label(i, proj_label(model.point_coords[i]));
        b.set_line_label(i, "[" + proj_label(model.line_coords[i]).substr(1));
    }
    model.geometry = b.build();
    gate(model.geometry, 3, q, q, "projective_plane(" + std::to_string(q) + ")");
    return model;
}

namespace {

int quad_form_q4(const Gf& f, const ProjPoint& x) {
    int v = f.mul(x.c[0], x.c[0]);
    v = f.add(v, f.mul(x.c[1], x.c[2]));
    v = f.add(v, f.mul(x.c[3], x.c[4]));
    return v;
}

int bilinear_q4(const Gf& f, const ProjPoint& x, const ProjPoint& y) {
    int v = f.mul(2 % f.p(), f.mul(x.c[0], y.c[0]));
    v = f.add(v, f.mul(x.c[1], y.c[2]));
    v = f.add(v, f.mul(x.c[2], y.c[1]));
    v = f.add(v, f.mul(x.c[3], y.c[4]));
    v = f.add(v, f.mul(x.c[4], y.c[3]));
    return v;
}

// The full point row of the projective line through x and y, as sorted model
// indices. Used by the quadric constructors after the bilinear-form test says
// the line stays on the quadric.
template <typename Model>
std::vector<int> line_row(const Gf& f, const Model& model, const ProjPoint& x,
                          const ProjPoint& y, int ncoords) {
    std::vector<int> row;
    row.reserve(f.q() + 1);
    for (int lam = 0; lam < f.q(); ++lam) {
        std::array<std::uint16_t, 7> v{};
        for (int i = 0; i < ncoords; ++i)
            v[i] = static_cast<std::uint16_t>(f.add(x.c[i], f.mul(lam, y.c[i])));
        int idx = model.point_index(normalize_proj(f, v, ncoords));
        if (idx < 0) throw InternalError("quadric line leaves the point set");
        row.push_back(idx);
    }
    int idx = model.point_index(y);
    if (idx < 0) throw InternalError("quadric line leaves the point set");
    row.push_back(idx);
    std::sort(row.begin(), row.end());
    return row;
}

}  // namespace

QuadrangleModel q4(int q) {
    require(is_prime_power(q) && q <= 32, "q4: q must be a prime power <= 32");
    const Gf& f = Gf::get(q);

    QuadrangleModel model;
    model.q = q;
    for (const ProjPoint& x : enumerate_projective_points(f, 5))
        if (quad_form_q4(f, x) == 0) model.point_coords.push_back(x);
    model.sorted_perm_ = sorted_perm_of(model.point_coords);

    int n = static_cast<int>(model.point_coords.size());
    std::vector<std::vector<int>> lines;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (bilinear_q4(f, model.point_coords[i], model.point_coords[j]) != 0) continue;
            std::vector<int> row =
                line_row(f, model, model.point_coords[i], model.point_coords[j], 5);
            // keep each line once: only from its two smallest points
            if (row[0] == i && row[1] == j) lines.push_back(std::move(row));
        }
    }
    std::sort(lines.begin(), lines.end());

    IncidenceGeometryBuilder b(n, static_cast<int>(lines.size()));
    for (std::size_t l = 0; l < lines.size(); ++l)
        for (int p : lines[l]) b.add_flag(p, static_cast<int>(l));
    for (int i = 0; i < n; ++i) b.set_point_label(i, proj_label(model.point_coords[i]));
    model.geometry = b.build();
    gate(model.geometry, 4, q, q, "q4(" + std::to_string(q) + ")");
    return model;
}

GeometryMorphism subfield_embedding(int q, int e) {
    require(e >= 1, "subfield_embedding: exponent must be positive");
    long long big = 1;
    for (int i = 0; i < e; ++i) {
        big *= q;
        require(big <= 32, "subfield_embedding: q^e exceeds the q4 bound");
    }
    QuadrangleModel small = q4(q);
    QuadrangleModel large = q4(static_cast<int>(big));
    GfEmbedding phi(Gf::get(q), Gf::get(static_cast<int>(big)));

    GeometryMorphism m;
    m.source = small.geometry;
    m.target = large.geometry;
    m.point_map.resize(small.geometry->point_count());
    for (int p = 0; p < small.geometry->point_count(); ++p) {
        std::array<std::uint16_t, 7> v{};
        for (int i = 0; i < 5; ++i)
            v[i] = static_cast<std::uint16_t>(phi(small.point_coords[p].c[i]));
        int idx = large.point_index(normalize_proj(Gf::get(static_cast<int>(big)), v, 5));
        if (idx < 0) throw InternalError("subfield embedding misses the big quadric");
        m.point_map[p] = idx;
    }
    m.line_map.resize(small.geometry->line_count());
    for (int l = 0; l < small.geometry->line_count(); ++l) {
        const std::vector<int>& pts = small.geometry->points_of_line(l);
        int a = m.point_map[pts[0]], b2 = m.point_map[pts[1]];
        int found = -1;
        for (int cand : large.geometry->lines_of_point(a))
            if (large.geometry->has_flag(b2, cand)) {
                found = cand;
                break;
            }
        if (found < 0) throw InternalError("subfield embedding: image points not collinear");
        m.line_map[l] = found;
    }
    if (verify_morphism(m)) throw InternalError("subfield embedding is not a morphism");
    std::vector<int> sorted_pts = m.point_map;
    std::sort(sorted_pts.begin(), sorted_pts.end());
    if (std::adjacent_find(sorted_pts.begin(), sorted_pts.end()) != sorted_pts.end())
        throw InternalError("subfield embedding is not injective");
    return m;
}

std::vector<int> segre_oval(const PlaneModel& plane, int i, int h) {
    require(i >= 1 && h >= 1 && h <= 9, "segre_oval: need i >= 1 and 1 <= h <= 9");
    require(plane.q == (1 << h), "segre_oval: plane must be over GF(2^h)");
    const Gf& f = Gf::get(plane.q);
    std::vector<int> out;
    for (int t = 0; t < plane.q; ++t) {
        std::array<std::uint16_t, 7> v{1, static_cast<std::uint16_t>(t),
                                       static_cast<std::uint16_t>(f.pow(t, 1LL << i))};
        out.push_back(plane.point_index(normalize_proj(f, v, 3)));
    }
    out.push_back(plane.point_index(normalize_proj(f, {0, 0, 1}, 3)));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool no_three_collinear(const IncidenceGeometry& plane, const std::vector<int>& s) {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (int l = 0; l < plane.line_count(); ++l) {
        int hits = 0;
        for (int p : plane.points_of_line(l))
            if (std::binary_search(sorted.begin(), sorted.end(), p) && ++hits > 2) return false;
    }
    return true;
}

int plane_order_of(const IncidenceGeometry& plane) {
    auto ord = order_of(plane);
    if (!ord) throw DomainError("oval test: plane has no order");
    return ord->first;
}

}  // namespace

bool is_oval(const IncidenceGeometry& plane, const std::vector<int>& s) {
    int q = plane_order_of(plane);
    return static_cast<int>(s.size()) == q + 1 && no_three_collinear(plane, s);
}

bool is_hyperoval(const IncidenceGeometry& plane, const std::vector<int>& s) {
    int q = plane_order_of(plane);
    return static_cast<int>(s.size()) == q + 2 && no_three_collinear(plane, s);
}

int nucleus(const IncidenceGeometry& plane, const std::vector<int>& oval) {
    std::vector<int> sorted = oval;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> common;
    bool first = true;
    for (int l = 0; l < plane.line_count(); ++l) {
        int hits = 0;
        for (int p : plane.points_of_line(l))
            if (std::binary_search(sorted.begin(), sorted.end(), p)) ++hits;
        if (hits != 1) continue;
        if (first) {
            common = plane.points_of_line(l);
            std::sort(common.begin(), common.end());
            first = false;
        } else {
            std::vector<int> next;
            for (int p : plane.points_of_line(l))
                if (std::binary_search(common.begin(), common.end(), p)) next.push_back(p);
            std::sort(next.begin(), next.end());
            common = std::move(next);
        }
        if (common.empty()) break;
    }
    if (first || common.size() != 1)
        throw DomainError("nucleus: tangent lines do not meet in a single point");
    return common[0];
}

GeometryPtr t2_of_oval(const PlaneModel& plane, const std::vector<int>& oval) {
    int q = plane.q;
    const Gf& f = Gf::get(q);
    require(f.p() == 2, "t2_of_oval: q must be even");
    require(is_oval(*plane.geometry, oval), "t2_of_oval: point set is not an oval");

    std::vector<int> oval_sorted = oval;
    std::sort(oval_sorted.begin(), oval_sorted.end());
    int no = static_cast<int>(oval_sorted.size());  // q + 1

    // tangent line of the oval at each of its points
    std::vector<ProjPoint> tangent(no);
    for (int k = 0; k < no; ++k) {
        int x = oval_sorted[k];
        int found = -1;
        for (int l : plane.geometry->lines_of_point(x)) {
            int hits = 0;
            for (int p : plane.geometry->points_of_line(l))
                if (std::binary_search(oval_sorted.begin(), oval_sorted.end(), p)) ++hits;
            if (hits == 1) {
                found = l;
                break;
            }
        }
        if (found < 0) throw InternalError("t2_of_oval: oval point without tangent");
        tangent[k] = plane.line_coords[found];
    }

    // Point set of T2(O): q^3 affine points of PG(3,q) (X0 = 1), then the
    // planes meeting the oval in one point (dual vectors (c : t) with t a
    // tangent trace), then one extra symbol.
    auto affine_index = [q](int x, int y, int z) { return (x * q + y) * q + z; };
    int n_affine = q * q * q;

    std::vector<ProjPoint> plane_vecs;
    for (int k = 0; k < no; ++k) {
        for (int c = 0; c < q; ++c) {
            std::array<std::uint16_t, 7> v{static_cast<std::uint16_t>(c), tangent[k].c[0],
                                           tangent[k].c[1], tangent[k].c[2]};
            plane_vecs.push_back(normalize_proj(f, v, 4));
        }
    }
    std::sort(plane_vecs.begin(), plane_vecs.end());
    plane_vecs.erase(std::unique(plane_vecs.begin(), plane_vecs.end()), plane_vecs.end());
    if (static_cast<int>(plane_vecs.size()) != q * (q + 1))
        throw InternalError("t2_of_oval: unexpected tangent plane count");
    auto plane_point_index = [&](const ProjPoint& v) {
        auto it = std::lower_bound(plane_vecs.begin(), plane_vecs.end(), v);
        if (it == plane_vecs.end() || !(*it == v))
            throw InternalError("t2_of_oval: tangent plane not found");
        return n_affine + static_cast<int>(it - plane_vecs.begin());
    };
    int infinity = n_affine + static_cast<int>(plane_vecs.size());
    int n_points = infinity + 1;

    int n_lines = q * q * (q + 1) + (q + 1);
    IncidenceGeometryBuilder b(n_points, n_lines);
    int next_line = 0;

    // type (a): affine lines through an oval point
    std::vector<char> seen(n_affine);
    for (int k = 0; k < no; ++k) {
        const ProjPoint ox = plane.point_coords[oval_sorted[k]];  // (x1 : x2 : x3)
        std::fill(seen.begin(), seen.end(), 0);
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
                for (int z = 0; z < q; ++z) {
                    int rep = affine_index(x, y, z);
                    if (seen[rep]) continue;
                    int line_id = next_line++;
                    int dot = 0;
                    for (int lam = 0; lam < q; ++lam) {
                        int ax = f.add(x, f.mul(lam, ox.c[0]));
                        int ay = f.add(y, f.mul(lam, ox.c[1]));
                        int az = f.add(z, f.mul(lam, ox.c[2]));
                        int idx = affine_index(ax, ay, az);
                        seen[idx] = 1;
                        b.add_flag(idx, line_id);
                    }
                    // the unique tangent plane containing this line
                    dot = f.add(f.add(f.mul(tangent[k].c[0], x), f.mul(tangent[k].c[1], y)),
                                f.mul(tangent[k].c[2], z));
                    std::array<std::uint16_t, 7> pv{static_cast<std::uint16_t>(f.neg(dot)),
                                                    tangent[k].c[0], tangent[k].c[1],
                                                    tangent[k].c[2]};
                    b.add_flag(plane_point_index(normalize_proj(f, pv, 4)), line_id);
                }
    }

    // type (b): one line per oval point, carrying its tangent planes and the
    // extra symbol
    for (int k = 0; k < no; ++k) {
        int line_id = next_line++;
        for (int c = 0; c < q; ++c) {
            std::array<std::uint16_t, 7> v{static_cast<std::uint16_t>(c), tangent[k].c[0],
                                           tangent[k].c[1], tangent[k].c[2]};
            b.add_flag(plane_point_index(normalize_proj(f, v, 4)), line_id);
        }
        b.add_flag(infinity, line_id);
    }
    if (next_line != n_lines) throw InternalError("t2_of_oval: line count mismatch");

    b.set_point_label(infinity, "inf");
    GeometryPtr g = b.build();
    gate(g, 4, q, q, "t2_of_oval(q=" + std::to_string(q) + ")");
    return g;
}

namespace {

int quad_form_h(const Gf& f, const ProjPoint& x) {
    int v = f.mul(x.c[0], x.c[4]);
    v = f.add(v, f.mul(x.c[1], x.c[5]));
    v = f.add(v, f.mul(x.c[2], x.c[6]));
    v = f.sub(v, f.mul(x.c[3], x.c[3]));
    return v;
}

int bilinear_h(const Gf& f, const ProjPoint& x, const ProjPoint& y) {
    int v = f.add(f.mul(x.c[0], y.c[4]), f.mul(x.c[4], y.c[0]));
    v = f.add(v, f.add(f.mul(x.c[1], y.c[5]), f.mul(x.c[5], y.c[1])));
    v = f.add(v, f.add(f.mul(x.c[2], y.c[6]), f.mul(x.c[6], y.c[2])));
    v = f.sub(v, f.mul(2 % f.p(), f.mul(x.c[3], y.c[3])));
    return v;
}

// Grassmann coordinate p_ab of the line spanned by x and y.
int grass(const Gf& f, const ProjPoint& x, const ProjPoint& y, int a, int b) {
    return f.sub(f.mul(x.c[a], y.c[b]), f.mul(x.c[b], y.c[a]));
}

// Line conditions for the hexagon inside the parabolic quadric, stated on
// Grassmann coordinates: p12 = p34, p54 = p32, p20 = p35, p65 = p30,
// p01 = p36, p46 = p31. The validator gate below arbitrates the
// transcription.
bool hexagon_line(const Gf& f, const ProjPoint& x, const ProjPoint& y) {
    if (grass(f, x, y, 1, 2) != grass(f, x, y, 3, 4)) return false;
    if (grass(f, x, y, 5, 4) != grass(f, x, y, 3, 2)) return false;
    if (grass(f, x, y, 2, 0) != grass(f, x, y, 3, 5)) return false;
    if (grass(f, x, y, 6, 5) != grass(f, x, y, 3, 0)) return false;
    if (grass(f, x, y, 0, 1) != grass(f, x, y, 3, 6)) return false;
    if (grass(f, x, y, 4, 6) != grass(f, x, y, 3, 1)) return false;
    return true;
}

}  // namespace

GeometryPtr split_cayley_hexagon(int q) {
    require(is_prime_power(q) && q <= 5,
            "split_cayley_hexagon: q must be a prime power <= 5 (desk scale)");
    const Gf& f = Gf::get(q);

    QuadrangleModel model;  // reused as a generic quadric point index
    model.q = q;
    for (const ProjPoint& x : enumerate_projective_points(f, 7))
        if (quad_form_h(f, x) == 0) model.point_coords.push_back(x);
    {
        std::vector<int> perm(model.point_coords.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            return model.point_coords[a] < model.point_coords[b];
        });
        model.sorted_perm_ = std::move(perm);
    }

    int n = static_cast<int>(model.point_coords.size());
    std::vector<std::vector<int>> lines;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const ProjPoint& x = model.point_coords[i];
            const ProjPoint& y = model.point_coords[j];
            if (bilinear_h(f, x, y) != 0) continue;
            if (!hexagon_line(f, x, y)) continue;
            std::vector<int> row = line_row(f, model, x, y, 7);
            if (row[0] == i && row[1] == j) lines.push_back(std::move(row));
        }
    }
    std::sort(lines.begin(), lines.end());

    IncidenceGeometryBuilder b(n, static_cast<int>(lines.size()));
    for (std::size_t l = 0; l < lines.size(); ++l)
        for (int p : lines[l]) b.add_flag(p, static_cast<int>(l));
    for (int i = 0; i < n; ++i) b.set_point_label(i, proj_label(model.point_coords[i]));
    GeometryPtr g = b.build();
    gate(g, 6, q, q, "split_cayley_hexagon(" + std::to_string(q) + ")");
    return g;
}

GeometryPtr thin_hexagon_from_plane(const GeometryPtr& plane) {
    PolygonVerdict v = require_polygon(*plane, "thin_hexagon_from_plane");
    require(v.polygon->gonality == 3 && v.polygon->order &&
                v.polygon->order->first == v.polygon->order->second,
            "thin_hexagon_from_plane: input must be a projective plane (order (s,s))");
    return dual(double_geometry(plane).geometry);
}

PlaneFromHexResult plane_from_thin_hexagon(const GeometryPtr& hexagon) {
    PolygonVerdict v = require_polygon(*hexagon, "plane_from_thin_hexagon");
    require(v.polygon->gonality == 6 && v.polygon->order && v.polygon->order->second == 1,
            "plane_from_thin_hexagon: input must be a thin hexagon of order (s,1)");

    const IncidenceGeometry& g = *hexagon;
    PlaneFromHexResult out;
    out.line_class.resize(g.line_count());
    out.class_index.assign(g.line_count(), -1);
    std::vector<int> class0, class1;
    for (int l = 0; l < g.line_count(); ++l) {
        auto d = g.line_graph_distance(0, l);
        if (!d) throw ConstructionError("plane_from_thin_hexagon: disconnected input");
        out.line_class[l] = *d % 2;
        if (out.line_class[l] == 0) {
            out.class_index[l] = static_cast<int>(class0.size());
            class0.push_back(l);
        } else {
            out.class_index[l] = static_cast<int>(class1.size());
            class1.push_back(l);
        }
    }

    IncidenceGeometryBuilder b(static_cast<int>(class0.size()), static_cast<int>(class1.size()));
    for (int p = 0; p < g.point_count(); ++p) {
        const std::vector<int>& ls = g.lines_of_point(p);
        if (ls.size() != 2) throw InternalError("plane_from_thin_hexagon: point degree is not 2");
        int a = ls[0], c = ls[1];
        if (out.line_class[a] == out.line_class[c])
            throw ConstructionError(
                "plane_from_thin_hexagon: concurrent lines in the same parity class");
        if (out.line_class[a] == 1) std::swap(a, c);
        b.add_flag(out.class_index[a], out.class_index[c]);
    }
    out.plane = b.build();

    PolygonVerdict pv = classify_polygon(*out.plane);
    if (!pv.ok() || pv.polygon->gonality != 3)
        throw ConstructionError("plane_from_thin_hexagon: line classes do not form a plane");
    return out;
}

}  // namespace polylab
