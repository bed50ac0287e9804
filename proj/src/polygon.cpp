#include "polylab/polygon.hpp"

#include <algorithm>
#include <deque>

namespace polylab {

namespace {

// Shortest cycle through `root` found by BFS: scan for a non-tree edge
// between two visited vertices; d(u) + d(w) + 1 bounds the cycle through the
// root, and the minimum over all roots is the girth.
struct RootCycle {
    int length = -1;
    std::vector<int> cycle;  // vertex ids, in cycle order
};

RootCycle shortest_cycle_through(const IncidenceGeometry& g, int root, int upper_bound) {
    int n = g.vertex_count();
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> queue;
    dist[root] = 0;
    queue.push_back(root);
    RootCycle best;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (upper_bound > 0 && 2 * dist[u] + 1 >= upper_bound && best.length > 0) break;
        for (int w : g.vertex_neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if (w != parent[u] && parent[w] != u) {
                int len = dist[u] + dist[w] + 1;
                if (best.length < 0 || len < best.length) {
                    // Reconstruct: root..u plus root..w, joined by edge (u,w).
                    std::vector<int> pu, pw;
                    for (int x = u; x >= 0; x = parent[x]) pu.push_back(x);
                    for (int x = w; x >= 0; x = parent[x]) pw.push_back(x);
                    // pu/pw end at root; drop the shared tail.
                    while (pu.size() > 1 && pw.size() > 1 &&
                           pu[pu.size() - 2] == pw[pw.size() - 2]) {
                        pu.pop_back();
                        pw.pop_back();
                    }
                    std::vector<int> cyc(pu.rbegin(), pu.rend());
                    cyc.insert(cyc.end(), pw.begin(), pw.end() - 1);
                    // The walk may not be simple (the cross edge can close a
                    // shorter odd-ish walk); only keep genuine cycles.
                    std::vector<int> sorted = cyc;
                    std::sort(sorted.begin(), sorted.end());
                    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
                        best.length = static_cast<int>(cyc.size());
                        best.cycle = std::move(cyc);
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace

std::pair<int, std::vector<int>> incidence_girth(const IncidenceGeometry& g) {
    int best = -1;
    std::vector<int> cycle;
    for (int v = 0; v < g.vertex_count(); ++v) {
        RootCycle rc = shortest_cycle_through(g, v, best);
        if (rc.length > 0 && (best < 0 || rc.length < best)) {
            best = rc.length;
            cycle = std::move(rc.cycle);
        }
    }
    return {best, cycle};
}

std::pair<int, bool> incidence_diameter(const IncidenceGeometry& g) {
    int diameter = -1;
    bool connected = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> local;
        const std::vector<int>* row = g.distance_row(v);
        if (!row) {
            local = g.compute_distance_row(v);
            row = &local;
        }
        for (int d : *row) {
            if (d < 0)
                connected = false;
            else
                diameter = std::max(diameter, d);
        }
    }
    return {diameter, connected};
}

std::optional<std::pair<int, int>> order_of(const IncidenceGeometry& g) {
    if (g.point_count() == 0 || g.line_count() == 0) return std::nullopt;
    int ldeg = g.line_degree(0);
    for (int l = 1; l < g.line_count(); ++l)
        if (g.line_degree(l) != ldeg) return std::nullopt;
    int pdeg = g.point_degree(0);
    for (int p = 1; p < g.point_count(); ++p)
        if (g.point_degree(p) != pdeg) return std::nullopt;
    if (ldeg < 1 || pdeg < 1) return std::nullopt;
    return std::make_pair(ldeg - 1, pdeg - 1);
}

PolygonVerdict classify_polygon(const IncidenceGeometry& g) {
    if (g.point_count() == 0 && g.line_count() == 0) throw EmptyGeometryError();

    PolygonVerdict verdict;

    // Firmness: every element incident with at least two others.
    for (int p = 0; p < g.point_count(); ++p) {
        if (g.point_degree(p) < 2) {
            verdict.failure = NotPolygonInfo{NotPolygonInfo::Reason::not_firm,
                                             {point_element(p)},
                                             -1,
                                             -1,
                                             "point " + std::to_string(p) + " has degree " +
                                                 std::to_string(g.point_degree(p))};
            return verdict;
        }
    }
    for (int l = 0; l < g.line_count(); ++l) {
        if (g.line_degree(l) < 2) {
            verdict.failure = NotPolygonInfo{NotPolygonInfo::Reason::not_firm,
                                             {line_element(l)},
                                             -1,
                                             -1,
                                             "line " + std::to_string(l) + " has degree " +
                                                 std::to_string(g.line_degree(l))};
            return verdict;
        }
    }

    std::vector<int> from0 = g.compute_distance_row(0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (from0[v] < 0) {
            verdict.failure =
                NotPolygonInfo{NotPolygonInfo::Reason::disconnected,
                               {g.element_of(0), g.element_of(v)},
                               -1,
                               -1,
                               "no path between " + to_string(g.element_of(0)) + " and " +
                                   to_string(g.element_of(v))};
            return verdict;
        }
    }

    auto [diameter, connected] = incidence_diameter(g);
    (void)connected;
    auto [girth, cycle] = incidence_girth(g);
    if (girth < 0 || girth != 2 * diameter) {
        NotPolygonInfo info;
        info.reason = NotPolygonInfo::Reason::girth_defect;
        info.girth = girth;
        info.diameter = diameter;
        for (int vid : cycle) info.witness.push_back(g.element_of(vid));
        info.detail = "girth " + std::to_string(girth) + " != 2 * diameter " +
                      std::to_string(diameter) +
                      " (cycle gives two distinct short paths between its endpoints)";
        verdict.failure = std::move(info);
        return verdict;
    }

    PolygonClass cls;
    cls.gonality = diameter;
    cls.order = order_of(g);
    cls.is_firm = true;
    bool thick = true;
    for (int p = 0; p < g.point_count() && thick; ++p)
        if (g.point_degree(p) < 3) thick = false;
    for (int l = 0; l < g.line_count() && thick; ++l)
        if (g.line_degree(l) < 3) thick = false;
    cls.is_thick = thick;
    cls.is_thin = !thick;
    cls.is_weak_generalized_polygon = true;
    verdict.polygon = cls;
    return verdict;
}

std::vector<Element> gonality_witness(const IncidenceGeometry& g, int m) {
    PolygonVerdict v = classify_polygon(g);
    if (!v.ok() || v.polygon->gonality != m)
        throw ContractViolation("gonality_witness: geometry is not a weak generalized " +
                                std::to_string(m) + "-gon");
    auto [girth, cycle] = incidence_girth(g);
    if (girth != 2 * m || static_cast<int>(cycle.size()) != 2 * m)
        throw InternalError("gonality_witness: girth cycle has unexpected length");
    // Rotate so the cycle starts at a point.
    std::size_t start = 0;
    while (start < cycle.size() && cycle[start] >= g.point_count()) ++start;
    std::vector<Element> out;
    out.reserve(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i)
        out.push_back(g.element_of(cycle[(start + i) % cycle.size()]));
    return out;
}

}  // namespace polylab
