#include "polylab/isomorphism.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace polylab {

namespace {

// Backtracker over unified vertex ids with bitmask domains per kind.
// Assignments preserve adjacency and non-adjacency, so leaves are exactly the
// isomorphisms.
struct IsoSearch {
    const IncidenceGeometry& g;
    const IncidenceGeometry& h;
    int gp, gl, hp, hl;
    std::vector<std::uint64_t> h_adj;  // h vid -> mask over opposite-kind indices
    std::vector<int> order;            // g vids in BFS forest order
    std::vector<std::uint64_t> dom;    // g vid -> mask over same-kind h indices
    std::vector<int> img;
    std::uint64_t used_pts = 0, used_lns = 0;
    bool first_only;
    std::vector<GeometryMorphism> out;
    GeometryPtr gp_ptr, hp_ptr;

    IsoSearch(const GeometryPtr& gg, const GeometryPtr& hh, bool first)
        : g(*gg), h(*hh), gp_ptr(gg), hp_ptr(hh), first_only(first) {
        gp = g.point_count();
        gl = g.line_count();
        hp = h.point_count();
        hl = h.line_count();
        h_adj.resize(hp + hl);
        for (int p = 0; p < hp; ++p) {
            std::uint64_t m = 0;
            for (int l : h.lines_of_point(p)) m |= 1ULL << l;
            h_adj[p] = m;
        }
        for (int l = 0; l < hl; ++l) {
            std::uint64_t m = 0;
            for (int p : h.points_of_line(l)) m |= 1ULL << p;
            h_adj[hp + l] = m;
        }

        // BFS forest order over g
        int n = g.vertex_count();
        std::vector<char> visited(n, 0);
        order.reserve(n);
        for (int s = 0; s < n; ++s) {
            if (visited[s]) continue;
            std::vector<int> queue{s};
            visited[s] = 1;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                int u = queue[qi];
                order.push_back(u);
                for (int w : g.vertex_neighbors(u))
                    if (!visited[w]) {
                        visited[w] = 1;
                        queue.push_back(w);
                    }
            }
        }

        // initial domains: same kind, same degree
        dom.resize(n);
        img.assign(n, -1);
        for (int v = 0; v < n; ++v) {
            std::uint64_t m = 0;
            bool is_point = v < gp;
            int deg = static_cast<int>(g.vertex_neighbors(v).size());
            int count = is_point ? hp : hl;
            for (int w = 0; w < count; ++w) {
                int hdeg = std::popcount(h_adj[is_point ? w : hp + w]);
                if (hdeg == deg) m |= 1ULL << w;
            }
            dom[v] = m;
        }
    }

    bool vertex_is_point(int v) const { return v < gp; }

    void emit() {
        GeometryMorphism m;
        m.source = gp_ptr;
        m.target = hp_ptr;
        m.point_map.assign(img.begin(), img.begin() + gp);
        m.line_map.assign(img.begin() + gp, img.end());
        out.push_back(std::move(m));
    }

    bool dfs(std::size_t pos) {
        if (pos == order.size()) {
            emit();
            return first_only;
        }
        int v = order[pos];
        bool vp = vertex_is_point(v);
        std::uint64_t cands = dom[v] & ~(vp ? used_pts : used_lns);
        // adjacency with already-assigned neighbors, both directions
        for (int u : g.vertex_neighbors(v))
            if (img[u] >= 0) cands &= h_adj[vertex_is_point(u) ? img[u] : hp + img[u]];
        const std::vector<int>& v_nbrs = g.vertex_neighbors(v);
        while (cands) {
            int w = std::countr_zero(cands);
            cands &= cands - 1;
            // adjacency with assigned neighbors is already in `cands`;
            // non-adjacency needs an explicit check
            bool ok = true;
            std::uint64_t w_adj = h_adj[vp ? w : hp + w];
            for (std::size_t i = 0; i < pos && ok; ++i) {
                int u = order[i];
                if (vertex_is_point(u) == vp) continue;  // same kind: never adjacent
                if (std::binary_search(v_nbrs.begin(), v_nbrs.end(), u)) continue;
                if ((w_adj >> img[u]) & 1) ok = false;
            }
            if (!ok) continue;
            img[v] = w;
            if (vp)
                used_pts |= 1ULL << w;
            else
                used_lns |= 1ULL << w;
            if (dfs(pos + 1)) return true;
            img[v] = -1;
            if (vp)
                used_pts &= ~(1ULL << w);
            else
                used_lns &= ~(1ULL << w);
        }
        return false;
    }
};

std::vector<GeometryMorphism> run_iso(const GeometryPtr& g, const GeometryPtr& h, bool first) {
    std::vector<GeometryMorphism> out;
    if (g->point_count() != h->point_count() || g->line_count() != h->line_count() ||
        g->flag_count() != h->flag_count())
        return out;
    if (h->point_count() > 64 || h->line_count() > 64)
        throw DomainError("isomorphism search supports at most 64 points and 64 lines");
    if (g->vertex_count() == 0) {
        GeometryMorphism m;
        m.source = g;
        m.target = h;
        out.push_back(m);
        return out;
    }
    IsoSearch search(g, h, first);
    search.dfs(0);
    out = std::move(search.out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<GeometryMorphism> all_isomorphisms(const GeometryPtr& g, const GeometryPtr& h) {
    return run_iso(g, h, false);
}

std::optional<GeometryMorphism> find_isomorphism(const GeometryPtr& g, const GeometryPtr& h) {
    auto v = run_iso(g, h, true);
    if (v.empty()) return std::nullopt;
    return v.front();
}

std::vector<GeometryMorphism> all_automorphisms(const GeometryPtr& g) {
    return all_isomorphisms(g, g);
}

std::optional<GeometryMorphism> find_duality(const GeometryPtr& g) {
    return find_isomorphism(g, dual(g));
}

}  // namespace polylab
