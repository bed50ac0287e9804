#pragma once

// Test-only oracles: small, independent re-implementations used to check the
// library's answers. They deliberately avoid the production code paths.

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <vector>

#include "polylab/geometry.hpp"

namespace oracles {

// plain adjacency-list BFS, nothing shared with IncidenceGeometry's cache
inline std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

inline std::vector<std::vector<int>> incidence_adjacency(const polylab::IncidenceGeometry& g) {
    int np = g.point_count();
    std::vector<std::vector<int>> adj(np + g.line_count());
    for (int l = 0; l < g.line_count(); ++l)
        for (int p : g.points_of_line(l)) {
            adj[p].push_back(np + l);
            adj[np + l].push_back(p);
        }
    return adj;
}

// girth by edge-deletion BFS: for every edge, the shortest alternative path
inline int girth(const std::vector<std::vector<int>>& adj) {
    int best = -1;
    int n = static_cast<int>(adj.size());
    for (int u = 0; u < n; ++u) {
        for (int v : adj[u]) {
            if (v < u) continue;
            // BFS from u to v avoiding the edge (u,v)
            std::vector<int> dist(n, -1);
            std::deque<int> queue{u};
            dist[u] = 0;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                for (int w : adj[x]) {
                    if (x == u && w == v) continue;
                    if (x == v && w == u) continue;
                    if (dist[w] < 0) {
                        dist[w] = dist[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if (dist[v] >= 0 && (best < 0 || dist[v] + 1 < best)) best = dist[v] + 1;
        }
    }
    return best;
}

inline int diameter(const std::vector<std::vector<int>>& adj) {
    int best = -1;
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int d : bfs(adj, static_cast<int>(v))) best = std::max(best, d);
    return best;
}

// Fano plane built from 3-bit vectors: lines are the XOR-closed triples.
struct TinyGeometry {
    int points;
    std::vector<std::vector<int>> lines;
};

inline TinyGeometry fano_from_xor() {
    TinyGeometry g;
    g.points = 7;  // point i <-> vector i+1
    std::set<std::vector<int>> lines;
    for (int a = 1; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b) {
            int c = a ^ b;
            std::vector<int> line{a - 1, b - 1, c - 1};
            std::sort(line.begin(), line.end());
            lines.insert(line);
        }
    g.lines.assign(lines.begin(), lines.end());
    return g;
}

// The number of point permutations mapping lines to lines.
inline long long collineation_count(const polylab::IncidenceGeometry& g) {
    std::set<std::vector<int>> lineset;
    for (int l = 0; l < g.line_count(); ++l) {
        std::vector<int> row = g.points_of_line(l);
        std::sort(row.begin(), row.end());
        lineset.insert(row);
    }
    std::vector<int> perm(g.point_count());
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        for (int l = 0; l < g.line_count() && ok; ++l) {
            std::vector<int> image;
            for (int p : g.points_of_line(l)) image.push_back(perm[p]);
            std::sort(image.begin(), image.end());
            if (!lineset.count(image)) ok = false;
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

inline long long surjection_count(int n, int k) {
    long long count = 0;
    std::vector<int> cur(n, 0);
    while (true) {
        std::vector<char> hit(k, 0);
        for (int v : cur) hit[v] = 1;
        if (std::find(hit.begin(), hit.end(), 0) == hit.end()) ++count;
        int i = 0;
        while (i < n && ++cur[i] == k) cur[i++] = 0;
        if (i == n) break;
    }
    return count;
}

}  // namespace oracles
