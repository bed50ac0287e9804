#include "polylab/epi_search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <future>
#include <thread>

#include "polylab/isomorphism.hpp"
#include "polylab/polygon.hpp"

namespace polylab {

namespace {

using MapPair = std::pair<std::vector<int>, std::vector<int>>;

// Static data shared by all workers of one enumeration.
struct Problem {
    GeometryPtr src, tgt;
    int sp, sl, tp, tl;
    std::vector<std::vector<int>> s_adj;  // source vid -> source vids
    // target vid -> incidence mask over the opposite kind's indices
    std::vector<std::uint64_t> t_adj;
    std::vector<int> order;  // source vids, BFS forest from a max-degree point
    bool saturation = false;
    std::uint64_t full_pts = 0, full_lns = 0;

    bool is_point(int vid) const { return vid < sp; }
    std::uint64_t t_mask(bool point_kind, int idx) const {
        return t_adj[point_kind ? idx : tp + idx];
    }
};

Problem build_problem(const GeometryPtr& src, const GeometryPtr& tgt, bool saturation) {
    Problem pr;
    pr.src = src;
    pr.tgt = tgt;
    pr.sp = src->point_count();
    pr.sl = src->line_count();
    pr.tp = tgt->point_count();
    pr.tl = tgt->line_count();
    if (pr.tp > 64 || pr.tl > 64)
        throw DomainError("epimorphism search supports targets with at most 64 points and lines");
    pr.saturation = saturation;
    pr.full_pts = pr.tp == 64 ? ~0ULL : (1ULL << pr.tp) - 1;
    pr.full_lns = pr.tl == 64 ? ~0ULL : (1ULL << pr.tl) - 1;

    int n = src->vertex_count();
    pr.s_adj.resize(n);
    for (int v = 0; v < n; ++v) pr.s_adj[v] = src->vertex_neighbors(v);

    pr.t_adj.resize(pr.tp + pr.tl);
    for (int p = 0; p < pr.tp; ++p) {
        std::uint64_t m = 0;
        for (int l : tgt->lines_of_point(p)) m |= 1ULL << l;
        pr.t_adj[p] = m;
    }
    for (int l = 0; l < pr.tl; ++l) {
        std::uint64_t m = 0;
        for (int p : tgt->points_of_line(l)) m |= 1ULL << p;
        pr.t_adj[pr.tp + l] = m;
    }

    // BFS order rooted at the lowest-index point of maximum degree, so the
    // first frontier is its pencil; further roots cover disconnected parts.
    std::vector<char> visited(n, 0);
    pr.order.reserve(n);
    int root = 0;
    for (int p = 1; p < pr.sp; ++p)
        if (src->point_degree(p) > src->point_degree(root)) root = p;
    auto bfs_from = [&](int start) {
        std::vector<int> queue{start};
        visited[start] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            pr.order.push_back(u);
            for (int w : pr.s_adj[u])
                if (!visited[w]) {
                    visited[w] = 1;
                    queue.push_back(w);
                }
        }
    };
    if (pr.sp > 0) bfs_from(root);
    for (int v = 0; v < n; ++v)
        if (!visited[v]) bfs_from(v);
    return pr;
}

// One worker's mutable search state. Domain edits are trailed for undo;
// support counters (how many source vertices can still reach each target
// element) implement the surjectivity pruning: a leaf is reached only when
// every target element keeps support, so every leaf is an epimorphism.
class Worker {
public:
    Worker(const Problem& pr, std::atomic<std::uint64_t>* nodes, std::uint64_t budget)
        : pr_(pr), nodes_(nodes), budget_(budget) {
        int n = pr.sp + pr.sl;
        dom_.resize(n);
        for (int v = 0; v < n; ++v) dom_[v] = pr.is_point(v) ? pr.full_pts : pr.full_lns;
        support_pt_.assign(pr.tp, pr.sp);
        support_ln_.assign(pr.tl, pr.sl);
        dirty_.assign(n, 0);
    }

    // Initial propagation; false when the instance is already infeasible.
    bool establish() {
        for (int v = 0; v < pr_.sp + pr_.sl; ++v) push_dirty(v);
        return flush();
    }

    std::uint64_t domain(int vid) const { return dom_[vid]; }

    // Pre-split restriction of the first variable. Goes through set_domain so
    // the support counters stay exact; the trail entry is never undone.
    bool restrict_root(int vid, std::uint64_t mask) {
        return set_domain(vid, dom_[vid] & mask);
    }

    template <typename Sink>
    void enumerate(Sink&& sink) {
        dfs(0, sink);
    }

private:
    const Problem& pr_;
    std::atomic<std::uint64_t>* nodes_;
    std::uint64_t budget_;
    std::uint64_t local_nodes_ = 0;

    std::vector<std::uint64_t> dom_;
    std::vector<int> support_pt_, support_ln_;
    std::vector<std::pair<int, std::uint64_t>> trail_;
    std::vector<int> worklist_;
    std::vector<char> dirty_;
    bool failed_ = false;

    void push_dirty(int v) {
        if (!dirty_[v]) {
            dirty_[v] = 1;
            worklist_.push_back(v);
        }
    }

    void count_node() {
        if (++local_nodes_ % 1024 == 0) {
            std::uint64_t total = nodes_->fetch_add(1024) + 1024;
            if (total > budget_)
                throw TruncatedError("epimorphism search exceeded its node budget", total);
        }
    }

    // Sets dom_[v] = next (must be a subset), adjusting supports + trail.
    // Returns false when a target element lost its last supporter.
    bool set_domain(int v, std::uint64_t next) {
        std::uint64_t old = dom_[v];
        std::uint64_t cleared = old & ~next;
        if (!cleared) return true;
        trail_.emplace_back(v, old);
        dom_[v] = next;
        std::vector<int>& support = pr_.is_point(v) ? support_pt_ : support_ln_;
        bool ok = true;
        while (cleared) {
            int w = std::countr_zero(cleared);
            cleared &= cleared - 1;
            if (--support[w] == 0) ok = false;
        }
        if (next == 0) ok = false;
        return ok;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [v, old] = trail_.back();
            trail_.pop_back();
            std::uint64_t restored = old & ~dom_[v];
            std::vector<int>& support = pr_.is_point(v) ? support_pt_ : support_ln_;
            while (restored) {
                int w = std::countr_zero(restored);
                restored &= restored - 1;
                ++support[w];
            }
            dom_[v] = old;
        }
    }

    // Arc consistency plus (optionally) the saturation cover filter:
    // a candidate image w of v must have, for every source neighbour u of v,
    // a neighbour inside dom(u); with saturation on, w's full incidence row
    // must additionally stay inside the union of the neighbours' domains.
    bool revise(int v) {
        std::uint64_t cur = dom_[v];
        bool vp = pr_.is_point(v);
        std::uint64_t nbr_union = 0;
        for (int u : pr_.s_adj[v]) nbr_union |= dom_[u];
        std::uint64_t next = 0;
        std::uint64_t m = cur;
        while (m) {
            int w = std::countr_zero(m);
            m &= m - 1;
            std::uint64_t row = pr_.t_mask(vp, w);
            bool ok = true;
            if (pr_.saturation && (row & ~nbr_union) != 0) ok = false;
            if (ok)
                for (int u : pr_.s_adj[v])
                    if ((row & dom_[u]) == 0) {
                        ok = false;
                        break;
                    }
            if (ok) next |= 1ULL << w;
        }
        if (next == cur) return true;
        if (!set_domain(v, next)) return false;
        for (int u : pr_.s_adj[v]) push_dirty(u);
        return true;
    }

    bool flush() {
        bool ok = true;
        while (!worklist_.empty()) {
            int v = worklist_.back();
            worklist_.pop_back();
            dirty_[v] = 0;
            if (ok) ok = revise(v);
            // keep draining to reset dirty flags even after failure
        }
        return ok;
    }

    bool assign(int v, int w) {
        if (!set_domain(v, 1ULL << w)) {
            // drain any stale worklist entries before reporting failure
            flush();
            return false;
        }
        for (int u : pr_.s_adj[v]) push_dirty(u);
        return flush();
    }

    template <typename Sink>
    void dfs(std::size_t pos, Sink& sink) {
        if (pos == pr_.order.size()) {
            emit(sink);
            return;
        }
        int v = pr_.order[pos];
        std::uint64_t cands = dom_[v];
        while (cands) {
            int w = std::countr_zero(cands);
            cands &= cands - 1;
            count_node();
            std::size_t mark = trail_.size();
            if (assign(v, w)) dfs(pos + 1, sink);
            undo_to(mark);
        }
    }

    template <typename Sink>
    void emit(Sink& sink) {
        MapPair mp;
        mp.first.resize(pr_.sp);
        mp.second.resize(pr_.sl);
        for (int p = 0; p < pr_.sp; ++p) mp.first[p] = std::countr_zero(dom_[p]);
        for (int l = 0; l < pr_.sl; ++l) mp.second[l] = std::countr_zero(dom_[pr_.sp + l]);
        sink(std::move(mp));
    }
};

// Saturation (every source line's point row maps onto its image line's
// point row, and dually) is a theorem for epimorphisms between weak
// generalized m-gons of equal gonality: for m = 4 and m = 6 it follows from
// the defining axioms of either side, for m = 3 it holds onto thin (1,1)
// targets. Only then may the engine prune with it.
bool saturation_applicable(const GeometryPtr& src, const GeometryPtr& tgt) {
    PolygonVerdict vs = classify_polygon(*src);
    if (!vs.ok()) return false;
    PolygonVerdict vt = classify_polygon(*tgt);
    if (!vt.ok()) return false;
    int m = vs.polygon->gonality;
    if (m != vt.polygon->gonality) return false;
    if (m == 4 || m == 6) return true;
    if (m == 3)
        return vt.polygon->order && vt.polygon->order->first == 1 &&
               vt.polygon->order->second == 1;
    return false;
}

}  // namespace

SearchOutcome enumerate_epimorphisms(const GeometryPtr& src, const GeometryPtr& tgt,
                                     const SearchOptions& options) {
    SearchOutcome outcome;
    // Trivial impossibilities: surjectivity needs at least as many source
    // elements, and an empty side must match an empty side.
    if (tgt->point_count() == 0 || tgt->line_count() == 0)
        throw DomainError("epimorphism search needs a nonempty target");

    bool saturation = options.saturation_override
                          ? *options.saturation_override
                          : saturation_applicable(src, tgt);
    outcome.saturation_used = saturation;

    Problem pr = build_problem(src, tgt, saturation);
    std::atomic<std::uint64_t> nodes{0};

    Worker base(pr, &nodes, options.node_budget);
    bool feasible = src->point_count() >= tgt->point_count() &&
                    src->line_count() >= tgt->line_count() && base.establish();

    // Symmetry compression: enumerate with the root pinned to one
    // representative per Aut(tgt)-orbit, then translate by the group.
    bool use_symmetry = options.target_symmetry_override
                            ? *options.target_symmetry_override
                            : true;
    std::vector<GeometryMorphism> auts;
    if (use_symmetry && feasible && pr.sp > 0) {
        auts = all_automorphisms(tgt);
        if (auts.size() <= 1) use_symmetry = false;
    } else {
        use_symmetry = false;
    }
    outcome.target_symmetry_used = use_symmetry;

    int root = pr.sp > 0 ? pr.order[0] : -1;
    std::vector<std::uint64_t> tasks;  // root-domain masks, one per task
    if (!feasible) {
        // no tasks
    } else if (root < 0) {
        tasks.push_back(~0ULL);  // degenerate: no points; single task, full domains
    } else if (use_symmetry) {
        std::uint64_t root_dom = base.domain(root);
        std::vector<char> seen(pr.tp, 0);
        for (int w = 0; w < pr.tp; ++w) {
            if (!((root_dom >> w) & 1) || seen[w]) continue;
            for (const GeometryMorphism& a : auts) {
                int img = a.point_map[w];
                if ((root_dom >> img) & 1) seen[img] = 1;
            }
            tasks.push_back(1ULL << w);
        }
    } else {
        std::uint64_t root_dom = base.domain(root);
        while (root_dom) {
            int w = std::countr_zero(root_dom);
            root_dom &= root_dom - 1;
            tasks.push_back(1ULL << w);
        }
    }

    unsigned jobs = options.jobs ? options.jobs : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;

    auto run_task = [&](std::uint64_t mask) {
        std::vector<MapPair> found;
        if (root < 0) {
            Worker w(pr, &nodes, options.node_budget);
            if (w.establish()) w.enumerate([&](MapPair mp) { found.push_back(std::move(mp)); });
            return found;
        }
        Worker w = base;
        if (w.restrict_root(root, mask))
            w.enumerate([&](MapPair mp) { found.push_back(std::move(mp)); });
        return found;
    };

    std::vector<MapPair> all;
    std::exception_ptr error;
    for (std::size_t t0 = 0; t0 < tasks.size(); t0 += jobs) {
        std::size_t t1 = std::min(tasks.size(), t0 + jobs);
        std::vector<std::future<std::vector<MapPair>>> futures;
        for (std::size_t t = t0; t < t1; ++t)
            futures.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                         run_task, tasks[t]));
        for (auto& fut : futures) {
            try {
                std::vector<MapPair> part = fut.get();
                all.insert(all.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
            } catch (...) {
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    }

    if (use_symmetry) {
        std::vector<MapPair> expanded;
        expanded.reserve(all.size() * auts.size());
        for (const MapPair& mp : all) {
            for (const GeometryMorphism& a : auts) {
                MapPair e = mp;
                for (int& v : e.first) v = a.point_map[v];
                for (int& v : e.second) v = a.line_map[v];
                expanded.push_back(std::move(e));
            }
        }
        all = std::move(expanded);
    }

    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    if (options.up_to_target_automorphism) {
        if (auts.empty()) auts = all_automorphisms(tgt);
        std::vector<MapPair> reps;
        for (const MapPair& mp : all) {
            MapPair best = mp;
            for (const GeometryMorphism& a : auts) {
                MapPair e = mp;
                for (int& v : e.first) v = a.point_map[v];
                for (int& v : e.second) v = a.line_map[v];
                if (e < best) best = std::move(e);
            }
            reps.push_back(std::move(best));
        }
        std::sort(reps.begin(), reps.end());
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        all = std::move(reps);
    }

    if (options.result_limit && all.size() > *options.result_limit)
        throw TruncatedError("epimorphism search exceeded its result limit", nodes.load());

    outcome.count = all.size();
    outcome.nodes = nodes.load();
    if (!options.count_only) {
        outcome.epimorphisms.reserve(all.size());
        for (MapPair& mp : all) {
            GeometryMorphism m;
            m.source = src;
            m.target = tgt;
            m.point_map = std::move(mp.first);
            m.line_map = std::move(mp.second);
            outcome.epimorphisms.push_back(std::move(m));
        }
    }
    return outcome;
}

SearchOutcome enumerate_automorphisms(const GeometryPtr& g, const SearchOptions& options) {
    return enumerate_epimorphisms(g, g, options);
}

}  // namespace polylab
