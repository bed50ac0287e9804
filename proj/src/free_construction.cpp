#include "polylab/free_construction.hpp"

#include <algorithm>

#include "polylab/polygon.hpp"

namespace polylab {

std::string FreeJournalEntry::to_string() const {
    return "step " + std::to_string(step) + ": pair (" + std::to_string(u) + "," +
           std::to_string(big_u) + ") -> new (" + std::to_string(v) + "," +
           std::to_string(big_v) + "), eps(v)=" + std::to_string(eps_v) +
           ", eps(V)=" + std::to_string(eps_big_v);
}

FreeStage FreeStage::seed_from_target(const GeometryPtr& grid_target) {
    PolygonVerdict v = classify_polygon(*grid_target);
    if (!v.ok() || v.polygon->gonality != 4 || !v.polygon->order ||
        v.polygon->order->second != 1 || v.polygon->order->first < 2)
        throw DomainError("seed_from_target: target must be a grid of order (s,1) with s >= 2");

    FreeStage st;
    st.target_ = grid_target;
    int np = grid_target->point_count();
    int nl = grid_target->line_count();
    st.lines_of_point_.resize(np + 1);  // plus the isolated point w
    st.points_of_line_.resize(nl);
    for (int l = 0; l < nl; ++l) {
        st.points_of_line_[l] = grid_target->points_of_line(l);
        for (int p : st.points_of_line_[l]) st.lines_of_point_[p].push_back(l);
    }
    for (auto& row : st.lines_of_point_) std::sort(row.begin(), row.end());
    st.point_image_.resize(np + 1);
    for (int p = 0; p < np; ++p) st.point_image_[p] = p;
    st.point_image_[np] = 0;  // w gets the lowest-index target point
    st.line_image_.resize(nl);
    for (int l = 0; l < nl; ++l) st.line_image_[l] = l;
    st.seed_points_ = np + 1;
    st.seed_lines_ = nl;

    // all deficient pairs, in (point, line) order; the grid part has none
    for (int p = 0; p < st.point_count(); ++p)
        for (int l = 0; l < st.line_count(); ++l)
            if (st.pair_deficient(p, l)) st.queue_.emplace_back(p, l);
    return st;
}

bool FreeStage::pair_deficient(int point, int line) const {
    const std::vector<int>& row = points_of_line_[line];
    if (std::binary_search(row.begin(), row.end(), point)) return false;
    for (int l : lines_of_point_[point]) {
        const std::vector<int>& other = points_of_line_[l];
        // sorted ranges: any common point means the pair is closed
        std::size_t i = 0, j = 0;
        while (i < other.size() && j < row.size()) {
            if (other[i] == row[j]) return false;
            if (other[i] < row[j])
                ++i;
            else
                ++j;
        }
    }
    return true;
}

void FreeStage::free_step() {
    if (queue_.empty())
        throw ExhaustedError("free_step: no deficient pairs left");
    auto [u, big_u] = queue_.front();
    queue_.pop_front();
    if (!pair_deficient(u, big_u))
        throw InternalError("free_step: queued pair is no longer deficient");

    int v = point_count();
    int big_v = line_count();
    lines_of_point_.emplace_back();
    points_of_line_.emplace_back();
    // flags (u,V), (v,V), (v,U)
    lines_of_point_[u].push_back(big_v);
    lines_of_point_[v] = {big_u, big_v};
    points_of_line_[big_v] = {u, v};
    points_of_line_[big_u].push_back(v);
    std::sort(points_of_line_[big_v].begin(), points_of_line_[big_v].end());

    // extend the morphism
    int x_img = point_image_[u];
    int big_x_img = line_image_[big_u];
    int eps_v, eps_big_v;
    if (target_->has_flag(x_img, big_x_img)) {
        eps_big_v = big_x_img;
        eps_v = x_img;
    } else {
        // the unique target line through eps(u) meeting eps(U)
        eps_big_v = -1;
        eps_v = -1;
        for (int l : target_->lines_of_point(x_img)) {
            for (int p : target_->points_of_line(l)) {
                if (target_->has_flag(p, big_x_img)) {
                    if (eps_big_v >= 0)
                        throw InternalError("free_step: target grid is not a quadrangle");
                    eps_big_v = l;
                    eps_v = p;
                }
            }
        }
        if (eps_big_v < 0) throw InternalError("free_step: no closing line in the target");
    }
    point_image_.push_back(eps_v);
    line_image_.push_back(eps_big_v);

    // new deficient pairs involving v and V, in (point, line) order
    for (int x = 0; x < v; ++x)
        if (pair_deficient(x, big_v)) queue_.emplace_back(x, big_v);
    for (int l = 0; l < big_v; ++l)
        if (pair_deficient(v, l)) queue_.emplace_back(v, l);

    journal_.push_back({stage_, u, big_u, v, big_v, eps_v, eps_big_v});
    ++stage_;
}

void FreeStage::run(int steps) {
    for (int i = 0; i < steps; ++i) free_step();
}

std::string FreeStage::journal_text() const {
    std::string out;
    for (const FreeJournalEntry& e : journal_) {
        out += e.to_string();
        out += '\n';
    }
    return out;
}

GeometryPtr FreeStage::geometry() const {
    IncidenceGeometryBuilder b(point_count(), line_count());
    for (int l = 0; l < line_count(); ++l)
        for (int p : points_of_line_[l]) b.add_flag(p, l);
    return b.build();
}

GeometryMorphism FreeStage::morphism() const {
    GeometryMorphism m;
    m.source = geometry();
    m.target = target_;
    m.point_map = point_image_;
    m.line_map = line_image_;
    return m;
}

Report check_free_geometry(const IncidenceGeometry& geometry, const GeometryMorphism& eps) {
    Report rep;
    auto violation = verify_morphism(eps);
    rep.add("morphism_valid", !violation, violation ? violation->to_string() : "");
    rep.add("morphism_surjective", !violation && is_epimorphism(eps));
    auto [girth, cycle] = incidence_girth(geometry);
    (void)cycle;
    bool girth_ok = girth < 0 || girth >= 8;
    rep.add("girth_at_least_8", girth_ok, "girth=" + std::to_string(girth));
    return rep;
}

Report check_free_invariants(const FreeStage& stage) {
    GeometryPtr g = stage.geometry();
    Report rep = check_free_geometry(*g, stage.morphism());

    int steps = stage.stage() - 1;
    bool ledger = stage.point_count() == stage.seed_point_count() + steps &&
                  stage.line_count() == stage.seed_line_count() + steps &&
                  static_cast<int>(stage.journal().size()) == steps;
    rep.add("growth_ledger", ledger,
            "steps=" + std::to_string(steps) + " points=" + std::to_string(stage.point_count()) +
                " lines=" + std::to_string(stage.line_count()));

    // queue must list exactly the deficient pairs, each once
    std::vector<std::pair<int, int>> queued(stage.queue().begin(), stage.queue().end());
    std::vector<std::pair<int, int>> sorted_q = queued;
    std::sort(sorted_q.begin(), sorted_q.end());
    bool dup = std::adjacent_find(sorted_q.begin(), sorted_q.end()) != sorted_q.end();
    std::vector<std::pair<int, int>> deficient;
    for (int p = 0; p < g->point_count(); ++p) {
        for (int l = 0; l < g->line_count(); ++l) {
            if (g->has_flag(p, l)) continue;
            bool closed = false;
            for (int pl : g->lines_of_point(p)) {
                for (int q : g->points_of_line(pl))
                    if (g->has_flag(q, l)) {
                        closed = true;
                        break;
                    }
                if (closed) break;
            }
            if (!closed) deficient.push_back({p, l});
        }
    }
    rep.add("queue_matches_deficiency", !dup && sorted_q == deficient,
            "queued=" + std::to_string(queued.size()) +
                " deficient=" + std::to_string(deficient.size()));
    return rep;
}

}  // namespace polylab
