#include "polylab/geometry.hpp"

#include <algorithm>
#include <deque>

namespace polylab {

std::string to_string(const Element& e) {
    return (e.kind == ElementKind::point ? "point:" : "line:") + std::to_string(e.index);
}

const std::vector<int>& IncidenceGeometry::lines_of_point(int p) const {
    check_point(p);
    return lines_of_point_[p];
}

const std::vector<int>& IncidenceGeometry::points_of_line(int l) const {
    check_line(l);
    return points_of_line_[l];
}

bool IncidenceGeometry::has_flag(int p, int l) const {
    const auto& row = lines_of_point(p);
    check_line(l);
    return std::binary_search(row.begin(), row.end(), l);
}

std::vector<Flag> IncidenceGeometry::flags() const {
    std::vector<Flag> out;
    out.reserve(flag_count_);
    for (int p = 0; p < point_count(); ++p)
        for (int l : lines_of_point_[p]) out.push_back({p, l});
    return out;
}

const std::string& IncidenceGeometry::point_label(int p) const {
    check_point(p);
    return point_labels_[p];
}

const std::string& IncidenceGeometry::line_label(int l) const {
    check_line(l);
    return line_labels_[l];
}

void IncidenceGeometry::check_point(int p) const {
    if (p < 0 || p >= point_count())
        throw IndexError("point index " + std::to_string(p) + " out of range [0," +
                         std::to_string(point_count()) + ")");
}

void IncidenceGeometry::check_line(int l) const {
    if (l < 0 || l >= line_count())
        throw IndexError("line index " + std::to_string(l) + " out of range [0," +
                         std::to_string(line_count()) + ")");
}

void IncidenceGeometry::check_element(Element e) const {
    if (e.kind == ElementKind::point)
        check_point(e.index);
    else
        check_line(e.index);
}

int IncidenceGeometry::vertex_of(Element e) const {
    check_element(e);
    return e.kind == ElementKind::point ? e.index : point_count() + e.index;
}

Element IncidenceGeometry::element_of(int vid) const {
    if (vid < point_count()) return point_element(vid);
    return line_element(vid - point_count());
}

const std::vector<int>& IncidenceGeometry::vertex_neighbors(int vid) const {
    if (vid < 0 || vid >= vertex_count())
        throw IndexError("vertex id " + std::to_string(vid) + " out of range");
    return vid_adj_[vid];
}

std::vector<int> IncidenceGeometry::compute_distance_row(int vid) const {
    std::vector<int> dist(vertex_count(), -1);
    std::deque<int> queue;
    dist[vid] = 0;
    queue.push_back(vid);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : vid_adj_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

const std::vector<int>* IncidenceGeometry::distance_row(int vid) const {
    if (vertex_count() > kDistanceCacheLimit) return nullptr;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (bfs_cache_.empty()) bfs_cache_.resize(vertex_count());
        if (bfs_cache_[vid]) return bfs_cache_[vid].get();
    }
    auto row = std::make_unique<std::vector<int>>(compute_distance_row(vid));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    // Racing writers produce identical rows; first one wins.
    if (!bfs_cache_[vid]) bfs_cache_[vid] = std::move(row);
    return bfs_cache_[vid].get();
}

std::optional<int> IncidenceGeometry::distance(Element a, Element b) const {
    int va = vertex_of(a);
    int vb = vertex_of(b);
    if (const std::vector<int>* row = distance_row(va)) {
        int d = (*row)[vb];
        if (d < 0) return std::nullopt;
        return d;
    }
    std::vector<int> row = compute_distance_row(va);
    if (row[vb] < 0) return std::nullopt;
    return row[vb];
}

std::optional<int> IncidenceGeometry::line_graph_distance(int l1, int l2) const {
    auto d = distance(line_element(l1), line_element(l2));
    if (!d) return std::nullopt;
    return *d / 2;
}

bool operator==(const IncidenceGeometry& a, const IncidenceGeometry& b) {
    return a.lines_of_point_ == b.lines_of_point_ && a.points_of_line_ == b.points_of_line_;
}

IncidenceGeometryBuilder::IncidenceGeometryBuilder(int points, int lines)
    : points_(points), lines_(lines) {
    if (points < 0 || lines < 0) throw DomainError("negative element count");
    point_labels_.resize(points);
    line_labels_.resize(lines);
}

void IncidenceGeometryBuilder::add_flag(int p, int l) {
    if (p < 0 || p >= points_)
        throw IndexError("flag point " + std::to_string(p) + " out of range");
    if (l < 0 || l >= lines_)
        throw IndexError("flag line " + std::to_string(l) + " out of range");
    flags_.emplace_back(p, l);
}

void IncidenceGeometryBuilder::set_point_label(int p, std::string label) {
    if (p < 0 || p >= points_) throw IndexError("label point out of range");
    point_labels_[p] = std::move(label);
}

void IncidenceGeometryBuilder::set_line_label(int l, std::string label) {
    if (l < 0 || l >= lines_) throw IndexError("label line out of range");
    line_labels_[l] = std::move(label);
}

GeometryPtr IncidenceGeometryBuilder::build() {
    std::sort(flags_.begin(), flags_.end());
    for (std::size_t i = 1; i < flags_.size(); ++i)
        if (flags_[i] == flags_[i - 1])
            throw DomainError("duplicate flag (" + std::to_string(flags_[i].first) + "," +
                              std::to_string(flags_[i].second) + ")");

    auto g = std::shared_ptr<IncidenceGeometry>(new IncidenceGeometry());
    g->lines_of_point_.resize(points_);
    g->points_of_line_.resize(lines_);
    for (auto [p, l] : flags_) {
        g->lines_of_point_[p].push_back(l);
        g->points_of_line_[l].push_back(p);
    }
    for (auto& row : g->lines_of_point_) std::sort(row.begin(), row.end());
    for (auto& row : g->points_of_line_) std::sort(row.begin(), row.end());
    g->flag_count_ = flags_.size();
    g->point_labels_ = std::move(point_labels_);
    g->line_labels_ = std::move(line_labels_);

    g->vid_adj_.resize(points_ + lines_);
    for (int p = 0; p < points_; ++p) {
        g->vid_adj_[p].reserve(g->lines_of_point_[p].size());
        for (int l : g->lines_of_point_[p]) g->vid_adj_[p].push_back(points_ + l);
    }
    for (int l = 0; l < lines_; ++l) g->vid_adj_[points_ + l] = g->points_of_line_[l];
    return g;
}

GeometryPtr dual(const IncidenceGeometry& g) {
    IncidenceGeometryBuilder b(g.line_count(), g.point_count());
    for (int p = 0; p < g.point_count(); ++p)
        for (int l : g.lines_of_point(p)) b.add_flag(l, p);
    for (int l = 0; l < g.line_count(); ++l) b.set_point_label(l, g.line_label(l));
    for (int p = 0; p < g.point_count(); ++p) b.set_line_label(p, g.point_label(p));
    return b.build();
}

GeometryPtr dual(const GeometryPtr& g) { return dual(*g); }

InducedSubgeometry induced_subgeometry(const IncidenceGeometry& g,
                                       const std::vector<int>& points,
                                       const std::vector<int>& lines) {
    for (int p : points) g.check_point(p);
    for (int l : lines) g.check_line(l);

    std::vector<int> ps = points, ls = lines;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

    InducedSubgeometry out;
    out.point_old_to_new.assign(g.point_count(), -1);
    out.line_old_to_new.assign(g.line_count(), -1);
    for (std::size_t i = 0; i < ps.size(); ++i) out.point_old_to_new[ps[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < ls.size(); ++i) out.line_old_to_new[ls[i]] = static_cast<int>(i);
    out.point_new_to_old = ps;
    out.line_new_to_old = ls;

    IncidenceGeometryBuilder b(static_cast<int>(ps.size()), static_cast<int>(ls.size()));
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (int l : g.lines_of_point(ps[i])) {
            int nl = out.line_old_to_new[l];
            if (nl >= 0) b.add_flag(static_cast<int>(i), nl);
        }
        b.set_point_label(static_cast<int>(i), g.point_label(ps[i]));
    }
    for (std::size_t i = 0; i < ls.size(); ++i) b.set_line_label(static_cast<int>(i), g.line_label(ls[i]));
    out.geometry = b.build();
    return out;
}

}  // namespace polylab
