#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "polylab/errors.hpp"

namespace polylab {

enum class ElementKind { point, line };

/// A point or a line of some geometry, addressed by dense index.
struct Element {
    ElementKind kind;
    int index;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

inline Element point_element(int i) { return {ElementKind::point, i}; }
inline Element line_element(int i) { return {ElementKind::line, i}; }

std::string to_string(const Element& e);

/// An incident point-line pair.
struct Flag {
    int point;
    int line;

    friend bool operator==(const Flag&, const Flag&) = default;
    friend auto operator<=>(const Flag&, const Flag&) = default;
};

class IncidenceGeometry;
using GeometryPtr = std::shared_ptr<const IncidenceGeometry>;

/// Immutable finite point-line geometry. Points and lines are dense integer
/// ranges; incidence is kept both as per-point line lists and per-line point
/// lists (always sorted and mutually consistent). Labels are decorative only.
///
/// Distances are incidence-graph distances (points and lines are the two
/// vertex classes, flags are the edges). BFS rows are cached lazily for
/// geometries up to the desk-scale guard; the cache is idempotent, so the
/// object is safe to share across threads.
class IncidenceGeometry {
public:
    int point_count() const { return static_cast<int>(lines_of_point_.size()); }
    int line_count() const { return static_cast<int>(points_of_line_.size()); }
    int element_count() const { return point_count() + line_count(); }
    std::size_t flag_count() const { return flag_count_; }

    const std::vector<int>& lines_of_point(int p) const;
    const std::vector<int>& points_of_line(int l) const;

    bool has_flag(int p, int l) const;

    /// All flags in (point, line) lexicographic order.
    std::vector<Flag> flags() const;

    int point_degree(int p) const { return static_cast<int>(lines_of_point(p).size()); }
    int line_degree(int l) const { return static_cast<int>(points_of_line(l).size()); }

    const std::string& point_label(int p) const;
    const std::string& line_label(int l) const;

    /// Incidence-graph distance; nullopt when the elements are disconnected.
    std::optional<int> distance(Element a, Element b) const;

    /// Distance in the graph on lines, adjacent iff concurrent. Equals half
    /// the incidence-graph distance.
    std::optional<int> line_graph_distance(int l1, int l2) const;

    void check_point(int p) const;
    void check_line(int l) const;
    void check_element(Element e) const;

    /// Structural equality: same counts and incidence. Labels are ignored.
    friend bool operator==(const IncidenceGeometry& a, const IncidenceGeometry& b);

    // Unified vertex ids: points are [0, P), lines are [P, P+L).
    int vertex_count() const { return element_count(); }
    int vertex_of(Element e) const;
    Element element_of(int vid) const;
    const std::vector<int>& vertex_neighbors(int vid) const;

    /// BFS distances from one vertex to every vertex (-1 = unreachable).
    /// Cached for geometries with at most kDistanceCacheLimit elements.
    const std::vector<int>* distance_row(int vid) const;
    std::vector<int> compute_distance_row(int vid) const;

    static constexpr int kDistanceCacheLimit = 10000;

private:
    friend class IncidenceGeometryBuilder;
    IncidenceGeometry() = default;

    std::vector<std::vector<int>> lines_of_point_;
    std::vector<std::vector<int>> points_of_line_;
    // vertex_neighbors needs line neighbor lists shifted into vid space.
    std::vector<std::vector<int>> vid_adj_;
    std::vector<std::string> point_labels_;
    std::vector<std::string> line_labels_;
    std::size_t flag_count_ = 0;

    mutable std::mutex cache_mutex_;
    mutable std::vector<std::unique_ptr<std::vector<int>>> bfs_cache_;
};

/// Accumulates flags, then validates and freezes a geometry.
class IncidenceGeometryBuilder {
public:
    IncidenceGeometryBuilder(int points, int lines);

    void add_flag(int p, int l);
    void set_point_label(int p, std::string label);
    void set_line_label(int l, std::string label);

    /// Validates (dense ranges by construction, no duplicate flag) and
    /// returns the frozen geometry.
    GeometryPtr build();

private:
    int points_;
    int lines_;
    std::vector<std::pair<int, int>> flags_;
    std::vector<std::string> point_labels_;
    std::vector<std::string> line_labels_;
};

/// Points and lines swapped, incidence transposed. dual(dual(G)) == G
/// element-wise.
GeometryPtr dual(const IncidenceGeometry& g);
GeometryPtr dual(const GeometryPtr& g);

struct InducedSubgeometry {
    GeometryPtr geometry;
    // old index -> new index, -1 when the element was dropped
    std::vector<int> point_old_to_new;
    std::vector<int> line_old_to_new;
    std::vector<int> point_new_to_old;
    std::vector<int> line_new_to_old;
};

/// Incidence restricted to the given subsets (duplicates collapse).
InducedSubgeometry induced_subgeometry(const IncidenceGeometry& g,
                                       const std::vector<int>& points,
                                       const std::vector<int>& lines);

inline std::vector<int> incident_points(const IncidenceGeometry& g, int l) {
    return g.points_of_line(l);
}
inline std::vector<int> pencil(const IncidenceGeometry& g, int p) {
    return g.lines_of_point(p);
}

}  // namespace polylab
