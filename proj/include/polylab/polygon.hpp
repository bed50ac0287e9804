#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polylab/geometry.hpp"

namespace polylab {

/// Validation verdict for a weak generalized m-gon.
/// Order (s,t) means line degree s+1 and point degree t+1.
struct PolygonClass {
    int gonality = 0;
    std::optional<std::pair<int, int>> order;
    bool is_firm = false;
    bool is_thick = false;
    bool is_thin = false;
    bool is_weak_generalized_polygon = false;
};

struct NotPolygonInfo {
    enum class Reason { not_firm, disconnected, girth_defect };
    Reason reason;
    /// not_firm: the deficient element. disconnected: two elements in
    /// different components. girth_defect: a cycle shorter than twice the
    /// diameter, i.e. two distinct short paths between the same pair.
    std::vector<Element> witness;
    int girth = -1;
    int diameter = -1;
    std::string detail;
};

struct PolygonVerdict {
    std::optional<PolygonClass> polygon;
    std::optional<NotPolygonInfo> failure;
    bool ok() const { return polygon.has_value(); }
};

/// Decides whether the incidence graph is connected, firm, and has
/// girth = 2 * diameter; in that case the geometry is a weak generalized
/// m-gon with m = diameter. Digons (m = 2) are accepted.
/// Throws EmptyGeometryError on a geometry without points and lines.
PolygonVerdict classify_polygon(const IncidenceGeometry& g);

/// (s,t) when the geometry is biregular with line degree s+1 >= 1 and point
/// degree t+1 >= 1; absent otherwise.
std::optional<std::pair<int, int>> order_of(const IncidenceGeometry& g);

/// A 2m-cycle of the incidence graph as alternating point/line elements,
/// starting at a point. Requires classify_polygon to have succeeded with the
/// given gonality.
std::vector<Element> gonality_witness(const IncidenceGeometry& g, int m);

/// Shortest cycle in the incidence graph: (length, cycle as vertex ids).
/// Length -1 when the graph is acyclic.
std::pair<int, std::vector<int>> incidence_girth(const IncidenceGeometry& g);

/// Largest finite pairwise distance; -1 for an empty graph. Second component
/// false when the graph is disconnected.
std::pair<int, bool> incidence_diameter(const IncidenceGeometry& g);

}  // namespace polylab
