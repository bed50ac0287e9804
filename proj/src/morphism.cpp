#include "polylab/morphism.hpp"

#include <algorithm>

#include "polylab/polygon.hpp"

namespace polylab {

GeometryMorphism identity_morphism(const GeometryPtr& g) {
    GeometryMorphism m;
    m.source = g;
    m.target = g;
    m.point_map.resize(g->point_count());
    m.line_map.resize(g->line_count());
    for (int i = 0; i < g->point_count(); ++i) m.point_map[i] = i;
    for (int i = 0; i < g->line_count(); ++i) m.line_map[i] = i;
    return m;
}

GeometryMorphism compose(const GeometryMorphism& g, const GeometryMorphism& f) {
    if (!(*f.target == *g.source)) throw ContractViolation("compose: middle geometries differ");
    GeometryMorphism out;
    out.source = f.source;
    out.target = g.target;
    out.point_map.resize(f.point_map.size());
    out.line_map.resize(f.line_map.size());
    for (std::size_t i = 0; i < f.point_map.size(); ++i)
        out.point_map[i] = g.point_map[f.point_map[i]];
    for (std::size_t i = 0; i < f.line_map.size(); ++i)
        out.line_map[i] = g.line_map[f.line_map[i]];
    return out;
}

GeometryMorphism dual_morphism(const GeometryMorphism& m) {
    GeometryMorphism out;
    out.source = dual(m.source);
    out.target = dual(m.target);
    out.point_map = m.line_map;
    out.line_map = m.point_map;
    return out;
}

std::string MorphismViolation::to_string() const {
    return "flag (" + std::to_string(source_flag.point) + "," + std::to_string(source_flag.line) +
           ") maps to non-incident (" + std::to_string(image_point) + "," +
           std::to_string(image_line) + ")";
}

static void check_total(const GeometryMorphism& m) {
    if (static_cast<int>(m.point_map.size()) != m.source->point_count() ||
        static_cast<int>(m.line_map.size()) != m.source->line_count())
        throw ContractViolation("morphism maps are not total on the source");
    for (int v : m.point_map)
        if (v < 0 || v >= m.target->point_count())
            throw ContractViolation("point map value out of range");
    for (int v : m.line_map)
        if (v < 0 || v >= m.target->line_count())
            throw ContractViolation("line map value out of range");
}

std::optional<MorphismViolation> verify_morphism(const GeometryMorphism& m) {
    check_total(m);
    for (int p = 0; p < m.source->point_count(); ++p) {
        for (int l : m.source->lines_of_point(p)) {
            int ip = m.point_map[p];
            int il = m.line_map[l];
            if (!m.target->has_flag(ip, il)) return MorphismViolation{{p, l}, ip, il};
        }
    }
    return std::nullopt;
}

bool is_epimorphism(const GeometryMorphism& m) {
    if (verify_morphism(m)) return false;
    std::vector<char> hit(m.target->point_count(), 0);
    for (int v : m.point_map) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    hit.assign(m.target->line_count(), 0);
    for (int v : m.line_map) hit[v] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

Fibers fibers(const GeometryMorphism& m) {
    if (verify_morphism(m)) throw ContractViolation("fibers: not a morphism");
    Fibers f;
    f.point_fibers.resize(m.target->point_count());
    f.line_fibers.resize(m.target->line_count());
    for (int p = 0; p < m.source->point_count(); ++p) f.point_fibers[m.point_map[p]].push_back(p);
    for (int l = 0; l < m.source->line_count(); ++l) f.line_fibers[m.line_map[l]].push_back(l);
    return f;
}

std::optional<SaturationWitness> line_saturation(const GeometryMorphism& m) {
    PolygonVerdict vs = classify_polygon(*m.source);
    PolygonVerdict vt = classify_polygon(*m.target);
    if (!vs.ok() || !vt.ok() || vs.polygon->gonality != vt.polygon->gonality)
        throw ContractViolation("line_saturation: needs polygons of equal gonality");
    int gon = vs.polygon->gonality;
    if (gon != 3 && gon != 4 && gon != 6)
        throw ContractViolation("line_saturation: gonality must be 3, 4 or 6");
    if (!is_epimorphism(m)) throw ContractViolation("line_saturation: not an epimorphism");

    for (int l = 0; l < m.source->line_count(); ++l) {
        std::vector<int> image;
        for (int p : m.source->points_of_line(l)) image.push_back(m.point_map[p]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        const std::vector<int>& want = m.target->points_of_line(m.line_map[l]);
        if (image != want)
            return SaturationWitness{line_element(l),
                                     "points of line " + std::to_string(l) +
                                         " do not map onto the image line's points"};
    }
    for (int p = 0; p < m.source->point_count(); ++p) {
        std::vector<int> image;
        for (int l : m.source->lines_of_point(p)) image.push_back(m.line_map[l]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        const std::vector<int>& want = m.target->lines_of_point(m.point_map[p]);
        if (image != want)
            return SaturationWitness{point_element(p),
                                     "pencil of point " + std::to_string(p) +
                                         " does not map onto the image point's pencil"};
    }
    return std::nullopt;
}

}  // namespace polylab
