#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polylab/geometry.hpp"

namespace polylab {

/// Total point map + total line map between two geometries. A valid morphism
/// maps every flag of the source onto a flag of the target.
struct GeometryMorphism {
    GeometryPtr source;
    GeometryPtr target;
    std::vector<int> point_map;
    std::vector<int> line_map;

    /// Comparison on the maps only; callers compare geometries separately.
    friend bool operator==(const GeometryMorphism& a, const GeometryMorphism& b) {
        return a.point_map == b.point_map && a.line_map == b.line_map;
    }
    friend auto operator<=>(const GeometryMorphism& a, const GeometryMorphism& b) {
        if (auto c = a.point_map <=> b.point_map; c != 0) return c;
        return a.line_map <=> b.line_map;
    }
};

GeometryMorphism identity_morphism(const GeometryPtr& g);

/// g after f (f first). Requires f.target == g.source structurally.
GeometryMorphism compose(const GeometryMorphism& g, const GeometryMorphism& f);

/// The same maps read between the duals: points and lines swap roles.
GeometryMorphism dual_morphism(const GeometryMorphism& m);

struct MorphismViolation {
    Flag source_flag;
    int image_point;
    int image_line;
    std::string to_string() const;
};

/// nullopt when every flag is preserved; otherwise the first violating flag.
/// Throws ContractViolation when either map is not total or out of range.
std::optional<MorphismViolation> verify_morphism(const GeometryMorphism& m);

/// Surjective on points and on lines (flag-surjectivity is not required).
bool is_epimorphism(const GeometryMorphism& m);

struct Fibers {
    std::vector<std::vector<int>> point_fibers;  // target point -> source points
    std::vector<std::vector<int>> line_fibers;   // target line -> source lines
};

Fibers fibers(const GeometryMorphism& m);

struct SaturationWitness {
    Element base;  // source line (point saturation) or source point (line side)
    std::string detail;
};

/// For epimorphisms between weak generalized m-gons of equal gonality
/// m in {3,4,6}: checks that every source line's point row maps onto the
/// image line's point row, and dually for pencils. Returns the first failure.
std::optional<SaturationWitness> line_saturation(const GeometryMorphism& m);

}  // namespace polylab
