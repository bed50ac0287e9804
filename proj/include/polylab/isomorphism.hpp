#pragma once

#include <optional>
#include <vector>

#include "polylab/morphism.hpp"

namespace polylab {

/// All isomorphisms g -> h (bijective on points and lines, incidence holds in
/// both directions), canonically ordered by (point_map, line_map). Supports
/// geometries with at most 64 points and 64 lines on the target side.
std::vector<GeometryMorphism> all_isomorphisms(const GeometryPtr& g, const GeometryPtr& h);

std::optional<GeometryMorphism> find_isomorphism(const GeometryPtr& g, const GeometryPtr& h);

inline bool is_isomorphic(const GeometryPtr& g, const GeometryPtr& h) {
    return find_isomorphism(g, h).has_value();
}

std::vector<GeometryMorphism> all_automorphisms(const GeometryPtr& g);

/// An isomorphism g -> dual(g), when g is self-dual.
std::optional<GeometryMorphism> find_duality(const GeometryPtr& g);

}  // namespace polylab
