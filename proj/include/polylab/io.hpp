#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "polylab/geometry.hpp"
#include "polylab/morphism.hpp"

namespace polylab {

/// FNV-1a of the canonical geometry bytes; identifies geometries in map
/// files.
std::uint64_t fnv1a64(std::string_view bytes);
std::string geometry_digest(const IncidenceGeometry& g);

/// Canonical text form:
///   ig 1
///   points N
///   lines M
///   <record per line: its sorted point indices>
/// Whole-line `#` comments and blank lines are ignored on parse. Lines
/// without points are not serializable.
std::string write_geometry(const IncidenceGeometry& g);
GeometryPtr parse_geometry(std::string_view bytes);

/// Canonical text form:
///   igmap 1
///   source fnv64:<digest>
///   target fnv64:<digest>
///   pointmap
///   <N lines "i j">
///   linemap
///   <M lines "i j">
std::string write_morphism(const GeometryMorphism& m);

/// Parses against the given geometries; digests in the header are verified
/// when present.
GeometryMorphism parse_morphism(std::string_view bytes, const GeometryPtr& source,
                                const GeometryPtr& target);

}  // namespace polylab
