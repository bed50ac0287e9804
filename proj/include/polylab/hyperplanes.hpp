#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polylab/classification.hpp"
#include "polylab/geometry.hpp"

namespace polylab {

enum class HyperplaneKind { A, B, C, not_hyperplane };

std::string hyperplane_kind_name(HyperplaneKind k);

struct HyperplaneVerdict {
    HyperplaneKind kind = HyperplaneKind::not_hyperplane;
    std::optional<int> center;                     // kind B: the point x with H = x^perp
    std::optional<std::pair<int, int>> suborder;   // kind C: (s, t/s)
    std::optional<int> witness_line;               // not_hyperplane: a violating line
};

/// True iff every line meets the point set in exactly 1 or s+1 points. The
/// empty set and the full point set are rejected. Requires a validated thick
/// generalized quadrangle.
std::pair<bool, std::optional<int>> is_geometric_hyperplane(const GeometryPtr& gq,
                                                            const std::vector<int>& points);

/// A = ovoid (no line inside), B = x^perp, C = subquadrangle of order
/// (s, t/s). A fourth outcome raises InternalError: the three types are
/// exhaustive for thick finite quadrangles.
HyperplaneVerdict classify_hyperplane(const GeometryPtr& gq, const std::vector<int>& points);

/// Complete enumeration by backtracking over the line-intersection
/// constraints, canonically ordered by point set. Guarded to at most 50
/// points (TruncatedError beyond).
std::vector<std::pair<std::vector<int>, HyperplaneVerdict>> enumerate_hyperplanes(
    const GeometryPtr& gq);

/// The symbolic contradiction: a thin type-C hyperplane of a thick
/// quadrangle of order (s,t) would force s = t and then order (1,1).
struct CorollaryTrace {
    bool contradiction = false;
    bool degenerate = false;
    std::vector<std::string> steps;
};

CorollaryTrace thin_type_c_corollary_check(int s, int t);

}  // namespace polylab
