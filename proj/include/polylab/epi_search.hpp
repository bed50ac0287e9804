#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polylab/morphism.hpp"

namespace polylab {

struct SearchOptions {
    /// Search node budget; every image assignment is a node. Exceeding it
    /// raises TruncatedError. The CLI seeds this from POLYLAB_LIMIT.
    std::uint64_t node_budget = 100'000'000;
    /// Hard cap on enumerated epimorphisms; exceeding it raises
    /// TruncatedError rather than returning a silently incomplete list.
    std::optional<std::uint64_t> result_limit;
    bool count_only = false;
    /// Quotient the output by the target's automorphism group and return one
    /// canonical (lexicographically least) representative per orbit.
    bool up_to_target_automorphism = false;
    /// 0 = use hardware concurrency.
    unsigned jobs = 0;
    /// Overrides for testing the engine against itself. Saturation
    /// propagation is auto-enabled only where it is a theorem (equal
    /// gonality m in {3,4,6}; for m = 3 only onto thin (1,1) targets).
    std::optional<bool> saturation_override;
    std::optional<bool> target_symmetry_override;
};

struct SearchOutcome {
    std::vector<GeometryMorphism> epimorphisms;  // empty when count_only
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    bool saturation_used = false;
    bool target_symmetry_used = false;
};

/// Complete, duplicate-free, canonically ordered (lexicographic on point_map,
/// then line_map) list of all epimorphisms src -> tgt. Deterministic across
/// runs and worker counts. Backtracking assigns images in BFS order from a
/// root point; incidence constraints propagate to a fixpoint and surjectivity
/// is enforced by per-target-element support counts.
SearchOutcome enumerate_epimorphisms(const GeometryPtr& src, const GeometryPtr& tgt,
                                     const SearchOptions& options = {});

/// All self-epimorphisms of g. For finite thick polygons these are exactly
/// the automorphisms.
SearchOutcome enumerate_automorphisms(const GeometryPtr& g, const SearchOptions& options = {});

}  // namespace polylab
