#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polylab/epi_search.hpp"
#include "polylab/morphism.hpp"

namespace polylab {

enum class PolygonFamily { plane, quadrangle, hexagon };

int family_gonality(PolygonFamily f);
PolygonFamily family_of_gonality(int m);
std::string family_name(PolygonFamily f);

enum class EpiCase { A, B };

/// Datum for one canonical epimorphism onto the thin (1,1) m-gon.
///
/// Case A: `base` is a source line; the two blocks partition its point row
/// (plane/quadrangle: the blocks mapping to roles a,b; hexagon: to roles
/// c,b). Case B is the point-line dual: `base` is a source point and the
/// blocks partition its pencil.
///
/// `target_cycle` lists the target's points along its unique ordinary cycle,
/// fixing the role names: positions 0,1,2(,3,4,5) are a,b,c(,d,e,f).
struct CanonicalEpiDescriptor {
    PolygonFamily family;
    EpiCase epi_case;
    int base;
    std::vector<int> block_first;
    std::vector<int> block_second;
    std::vector<int> target_cycle;

    friend bool operator==(const CanonicalEpiDescriptor&, const CanonicalEpiDescriptor&) = default;
};

/// Builds and fully verifies the canonical epimorphism described by `d`:
/// the morphism is checked flag by flag and every point and line fiber is
/// compared against the stated fiber description. DescriptorError on invalid
/// descriptor data.
GeometryMorphism canonical_plane_epimorphism(const GeometryPtr& plane, const GeometryPtr& tgt,
                                             const CanonicalEpiDescriptor& d);
GeometryMorphism canonical_gq_epimorphism(const GeometryPtr& gq, const GeometryPtr& tgt,
                                          const CanonicalEpiDescriptor& d);
GeometryMorphism canonical_hexagon_epimorphism(const GeometryPtr& hex, const GeometryPtr& tgt,
                                               const CanonicalEpiDescriptor& d);
GeometryMorphism canonical_epimorphism(const GeometryPtr& src, const GeometryPtr& tgt,
                                       const CanonicalEpiDescriptor& d);

/// Every valid descriptor for src -> tgt: both cases, all bases, all ordered
/// block pairs, all 2m target labelings.
std::vector<CanonicalEpiDescriptor> enumerate_canonical_descriptors(const GeometryPtr& src,
                                                                    const GeometryPtr& tgt,
                                                                    PolygonFamily family);

/// The distinct canonical epimorphisms (descriptors overlap; the set is
/// deduplicated and canonically ordered).
std::vector<GeometryMorphism> canonical_epimorphism_set(const GeometryPtr& src,
                                                        const GeometryPtr& tgt,
                                                        PolygonFamily family);

struct ClassifyOutcome {
    std::optional<CanonicalEpiDescriptor> descriptor;
    std::string witness;
    bool classified() const { return descriptor.has_value(); }
};

/// Reconstructs a canonical descriptor for an epimorphism from a thick m-gon
/// (m in {3,4,6}) onto the thin (1,1) m-gon, or reports Unclassified with a
/// witness. Maps lying in both classes report case A.
ClassifyOutcome classify_epimorphism(const GeometryMorphism& phi);

struct CheckLine {
    std::string name;
    bool pass;
    std::string details;
};

struct Report {
    std::vector<CheckLine> checks;
    bool incomplete = false;

    void add(const std::string& name, bool pass, const std::string& details = "");
    bool all_pass() const;
    std::string to_text() const;
};

/// Exhaustively enumerates epimorphisms of `src` onto the thin (1,1) m-gon,
/// classifies every one, compares the set against the canonical generator in
/// both directions, and runs the impossibility searches onto thin targets
/// with s' > 1.
Report verify_classification_theorem(const GeometryPtr& src, int m,
                                     const SearchOptions& options = {});

/// Doubles an epimorphism between polygons of orders (s,s) and (s',s'). With
/// `compose_with_target_duality` the image side is twisted by a duality of
/// the target polygon, producing the class-swapping epimorphisms between the
/// doubles.
GeometryMorphism double_epimorphism(const GeometryMorphism& gamma,
                                    bool compose_with_target_duality = false);

struct UndoubledEpi {
    GeometryMorphism core;
    /// true when gamma swapped the two element classes; core then maps onto
    /// the dual of the undoubled target.
    bool dualized;
};

/// Inverse of double_epimorphism for epimorphisms between thin 2n-gons of
/// order (1,s): undoubles both sides and reads off the induced map.
UndoubledEpi undouble_epimorphism(const GeometryMorphism& gamma);

/// The epimorphism between digons defined by a pair of surjections.
GeometryMorphism digon_epimorphism(const GeometryPtr& src, const GeometryPtr& tgt,
                                   const std::vector<int>& sigma_points,
                                   const std::vector<int>& sigma_lines);

/// Checks the thin-polygon theorem at given parameters: every epimorphism
/// between the thin m-gons of orders (s,1) and (s',1) is a doubling (m = 4),
/// respectively an isomorphism or a doubling of a canonical plane
/// epimorphism (m = 6).
Report thin_polygon_theorem_check(int m, int s, int sp, const SearchOptions& options = {});

}  // namespace polylab
