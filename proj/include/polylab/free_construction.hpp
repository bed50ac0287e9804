#pragma once

#include <deque>
#include <string>
#include <vector>

#include "polylab/classification.hpp"
#include "polylab/morphism.hpp"

namespace polylab {

struct FreeJournalEntry {
    int step;
    int u, big_u;  // the deficient pair that was closed
    int v, big_v;  // the new point and line
    int eps_v, eps_big_v;

    std::string to_string() const;
};

/// Stagewise free completion toward a generalized quadrangle over a fixed
/// grid target: each step closes the oldest deficient point-line pair (u,U)
/// by adding one new point v and one new line V with u I V I v I U, and
/// extends the epimorphism. The geometry never acquires digons or triangles
/// (incidence girth stays >= 8) and the morphism stays an epimorphism onto
/// the target at every stage.
class FreeStage {
public:
    /// A1 = the grid plus one isolated point w mapped to target point 0.
    /// Requires a grid of order (s,1) with s >= 2.
    static FreeStage seed_from_target(const GeometryPtr& grid_target);

    /// Closes the front deficient pair; adds exactly one point and one line.
    void free_step();

    /// n applications of free_step.
    void run(int steps);

    int stage() const { return stage_; }
    int point_count() const { return static_cast<int>(lines_of_point_.size()); }
    int line_count() const { return static_cast<int>(points_of_line_.size()); }
    int seed_point_count() const { return seed_points_; }
    int seed_line_count() const { return seed_lines_; }

    const GeometryPtr& target() const { return target_; }
    const std::deque<std::pair<int, int>>& queue() const { return queue_; }
    const std::vector<FreeJournalEntry>& journal() const { return journal_; }
    std::string journal_text() const;

    /// Snapshot of the current geometry (A_n).
    GeometryPtr geometry() const;
    /// The current morphism eps_n onto the target.
    GeometryMorphism morphism() const;

private:
    FreeStage() = default;
    bool pair_deficient(int point, int line) const;

    std::vector<std::vector<int>> lines_of_point_;
    std::vector<std::vector<int>> points_of_line_;
    GeometryPtr target_;
    std::vector<int> point_image_;
    std::vector<int> line_image_;
    std::deque<std::pair<int, int>> queue_;
    int stage_ = 1;
    int seed_points_ = 0;
    int seed_lines_ = 0;
    std::vector<FreeJournalEntry> journal_;
};

/// Recomputes every stage invariant from scratch: morphism validity and
/// surjectivity, incidence girth >= 8, the growth ledger, and queue
/// correctness (exactly the deficient pairs, each listed once).
Report check_free_invariants(const FreeStage& stage);

/// The geometry-level subset of the invariants, usable on arbitrary inputs
/// (negative controls in particular).
Report check_free_geometry(const IncidenceGeometry& geometry, const GeometryMorphism& eps);

}  // namespace polylab
