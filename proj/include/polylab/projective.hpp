#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polylab/gf.hpp"

namespace polylab {

/// Point of PG(d, q), d <= 6, as a homogeneous coordinate vector normalized
/// so the first nonzero coordinate is 1. Equality is plain vector equality.
struct ProjPoint {
    std::array<std::uint16_t, 7> c{};
    std::uint8_t dim = 0;  // number of coordinates = d + 1

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

ProjPoint normalize_proj(const Gf& f, std::array<std::uint16_t, 7> v, int ncoords);

std::string proj_label(const ProjPoint& x);

/// All points of PG(ncoords-1, q) in canonical (leading-one block) order.
std::vector<ProjPoint> enumerate_projective_points(const Gf& f, int ncoords);

/// Point list in its given order plus a sorted permutation for lookups.
class ProjIndex {
public:
    explicit ProjIndex(std::vector<ProjPoint> points);
    int index_of(const ProjPoint& x) const;  // -1 when absent
    const std::vector<ProjPoint>& points() const { return points_; }

private:
    std::vector<ProjPoint> points_;
    std::vector<int> perm_;
};

}  // namespace polylab
