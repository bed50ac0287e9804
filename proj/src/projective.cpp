#include "polylab/projective.hpp"

#include <algorithm>
#include <numeric>

namespace polylab {

ProjPoint normalize_proj(const Gf& f, std::array<std::uint16_t, 7> v, int ncoords) {
    int lead = -1;
    for (int i = 0; i < ncoords; ++i) {
        if (v[i] != 0) {
            lead = i;
            break;
        }
    }
    if (lead < 0) throw DomainError("zero vector has no projective point");
    int s = f.inv(v[lead]);
    ProjPoint out;
    out.dim = static_cast<std::uint8_t>(ncoords);
    for (int i = 0; i < ncoords; ++i) out.c[i] = static_cast<std::uint16_t>(f.mul(v[i], s));
    return out;
}

std::string proj_label(const ProjPoint& x) {
    std::string s = "(";
    for (int i = 0; i < x.dim; ++i) {
        if (i) s += ":";
        s += std::to_string(x.c[i]);
    }
    return s + ")";
}

std::vector<ProjPoint> enumerate_projective_points(const Gf& f, int ncoords) {
    std::vector<ProjPoint> out;
    int q = f.q();
    // leading 1 at position j, free coordinates after it
    for (int j = 0; j < ncoords; ++j) {
        int free = ncoords - 1 - j;
        long long count = 1;
        for (int i = 0; i < free; ++i) count *= q;
        for (long long v = 0; v < count; ++v) {
            ProjPoint x;
            x.dim = static_cast<std::uint8_t>(ncoords);
            x.c[j] = 1;
            long long rest = v;
            for (int i = j + 1; i < ncoords; ++i) {
                x.c[i] = static_cast<std::uint16_t>(rest % q);
                rest /= q;
            }
            out.push_back(x);
        }
    }
    return out;
}

ProjIndex::ProjIndex(std::vector<ProjPoint> points) : points_(std::move(points)) {
    perm_.resize(points_.size());
    std::iota(perm_.begin(), perm_.end(), 0);
    std::sort(perm_.begin(), perm_.end(),
              [&](int a, int b) { return points_[a] < points_[b]; });
}

int ProjIndex::index_of(const ProjPoint& x) const {
    auto it = std::lower_bound(perm_.begin(), perm_.end(), x,
                               [&](int a, const ProjPoint& v) { return points_[a] < v; });
    if (it == perm_.end() || !(points_[*it] == x)) return -1;
    return *it;
}

}  // namespace polylab
