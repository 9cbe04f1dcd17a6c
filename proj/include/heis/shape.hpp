#pragma once

#include "heis/error.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace heis {

/// Flat foliated torus T^n = R^n/Z^n, foliation spanned by the first v
/// coordinates. rho(p) = p_1^4+..+p_v^4 + p_{v+1}^2+..+p_n^2.
struct FoliationShape {
    int v = 1;  // leaf dimension >= 1
    int h = 0;  // codimension >= 0

    FoliationShape() = default;
    FoliationShape(int leaf, int codim) : v(leaf), h(codim) {
        if (v < 1 || h < 0) fail(ErrorKind::WrongShape, "leaf dimension >= 1, codimension >= 0");
    }

    int n() const { return v + h; }
    int Q() const { return v + 2 * h; }  // homogeneous dimension
    /// Heisenberg weight of direction i (1-based): 1 on leaves, 2 transverse.
    int weight(int i) const { return i <= v ? 1 : 2; }
    bool is_leaf(int i) const { return i <= v; }

    bool operator==(const FoliationShape& o) const { return v == o.v && h == o.h; }
    bool operator!=(const FoliationShape& o) const { return !(*this == o); }
};

using MultiIndex = std::vector<uint16_t>;

inline int mi_total(const MultiIndex& a) {
    int s = 0;
    for (auto x : a) s += x;
    return s;
}

/// Heisenberg-weighted length <a> = sum_{i<=v} a_i + 2 sum_{i>v} a_i.
inline int mi_weight(const MultiIndex& a, const FoliationShape& shape) {
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * shape.weight(static_cast<int>(i) + 1);
    return s;
}

inline MultiIndex mi_zero(int n) { return MultiIndex(n, 0); }

inline MultiIndex mi_unit(int n, int i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    return a;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline bool mi_leq(const MultiIndex& a, const MultiIndex& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

/// Enumerates all multi-indices with weighted length <a> <= bound.
std::vector<MultiIndex> enumerate_weighted(const FoliationShape& shape, int bound);

/// Enumerates all multi-indices with plain |a| == total.
std::vector<MultiIndex> enumerate_total(int n, int total);

}  // namespace heis
