#include "heis/shape.hpp"

namespace heis {

namespace {

void enum_rec(const FoliationShape& shape, int i, int budget, MultiIndex& cur,
              std::vector<MultiIndex>& out) {
    if (i == shape.n()) {
        out.push_back(cur);
        return;
    }
    int w = shape.weight(i + 1);
    for (int a = 0; a * w <= budget; ++a) {
        cur[i] = static_cast<uint16_t>(a);
        enum_rec(shape, i + 1, budget - a * w, cur, out);
    }
    cur[i] = 0;
}

void enum_total_rec(int n, int i, int left, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (i == n - 1) {
        cur[i] = static_cast<uint16_t>(left);
        out.push_back(cur);
        cur[i] = 0;
        return;
    }
    for (int a = 0; a <= left; ++a) {
        cur[i] = static_cast<uint16_t>(a);
        enum_total_rec(n, i + 1, left - a, cur, out);
    }
    cur[i] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_weighted(const FoliationShape& shape, int bound) {
    std::vector<MultiIndex> out;
    MultiIndex cur(shape.n(), 0);
    if (bound >= 0) enum_rec(shape, 0, bound, cur, out);
    return out;
}

std::vector<MultiIndex> enumerate_total(int n, int total) {
    std::vector<MultiIndex> out;
    if (total < 0) return out;
    MultiIndex cur(n, 0);
    enum_total_rec(n, 0, total, cur, out);
    return out;
}

}  // namespace heis
