#include "heis/clifford.hpp"

#include <algorithm>

namespace heis {

namespace {

int popcount_below(uint32_t mask, int k) {
    // number of set bits with index (1-based) strictly less than k
    uint32_t below = mask & ((1u << (k - 1)) - 1);
    return __builtin_popcount(below);
}

int popcount_above(uint32_t mask, int k) {
    uint32_t above = mask & ~((1u << k) - 1);
    return __builtin_popcount(above);
}

// right-multiply a normal word by psi^k ; appends results to out
void mul_psi_right(const CliffordWord& t, int sign, int k, std::vector<SignedWord>& out) {
    uint32_t bit = 1u << (k - 1);
    auto insert_psi = [&](const CliffordWord& w, int s) {
        if (w.psi & bit) return;  // psi squares to zero
        int flips = popcount_above(w.psi, k);
        out.push_back({{w.psi | bit, w.psiBar}, s * ((flips & 1) ? -1 : 1)});
    };
    if (t.psiBar & bit) {
        // contraction branch: psibar_k psi^k -> 1
        int flips = popcount_above(t.psiBar, k);
        out.push_back({{t.psi, t.psiBar & ~bit}, sign * ((flips & 1) ? -1 : 1)});
        // pass-through branch: psibar_k psi^k -> -psi^k psibar_k, total sign -(-1)^{|B|-1}
        int total = __builtin_popcount(t.psiBar);
        insert_psi(t, sign * ((total & 1) ? -1 : 1));
    } else {
        int flips = __builtin_popcount(t.psiBar);
        insert_psi(t, sign * ((flips & 1) ? -1 : 1));
    }
}

void mul_psibar_right(const CliffordWord& t, int sign, int k, std::vector<SignedWord>& out) {
    uint32_t bit = 1u << (k - 1);
    if (t.psiBar & bit) return;  // psibar squares to zero
    int flips = popcount_above(t.psiBar, k);
    out.push_back({{t.psi, t.psiBar | bit}, sign * ((flips & 1) ? -1 : 1)});
}

}  // namespace

std::vector<SignedWord> clifford_mul(const CliffordWord& u, const CliffordWord& w) {
    std::vector<SignedWord> cur = {{u, 1}};
    std::vector<SignedWord> next;
    for (int k = 1; k <= 32; ++k) {
        if (!(w.psi & (1u << (k - 1)))) continue;
        next.clear();
        for (const auto& t : cur) mul_psi_right(t.word, t.sign, k, next);
        cur = next;
    }
    for (int k = 1; k <= 32; ++k) {
        if (!(w.psiBar & (1u << (k - 1)))) continue;
        next.clear();
        for (const auto& t : cur) mul_psibar_right(t.word, t.sign, k, next);
        cur = next;
    }
    // merge equal words
    std::sort(cur.begin(), cur.end(),
              [](const SignedWord& a, const SignedWord& b) { return a.word < b.word; });
    std::vector<SignedWord> merged;
    for (const auto& t : cur) {
        if (!merged.empty() && merged.back().word == t.word)
            merged.back().sign += t.sign;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const SignedWord& t) { return t.sign == 0; });
    return merged;
}

SignedWord clifford_rename(const CliffordWord& w, const std::vector<int>& perm,
                           const std::vector<int>& signs) {
    auto rename_mask = [&](uint32_t mask, int& sign) -> uint32_t {
        std::vector<int> imgs;
        for (int i = 1; i <= 32; ++i) {
            if (!(mask & (1u << (i - 1)))) continue;
            sign *= signs[i];
            imgs.push_back(perm[i]);
        }
        // bubble-sort parity of the image sequence
        uint32_t out = 0;
        for (size_t a = 0; a < imgs.size(); ++a) {
            for (size_t b = a + 1; b < imgs.size(); ++b)
                if (imgs[a] > imgs[b]) sign = -sign;
            out |= 1u << (imgs[a] - 1);
        }
        return out;
    };
    SignedWord r{{0, 0}, 1};
    r.word.psi = rename_mask(w.psi, r.sign);
    r.word.psiBar = rename_mask(w.psiBar, r.sign);
    return r;
}

namespace {

// applies w to basis state K; returns false if killed, else updates K and sign
bool apply_word(const CliffordWord& w, uint32_t& K, int& sign) {
    for (int j = 32; j >= 1; --j) {  // rightmost psibar factor acts first -> highest index first
        uint32_t bit = 1u << (j - 1);
        if (!(w.psiBar & bit)) continue;
        if (!(K & bit)) return false;
        if (popcount_below(K, j) & 1) sign = -sign;
        K &= ~bit;
    }
    for (int i = 32; i >= 1; --i) {
        uint32_t bit = 1u << (i - 1);
        if (!(w.psi & bit)) continue;
        if (K & bit) return false;
        if (popcount_below(K, i) & 1) sign = -sign;
        K |= bit;
    }
    return true;
}

}  // namespace

Integer clifford_tr(const CliffordWord& w, int n) {
    Integer tr = 0;
    for (uint32_t K = 0; K < (1u << n); ++K) {
        uint32_t K2 = K;
        int sign = 1;
        if (apply_word(w, K2, sign) && K2 == K) tr += sign;
    }
    return tr;
}

Integer clifford_str(const CliffordWord& w, int n) {
    Integer s = 0;
    for (uint32_t K = 0; K < (1u << n); ++K) {
        uint32_t K2 = K;
        int sign = 1;
        if (apply_word(w, K2, sign) && K2 == K) {
            s += (__builtin_popcount(K) & 1) ? -sign : sign;
        }
    }
    // normalization (-1)^{n(n-1)/2}, pinned by <(psi^1..psibar_n)_R> = 1
    if ((n * (n - 1) / 2) & 1) s = -s;
    return s;
}

std::vector<std::vector<int>> clifford_matrix(const CliffordWord& w, int n) {
    int dim = 1 << n;
    std::vector<std::vector<int>> m(dim, std::vector<int>(dim, 0));
    for (int K = 0; K < dim; ++K) {
        uint32_t K2 = static_cast<uint32_t>(K);
        int sign = 1;
        if (apply_word(w, K2, sign)) m[K2][K] = sign;
    }
    return m;
}

}  // namespace heis
