#pragma once

#include "heis/exact_scalar.hpp"
#include "heis/rational.hpp"

#include <cstdint>
#include <vector>

namespace heis {

/// Normal-ordered word psi^{i_1}..psi^{i_r} psibar_{j_1}..psibar_{j_s} with
/// strictly increasing indices inside each group, encoded as two bitmasks
/// (bit i-1 <-> index i). Acts fiberwise on the 2^n-dimensional exterior
/// algebra: psi^i = exterior multiplication by e^i, psibar_i = contraction.
struct CliffordWord {
    uint32_t psi = 0;
    uint32_t psiBar = 0;

    bool operator==(const CliffordWord& o) const { return psi == o.psi && psiBar == o.psiBar; }
    bool operator<(const CliffordWord& o) const {
        return psi != o.psi ? psi < o.psi : psiBar < o.psiBar;
    }
    bool trivial() const { return psi == 0 && psiBar == 0; }
    int parity() const { return (__builtin_popcount(psi) + __builtin_popcount(psiBar)) & 1; }
    int length() const { return __builtin_popcount(psi) + __builtin_popcount(psiBar); }

    static CliffordWord identity() { return {}; }
    static CliffordWord single_psi(int i) { return {1u << (i - 1), 0}; }
    static CliffordWord single_psi_bar(int i) { return {0, 1u << (i - 1)}; }
    /// psi^1..psi^n psibar_1..psibar_n
    static CliffordWord top(int n) { return {(1u << n) - 1, (1u << n) - 1}; }
};

/// A term of a signed sum of normal words.
struct SignedWord {
    CliffordWord word;
    int sign;  // +1 or -1
};

/// Normal-ordered product of two words via the relations
/// [psi^i, psibar_j]_+ = delta_i^j, [psi,psi]_+ = [psibar,psibar]_+ = 0.
std::vector<SignedWord> clifford_mul(const CliffordWord& u, const CliffordWord& w);

/// Word obtained by renaming index i -> perm[i] (1-based, a bijection) with
/// per-index signs; result re-sorted to normal order with the Koszul sign.
SignedWord clifford_rename(const CliffordWord& w, const std::vector<int>& perm,
                           const std::vector<int>& signs);

/// Ungraded trace on the 2^n-dimensional fiber; tr(identity) = 2^n.
Integer clifford_tr(const CliffordWord& w, int n);

/// Graded trace normalized so that (-1)^n str(top word) = 1.
Integer clifford_str(const CliffordWord& w, int n);

/// Matrix of the word on the 2^n fiber basis (row-major, entries -1/0/+1);
/// basis states are subsets of {1..n} ordered by their bitmask value.
std::vector<std::vector<int>> clifford_matrix(const CliffordWord& w, int n);

}  // namespace heis
