#pragma once

#include "heis/clifford.hpp"
#include "heis/fourier.hpp"
#include "heis/shape.hpp"

#include <map>
#include <optional>
#include <string>

namespace heis {

/// Key of a canonical symbol term: the coefficient-free part
/// p^gamma rho^{rhoQuarter/4} (log rho)^{logPow} (Clifford word). The last
/// gamma entry is kept reduced through the defining relation of rho so that
/// distinct keys are linearly independent functions on T^n x (R^n \ 0):
///   n = 1:          p_1^2   -> rho^{1/2}
///   h >= 1:         p_n^2   -> rho - sum_{i<=v} p_i^4 - sum_{v<j<n} p_j^2
///   h = 0, n >= 2:  p_n^4   -> rho - sum_{i<n} p_i^4
struct TermKey {
    MultiIndex gamma;
    int rhoQuarter = 0;
    uint8_t logPow = 0;
    CliffordWord word;

    bool operator<(const TermKey& o) const;
    bool operator==(const TermKey& o) const {
        return gamma == o.gamma && rhoQuarter == o.rhoQuarter && logPow == o.logPow && word == o.word;
    }
    /// Heisenberg degree of the log-free part.
    int degree(const FoliationShape& shape) const { return mi_weight(gamma, shape) + rhoQuarter; }
};

/// A graded formal classical Heisenberg symbol, truncated below `floor`.
/// `floor == nullopt` means the symbol is exact: components below the stored
/// range are known to vanish. Otherwise components below floor are unknown.
class HSymbol {
public:
    using Component = std::map<TermKey, FourierFunction>;

    HSymbol() = default;
    HSymbol(FoliationShape shape, int modulus, int top, std::optional<int> floor = std::nullopt)
        : shape_(shape), modulus_(modulus), top_(top), floor_(floor) {}

    static HSymbol zero(FoliationShape shape, int modulus, int top = 0,
                        std::optional<int> floor = std::nullopt) {
        return HSymbol(shape, modulus, top, floor);
    }
    static HSymbol one(FoliationShape shape, int modulus);
    static HSymbol constant(FoliationShape shape, const ExactScalar& c);
    /// Single term c(x) p^gamma rho^{q/4} (log rho)^{logPow} w.
    static HSymbol term(FoliationShape shape, const FourierFunction& coeff, const MultiIndex& gamma,
                        int rhoQuarter, int logPow, const CliffordWord& word);

    const FoliationShape& shape() const { return shape_; }
    int modulus() const { return modulus_; }
    int top() const { return top_; }
    std::optional<int> floor() const { return floor_; }
    bool is_exact() const { return !floor_.has_value(); }
    /// Lowest degree at which content is stored/known; for exact symbols the
    /// lowest nonzero component (or top when empty).
    int effective_floor() const;

    const std::map<int, Component>& components() const { return comps_; }
    Component component(int degree) const;
    bool is_zero() const { return comps_.empty(); }
    bool is_classical() const;
    /// True when the top component exists and carries only trivial words.
    bool scalar_type_leading() const;
    int max_clifford_index() const;

    void add_term(const FourierFunction& coeff, const TermKey& key);
    HSymbol operator+(const HSymbol& o) const;
    HSymbol operator-(const HSymbol& o) const;
    HSymbol operator-() const;
    bool operator==(const HSymbol& o) const;
    bool operator!=(const HSymbol& o) const { return !(*this == o); }

    HSymbol scaled(const ExactScalar& c) const;
    HSymbol with_top(int new_top) const;
    /// Truncation to degrees >= f (marks the result as truncated).
    HSymbol truncated(int f) const;
    /// Re-tags an exact symbol whose expansion terminates; keeps exactness.
    HSymbol dp(int i) const;  // d/dp_i, 0-based
    HSymbol dx(int i) const;  // d/dx^i, 0-based
    /// Fiberwise (pointwise) product, no star corrections.
    HSymbol pointwise(const HSymbol& o) const;
    /// Multiply by p_i (0-based).
    HSymbol times_p(int i) const;
    /// Degree-`top` component as an exact symbol (leading symbol).
    HSymbol leading() const;
    int parity_of_terms() const;  // 0 even, 1 odd, -1 mixed
    std::string to_string() const;

private:
    FoliationShape shape_;
    int modulus_ = 0;
    int top_ = 0;
    std::optional<int> floor_;
    std::map<int, Component> comps_;

    void reduce_and_add(const FourierFunction& coeff, TermKey key);
    friend HSymbol star(const HSymbol&, const HSymbol&);
};

/// Composition of symbols: sum_alpha ((-i)^{|alpha|}/alpha!) dp^alpha a . dx^alpha b,
/// with fiberwise Clifford multiplication. Result trusted on degrees >=
/// max(a.floor + b.top, a.top + b.floor); exact when the expansion terminates.
HSymbol star(const HSymbol& a, const HSymbol& b);

/// Graded star-commutator a*b - (-1)^{|a||b|} b*a (plain commutator when a
/// parity is mixed is not defined; both inputs must have pure parity for the
/// graded variant). Plain commutator:
HSymbol star_commutator(const HSymbol& a, const HSymbol& b);

enum class BuilderKind { Rho, Q1, ChiPlus, SubLaplacian };

/// rho, rho^{1/4}, the sphere-region indicator (1 + p_i rho^{-d_i/4})/2, or
/// the exact flat sub-Laplacian symbol (= rho on the flat torus).
HSymbol build_symbol(BuilderKind kind, const FoliationShape& shape, int modulus, int index = 1);

bool is_heisenberg_elliptic(const HSymbol& a);

/// Two-sided star-inverse mod degrees < floor, by Neumann iteration on the
/// leading inverse. Requires is_heisenberg_elliptic(a).
HSymbol parametrix(const HSymbol& a, int floor);

/// [L, b]_star with L = (1/4) log rho, the exact formal symbol of
/// log Delta_H^{1/4} on the flat torus. Classical output.
HSymbol log_commutator(const HSymbol& b);

/// The symbol L = (1/4) log rho itself (exact, degree 0, logPow 1).
HSymbol log_quarter_rho(const FoliationShape& shape, int modulus);

}  // namespace heis
