#pragma once

#include "heis/symbol.hpp"

#include <map>
#include <vector>

namespace heis {

/// A foliated torus isometry x -> Px + b: P a signed permutation matrix
/// preserving the leaf block {1..v} and the transverse block {v+1..n}
/// (hence rho(Pp) = rho(p), the exactness condition), b a rational
/// translation whose denominators divide the session cyclotomic modulus.
class IsometryElement {
public:
    /// perm and sign are 1-indexed: P e_j = sign[j] e_{perm[j]}.
    IsometryElement(const FoliationShape& shape, std::vector<int> perm, std::vector<int> sign,
                    std::vector<Rational> trans, int modulus);
    static IsometryElement identity(const FoliationShape& shape, int modulus);

    const FoliationShape& shape() const { return shape_; }
    int modulus() const { return modulus_; }
    const std::vector<int>& perm() const { return perm_; }
    const std::vector<int>& sign() const { return sign_; }
    const std::vector<Rational>& trans() const { return trans_; }
    bool is_identity() const;

    /// Group law from T_{g1 g2} = T_{g1} o T_{g2}: (P1 P2, P1 b2 + b1).
    IsometryElement operator*(const IsometryElement& o) const;
    IsometryElement inverse() const;
    bool operator==(const IsometryElement& o) const;
    bool operator<(const IsometryElement& o) const;

    /// Matrix entries of P as an integer matrix (row i, col j), 0-based.
    std::vector<std::vector<int>> matrix() const;

private:
    FoliationShape shape_;
    int modulus_;
    std::vector<int> perm_;        // size n+1, entry 0 unused
    std::vector<int> sign_;        // size n+1, entry 0 unused
    std::vector<Rational> trans_;  // size n, reduced mod 1
};

/// Exact pullback action a(x,p) -> a(Px + b, Pp) with Clifford indices
/// renamed accordingly; a star-algebra automorphism preserving wres.
HSymbol act_on_symbol(const IsometryElement& g, const HSymbol& a);

/// Element of S_H x| G: finitely supported map g -> a_g, representing
/// sum_g a_g U_g.
class CrossedSymbol {
public:
    CrossedSymbol() = default;
    CrossedSymbol(FoliationShape shape, int modulus) : shape_(shape), modulus_(modulus) {}
    static CrossedSymbol unit_component(const HSymbol& a, const IsometryElement& g);

    const FoliationShape& shape() const { return shape_; }
    int modulus() const { return modulus_; }
    const std::map<IsometryElement, HSymbol>& support() const { return terms_; }
    void add(const IsometryElement& g, const HSymbol& a);
    HSymbol component(const IsometryElement& g) const;

    CrossedSymbol operator+(const CrossedSymbol& o) const;
    CrossedSymbol operator-() const;
    CrossedSymbol operator-(const CrossedSymbol& o) const { return *this + (-o); }

private:
    FoliationShape shape_;
    int modulus_ = 0;
    std::map<IsometryElement, HSymbol> terms_;
};

/// (a U_g)(b U_h) = (a * alpha_g(b)) U_{gh}, extended bilinearly.
CrossedSymbol crossed_star(const CrossedSymbol& A, const CrossedSymbol& B);

/// wres of the unit component.
ExactScalar localized_residue(const CrossedSymbol& A);

/// Equivariant Radul cocycle phi(aU_g, bU_h) = [gh = e] wres(a * alpha_g([L, b])).
ExactScalar radul_cocycle(const CrossedSymbol& A, const CrossedSymbol& B);

/// Canonical splitting of a degree-0 leading symbol: re-tags the degree-0
/// homogeneous data as a one-component symbol. leading(leading_lift(f)) = f.
HSymbol leading_lift(const HSymbol& degree_zero_data);

/// Restriction of the degree-0 part of a 1-D symbol to the sphere point
/// p = sigma (sigma = +-1), as a function on T^1.
FourierFunction sphere_restrict_1d(const HSymbol& a, int sigma);

/// (1/2pi) [ int r_+(a0) d r_+(a1) - int r_-(a0) d r_-(a1) ]: the pairing with
/// the fundamental class of S*T^1, whose two components carry opposite
/// orientations.
ExactScalar fundamental_pairing_1d(const HSymbol& a0, const HSymbol& a1);

/// Index of the Toeplitz operator with symbol r_+(a1), from the rank of the
/// rectangular truncation on Fourier modes 0..cutoff. Requires a dominant
/// character (which also certifies invertibility).
long toeplitz_index_oracle_1d(const HSymbol& a1, int cutoff);

}  // namespace heis
