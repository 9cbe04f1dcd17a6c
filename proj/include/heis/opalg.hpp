#pragma once

#include "heis/eps_series.hpp"
#include "heis/residue.hpp"
#include "heis/symbol.hpp"

#include <map>
#include <vector>

namespace heis {

/// Canonical-form tag of an operator term a_L w_R dx^alpha dp^beta eps^k
/// acting on symbols: left star-multiplier, right Clifford multiplier (with
/// Koszul sign), then derivatives. The left symbol is the map value.
struct OpKey {
    CliffordWord rightWord;
    MultiIndex dx;
    MultiIndex dp;
    int epsPow = 0;

    bool operator<(const OpKey& o) const {
        if (epsPow != o.epsPow) return epsPow < o.epsPow;
        if (!(rightWord == o.rightWord)) return rightWord < o.rightWord;
        if (dx != o.dx) return dx < o.dx;
        return dp < o.dp;
    }
    bool operator==(const OpKey& o) const {
        return rightWord == o.rightWord && dx == o.dx && dp == o.dp && epsPow == o.epsPow;
    }
};

/// Element of the bimodule algebra D(M): finite sum of canonical terms,
/// coefficients of eps^{>epsTruncation} unknown.
class OpSeries {
public:
    OpSeries() = default;
    OpSeries(FoliationShape shape, int modulus, int eps_truncation)
        : shape_(shape), modulus_(modulus), trunc_(eps_truncation) {}

    static OpSeries identity(FoliationShape shape, int modulus, int eps_truncation);
    /// Left star-multiplication by a symbol.
    static OpSeries left_symbol(const HSymbol& a, int eps_truncation, int eps_pow = 0);
    /// Single canonical term.
    static OpSeries term(FoliationShape shape, const HSymbol& leftSym, const CliffordWord& w,
                         const MultiIndex& dx, const MultiIndex& dp, int epsPow, int eps_truncation);

    const FoliationShape& shape() const { return shape_; }
    int modulus() const { return modulus_; }
    int eps_truncation() const { return trunc_; }
    const std::map<OpKey, HSymbol>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const OpKey& key, const HSymbol& leftSym);
    OpSeries operator+(const OpSeries& o) const;
    OpSeries operator-(const OpSeries& o) const;
    OpSeries operator-() const;
    bool operator==(const OpSeries& o) const;

    OpSeries scaled(const ExactScalar& c) const;
    OpSeries scaled(const Rational& q) const;
    OpSeries with_truncation(int n) const;
    /// 0 even, 1 odd, -1 mixed.
    int parity() const;

private:
    FoliationShape shape_;
    int modulus_ = 0;
    int trunc_ = 0;
    std::map<OpKey, HSymbol> terms_;
};

/// Composition in D(M); canonical form restored by Leibniz moves and graded
/// commutation of right words past left symbols.
OpSeries op_compose(const OpSeries& s, const OpSeries& t);

OpSeries op_commutator(const OpSeries& s, const OpSeries& t);

/// Membership test for the bi-filtration D^m_k. The order bound per term is
///   ord(leftSym component) <= m + (k + sum_i (2 d_i - 1) beta_i - 3|alpha|)/2
/// with d_i the Heisenberg weight of direction i; this reduces to the plain
/// (k + |beta| - 3|alpha|)/2 rule when all weights are 1 and extends it
/// parabolically to transverse directions. Additionally |alpha| <= k.
/// `two_m` is 2m (integer), `k` the minimal eps power.
bool in_filtration(const OpSeries& s, int two_m, int k);

/// Smallest 2m with in_filtration(s, 2m, 0); INT_MIN for the zero series.
int filtration_two_m(const OpSeries& s);

struct GeneralizedLaplacian {
    OpSeries op;
};

/// iota eps sum_i d_{x^i} d_{p_i}.
GeneralizedLaplacian flat_laplacian(const FoliationShape& shape, int modulus, int eps_truncation);

/// Even parity, member of D^{1/2}_1, and equal to the flat Laplacian mod D^0_1.
bool is_generalized_laplacian(const OpSeries& s);

/// Polynomial in t with OpSeries coefficients.
using OpPolynomial = std::vector<OpSeries>;

/// sigma_Delta^t(s) = sum_j (t^j/j!) ad(Delta)^j (s); finite mod eps^{N+1}.
OpPolynomial sigma_conj(const GeneralizedLaplacian& delta, const OpSeries& s);

OpSeries op_poly_eval_one(const OpPolynomial& p);

/// Trace-class element: prefactor . exp(flat Delta).
struct TraceClassElement {
    OpSeries prefactor;
};

/// Duhamel expansion of exp(Delta + s) relative to exp(Delta):
/// prefactor = sum_k int_{0<=u_1<=..<=u_k<=1} sigma^{u_1}(s)..sigma^{u_k}(s) du,
/// simplex integrals evaluated exactly. Requires every term of s to carry eps.
TraceClassElement duhamel_exp(const GeneralizedLaplacian& delta, const OpSeries& s);

/// exp(Delta + s) as a direct operator series sum_j (Delta+s)^j / j! mod
/// eps^{N+1}; the independent oracle for the Duhamel expansion.
OpSeries exp_direct(const OpSeries& total, int eps_truncation);

/// First displayed Duhamel form: sum_k int exp(t_0 D) s exp(t_1 D) ... s exp(t_k D) dt.
OpSeries duhamel_first_form(const GeneralizedLaplacian& delta, const OpSeries& s);

/// <dx^alpha dp^beta exp Delta> = [alpha == beta] alpha! (i/eps)^{|alpha|},
/// by enumeration of Kronecker matchings. Returns the scalar factor and the
/// power of eps^{-1}.
struct BracketValue {
    ExactScalar coeff;  // includes i^{|alpha|} and the matching count
    int epsNeg = 0;     // |alpha|
};
BracketValue bracket_contract(const MultiIndex& dx, const MultiIndex& dp, int modulus);

/// Symbol-valued Laurent polynomial in eps (finitely many terms).
using EpsSymbol = std::map<int, HSymbol>;

/// <<s exp Delta>>: right words contracted by (-1)^n tr_s, derivative words by
/// bracket_contract, left symbols kept.
EpsSymbol double_bracket(const TraceClassElement& t);

/// Scalar contraction without the right-word supertrace (right words must be
/// trivial); used by the Mehler bracket. Fails if any contracted term retains
/// p- or x-dependence.
EpsSeries scalar_bracket(const OpSeries& prefactor, int eps_truncation);

/// Canonical graded trace Tr_s = wres(<<t>>[n]); residual left Clifford
/// factors are traced with `residual`.
ExactScalar tr_s(const TraceClassElement& t, WordTrace residual = WordTrace::NormalizedTr);

/// <exp(Delta + p_L R dp)> as a scalar eps-series; equals Td(R).
EpsSeries mehler_bracket(const EpsMatrix& R, int eps_truncation);

/// <(i eps dx + p_L R)^alpha exp(Delta + p_L R dp)>; vanishes identically.
EpsSeries mehler_vanishing(const MultiIndex& alpha, const EpsMatrix& R, int eps_truncation);

/// sigma^1_Delta(s): conjugation by exp(Delta) evaluated at t = 1.
OpSeries sigma_at_one(const GeneralizedLaplacian& delta, const OpSeries& s);

}  // namespace heis
