#pragma once

#include "heis/symbol.hpp"

namespace heis {

/// Exact Heisenberg sphere moment: integral of p^gamma over {rho = 1} against
/// the dilation measure iota_L(dp). Vanishes when any gamma_i is odd;
/// otherwise
///   [4 / Gamma((<gamma>+Q)/4)] prod_{i<=v} (1/2)Gamma((gamma_i+1)/4)
///                              prod_{j>v} Gamma((gamma_j+1)/2).
ExactScalar sphere_moment(const MultiIndex& gamma, const FoliationShape& shape, int modulus);

/// Connes-Moscovici Wodzicki residue of a classical symbol:
/// (2 pi)^{-n} sum over degree -Q terms of
/// torus_integral(coeff) . tr_F(word) . sphere_moment(gamma), where tr_F is
/// the fiber endomorphism trace normalized so the trivial word counts 1 (the
/// scalar calculus convention; see NOTES in the tests pinning the Toeplitz
/// index magnitude).
ExactScalar wres(const HSymbol& a);

/// Variant used by the canonical graded trace: identical up to the trace
/// applied to residual Clifford words.
enum class WordTrace { NormalizedTr, NormalizedStr };
ExactScalar wres_with(const HSymbol& a, WordTrace wt);

/// Numeric cross-check: integrates p^gamma rho^{-(<gamma>+Q)/4} over the
/// Heisenberg annulus {1 <= rho <= e^4} by iterated adaptive quadrature with
/// exact section bounds; equals the sphere moment by homogeneity.
double annulus_oracle(const MultiIndex& gamma, const FoliationShape& shape, double tol);

}  // namespace heis
