#pragma once

#include "heis/opalg.hpp"

namespace heis {

/// Correction datum for a de Rham-Dirac operator: a term
/// (r^i_alpha)_L psibar_{iR} dp^alpha with |alpha| >= 2.
struct DeRhamCorrection {
    int index;  // 1-based psibar index
    MultiIndex alpha;
    FourierFunction coeff;
};

/// Scalar-type correction for affine Dirac operators:
/// i eps (s_alpha_i)_L psi^i_R dp^alpha with |alpha| >= 1.
struct AffineCorrection {
    int index;  // 1-based psi index
    MultiIndex alpha;
    FourierFunction coeff;
};

/// Christoffel data Gamma^k_{ij}(x), symmetric in (i,j). To stay inside the
/// Heisenberg filtration on a foliated torus the connection must preserve the
/// leaf block: Gamma^k_{ij} = 0 whenever k > v and min(i,j) <= v.
struct ChristoffelData {
    FoliationShape shape;
    int modulus = 0;
    // gamma[k][i][j], 0-based
    std::vector<std::vector<std::vector<FourierFunction>>> gamma;

    const FourierFunction& at(int k, int i, int j) const { return gamma[k][i][j]; }
    void validate() const;
};

struct DiracDescriptor {
    enum Kind { DeRham, Affine } kind = DeRham;
    FoliationShape shape;
    int modulus = 0;
    std::vector<DeRhamCorrection> de_rham;  // kind == DeRham
    ChristoffelData christoffel;            // kind == Affine
    std::vector<AffineCorrection> affine_s;
};

/// Builds D as an operator series:
/// de Rham: D = -i eps d_R + psibar_R(dp + corrections)
///            = eps (p_i)_L psi^i_R + i eps psi^i_R dx_i + psibar_{iR} dp_i + ...
/// affine:  D = i eps psi^i_R(nabla^Gamma_i + s) + psibar_{iR} dp_i
/// Validates D in D^1_1 + D^{-1/2}_0 (DescriptorInvalid otherwise).
OpSeries build_dirac(const DiracDescriptor& d, int eps_truncation);

/// -D^2; a generalized Laplacian for every valid descriptor.
OpSeries dirac_square(const DiracDescriptor& d, int eps_truncation);

/// R^k_{lij} = dx_i Gamma^k_{jl} - dx_j Gamma^k_{il}
///           + Gamma^k_{im} Gamma^m_{jl} - Gamma^k_{jm} Gamma^m_{il}.
/// Returned as tensor [k][l][i][j].
std::vector<std::vector<std::vector<std::vector<FourierFunction>>>> curvature_tensor(
    const ChristoffelData& c);

/// Coefficient of eps^2 (p_k)_L (psi^i psi^j)_R dp_l (i<j, no dx) in an
/// operator series; the Lichnerowicz comparison slot. Tensor [k][l][i][j]
/// filled for i < j.
std::vector<std::vector<std::vector<std::vector<FourierFunction>>>> extract_curvature_slot(
    const OpSeries& minus_d2);

}  // namespace heis
