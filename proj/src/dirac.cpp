#include "heis/dirac.hpp"

namespace heis {

void ChristoffelData::validate() const {
    const int n = shape.n();
    if (static_cast<int>(gamma.size()) != n) fail(ErrorKind::DescriptorInvalid, "christoffel rank");
    for (int k = 0; k < n; ++k) {
        if (static_cast<int>(gamma[k].size()) != n) fail(ErrorKind::DescriptorInvalid, "christoffel rank");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(gamma[k][i].size()) != n)
                fail(ErrorKind::DescriptorInvalid, "christoffel rank");
            for (int j = 0; j < n; ++j) {
                if (!(gamma[k][i][j] == gamma[k][j][i]))
                    fail(ErrorKind::DescriptorInvalid, "christoffel symbols must be symmetric in (i,j)");
                bool k_trans = !shape.is_leaf(k + 1);
                bool touches_leaf = shape.is_leaf(i + 1) || shape.is_leaf(j + 1);
                if (k_trans && touches_leaf && !gamma[k][i][j].is_zero())
                    fail(ErrorKind::DescriptorInvalid,
                         "connection must preserve the foliation: Gamma^{trans}_{leaf,*} = 0");
            }
        }
    }
}

OpSeries build_dirac(const DiracDescriptor& d, int eps_truncation) {
    const FoliationShape& shape = d.shape;
    const int n = shape.n();
    const int modulus = d.modulus;
    OpSeries D(shape, modulus, eps_truncation);
    ExactScalar i_unit = ExactScalar::i_unit(modulus);

    // common part: nabla-bar leading term psibar_{iR} dp_i
    for (int i = 0; i < n; ++i)
        D.add(OpKey{CliffordWord::single_psi_bar(i + 1), mi_zero(n), mi_unit(n, i), 0},
              HSymbol::one(shape, modulus));

    if (d.kind == DiracDescriptor::DeRham) {
        // -i eps d_R = eps (p_i)_L psi^i_R + i eps psi^i_R dx_i
        for (int i = 0; i < n; ++i) {
            D.add(OpKey{CliffordWord::single_psi(i + 1), mi_zero(n), mi_zero(n), 1},
                  HSymbol::term(shape, FourierFunction::one(n, modulus), mi_unit(n, i), 0, 0, {}));
            D.add(OpKey{CliffordWord::single_psi(i + 1), mi_unit(n, i), mi_zero(n), 1},
                  HSymbol::constant(shape, i_unit));
        }
        for (const auto& corr : d.de_rham) {
            if (mi_total(corr.alpha) < 2)
                fail(ErrorKind::DescriptorInvalid, "de Rham correction needs |alpha| >= 2");
            if (corr.index < 1 || corr.index > n) fail(ErrorKind::DescriptorInvalid, "bad psibar index");
            D.add(OpKey{CliffordWord::single_psi_bar(corr.index), mi_zero(n), corr.alpha, 0},
                  HSymbol::term(shape, corr.coeff, mi_zero(n), 0, 0, {}));
        }
    } else {
        d.christoffel.validate();
        // i eps psi^i_R nabla^Gamma_i with
        // nabla^Gamma_i = dx_i + Gamma^k_{ij}((p_k)_L dp_j + [psibar_k psi^j, .]);
        // psibar_k psi^j = delta_jk - psi^j psibar_k, so the commutator equals
        // -(psi^j psibar_k)_L + R_{psi^j psibar_k}.
        for (int i = 0; i < n; ++i) {
            CliffordWord psi_i = CliffordWord::single_psi(i + 1);
            D.add(OpKey{psi_i, mi_unit(n, i), mi_zero(n), 1}, HSymbol::constant(shape, i_unit));
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) {
                    const FourierFunction& g = d.christoffel.at(k, i, j);
                    if (g.is_zero()) continue;
                    // i eps (Gamma p_k)_L psi^i_R dp_j
                    D.add(OpKey{psi_i, mi_zero(n), mi_unit(n, j), 1},
                          HSymbol::term(shape, g, mi_unit(n, k), 0, 0, {}).scaled(i_unit));
                    CliffordWord w{1u << j, 1u << k};  // psi^j psibar_k, normal order
                    // - i eps (Gamma psi^j psibar_k)_L psi^i_R
                    D.add(OpKey{psi_i, mi_zero(n), mi_zero(n), 1},
                          HSymbol::term(shape, g, mi_zero(n), 0, 0, w).scaled(-i_unit));
                    // + i eps (Gamma)_L R_{psi_i} o R_w = + i eps Gamma R_{w psi^i} (w even)
                    for (const auto& sw : clifford_mul(w, psi_i)) {
                        HSymbol coeff = HSymbol::term(shape, g, mi_zero(n), 0, 0, {})
                                            .scaled(i_unit)
                                            .scaled(ExactScalar::from_rational(modulus, sw.sign));
                        D.add(OpKey{sw.word, mi_zero(n), mi_zero(n), 1}, coeff);
                    }
                }
        }
        for (const auto& corr : d.affine_s) {
            if (mi_total(corr.alpha) < 1)
                fail(ErrorKind::DescriptorInvalid, "affine s-correction needs |alpha| >= 1");
            D.add(OpKey{CliffordWord::single_psi(corr.index), mi_zero(n), corr.alpha, 1},
                  HSymbol::term(shape, corr.coeff, mi_zero(n), 0, 0, {}).scaled(i_unit));
        }
    }

    // D in D^1_1 + D^{-1/2}_0. The eps (p_i)_L psi^i_R part of d_R carries
    // 2m = 2 d_i - 1, i.e. 3 in transverse directions; the bound below is the
    // tight one attained by the standard generators per block.
    OpSeries part1(shape, modulus, eps_truncation), part0(shape, modulus, eps_truncation);
    for (const auto& [k, a] : D.terms()) {
        if (k.epsPow >= 1)
            part1.add(k, a);
        else
            part0.add(k, a);
    }
    int bound1 = shape.h >= 1 ? 3 : 2;
    if (!in_filtration(part1, bound1, 1) || !in_filtration(part0, -1, 0))
        fail(ErrorKind::DescriptorInvalid, "descriptor leaves the Dirac filtration window");
    return D;
}

OpSeries dirac_square(const DiracDescriptor& d, int eps_truncation) {
    OpSeries D = build_dirac(d, eps_truncation);
    return -op_compose(D, D);
}

std::vector<std::vector<std::vector<std::vector<FourierFunction>>>> curvature_tensor(
    const ChristoffelData& c) {
    c.validate();
    const int n = c.shape.n();
    std::vector r(n, std::vector(n, std::vector(n, std::vector<FourierFunction>(
                                        n, FourierFunction::zero(n, c.modulus)))));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    FourierFunction v = c.at(k, j, l).deriv(i) - c.at(k, i, l).deriv(j);
                    for (int m = 0; m < n; ++m)
                        v = v + c.at(k, i, m) * c.at(m, j, l) - c.at(k, j, m) * c.at(m, i, l);
                    r[k][l][i][j] = v;
                }
    return r;
}

std::vector<std::vector<std::vector<std::vector<FourierFunction>>>> extract_curvature_slot(
    const OpSeries& s) {
    const FoliationShape& shape = s.shape();
    const int n = shape.n();
    const int modulus = s.modulus();
    std::vector out(n, std::vector(n, std::vector(n, std::vector<FourierFunction>(
                                          n, FourierFunction::zero(n, modulus)))));
    for (const auto& [key, leftSym] : s.terms()) {
        if (key.epsPow != 2 || mi_total(key.dx) != 0 || mi_total(key.dp) != 1) continue;
        if (key.rightWord.psiBar != 0) continue;
        if (__builtin_popcount(key.rightWord.psi) != 2) continue;
        int i = __builtin_ctz(key.rightWord.psi);
        int j = 31 - __builtin_clz(key.rightWord.psi);
        int l = 0;
        while (key.dp[l] == 0) ++l;
        for (const auto& [d, comp] : leftSym.components())
            for (const auto& [tk, c] : comp) {
                if (mi_total(tk.gamma) != 1 || tk.rhoQuarter != 0 || tk.logPow != 0 || !tk.word.trivial())
                    continue;
                int k = 0;
                while (tk.gamma[k] == 0) ++k;
                out[k][l][i][j] = out[k][l][i][j] + c;
            }
    }
    return out;
}

}  // namespace heis
