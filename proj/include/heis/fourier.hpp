#pragma once

#include "heis/exact_scalar.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace heis {

/// Trigonometric polynomial f(x) = sum_k c_k e^{2 pi i k.x} on the torus T^n,
/// with exact coefficients. Zero coefficients are never stored.
class FourierFunction {
public:
    using Mode = std::vector<int>;

    FourierFunction() : dim_(0), modulus_(0) {}
    FourierFunction(int dim, int modulus) : dim_(dim), modulus_(modulus) {}

    static FourierFunction constant(int dim, const ExactScalar& c);
    static FourierFunction character(int dim, const Mode& k, const ExactScalar& c);
    static FourierFunction zero(int dim, int modulus) { return FourierFunction(dim, modulus); }
    static FourierFunction one(int dim, int modulus) {
        return constant(dim, ExactScalar::one(modulus));
    }

    int dim() const { return dim_; }
    int modulus() const { return modulus_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Mode, ExactScalar>& coeffs() const { return coeffs_; }
    ExactScalar coeff(const Mode& k) const;

    void set_coeff(const Mode& k, const ExactScalar& c);
    void add_coeff(const Mode& k, const ExactScalar& c);

    FourierFunction operator+(const FourierFunction& o) const;
    FourierFunction operator-(const FourierFunction& o) const;
    FourierFunction operator-() const;
    FourierFunction operator*(const FourierFunction& o) const;  // support convolution
    bool operator==(const FourierFunction& o) const;
    bool operator!=(const FourierFunction& o) const { return !(*this == o); }

    FourierFunction scaled(const ExactScalar& c) const;
    /// d/dx_j: multiplies c_k by 2 pi i k_j.
    FourierFunction deriv(int j) const;
    FourierFunction conj() const;
    /// Integral over the torus (volume 1): the zero-mode coefficient.
    ExactScalar integral() const;
    /// True iff the support is {0} or empty.
    bool is_constant() const;
    /// Pullback under x -> P x + b, P given through mode transpose action
    /// k -> P^T k; picks up the character twist e^{2 pi i k.b}.
    FourierFunction pullback_affine(const std::vector<std::vector<int>>& p_matrix,
                                    const std::vector<Rational>& translation) const;

private:
    int dim_;
    int modulus_;
    std::map<Mode, ExactScalar> coeffs_;

    void check_same(const FourierFunction& o) const;
};

}  // namespace heis
