#pragma once

#include "heis/exact_scalar.hpp"

#include <vector>

namespace heis {

/// Truncated formal power series in epsilon with ExactScalar coefficients,
/// coefficients of eps^{>trunc} discarded.
class EpsSeries {
public:
    EpsSeries() : modulus_(0), trunc_(0) {}
    EpsSeries(int modulus, int trunc) : modulus_(modulus), trunc_(trunc), c_(trunc + 1, ExactScalar::zero(modulus)) {}

    static EpsSeries constant(int modulus, int trunc, const ExactScalar& a);
    static EpsSeries one(int modulus, int trunc) { return constant(modulus, trunc, ExactScalar::one(modulus)); }

    int modulus() const { return modulus_; }
    int trunc() const { return trunc_; }
    const ExactScalar& operator[](int k) const { return c_.at(k); }
    void set(int k, const ExactScalar& a) {
        if (k <= trunc_) c_.at(k) = a;
    }
    bool is_zero() const;
    /// True when the eps^0 coefficient vanishes.
    bool nilpotent() const { return c_.empty() || c_[0].is_zero(); }

    EpsSeries operator+(const EpsSeries& o) const;
    EpsSeries operator-(const EpsSeries& o) const;
    EpsSeries operator-() const;
    EpsSeries operator*(const EpsSeries& o) const;
    EpsSeries& operator+=(const EpsSeries& o) { return *this = *this + o; }
    EpsSeries& operator*=(const EpsSeries& o) { return *this = *this * o; }
    bool operator==(const EpsSeries& o) const;

    EpsSeries scaled(const Rational& q) const;
    EpsSeries scaled(const ExactScalar& a) const;
    /// exp of a series with no constant term.
    EpsSeries exp() const;
    /// log of a series with constant term 1.
    EpsSeries log() const;
    /// inverse of a series with invertible (monomial) constant term.
    EpsSeries inverse() const;

private:
    int modulus_;
    int trunc_;
    std::vector<ExactScalar> c_;
};

/// Small dense matrix over EpsSeries.
using EpsMatrix = std::vector<std::vector<EpsSeries>>;

EpsMatrix eps_mat_mul(const EpsMatrix& a, const EpsMatrix& b);
EpsMatrix eps_mat_add(const EpsMatrix& a, const EpsMatrix& b);
EpsMatrix eps_mat_identity(int n, int modulus, int trunc);
EpsSeries eps_mat_trace(const EpsMatrix& a);

/// Todd series Td(R) = det(R/(e^R - 1)), computed as exp(-tr log B) with
/// B = sum_{k>=0} R^k/(k+1)!; requires R nilpotent in eps (no eps^0 term).
EpsSeries todd_series(const EpsMatrix& R, int trunc);

}  // namespace heis
