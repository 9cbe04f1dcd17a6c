#pragma once

#include "heis/rational.hpp"

#include <vector>

namespace heis {

/// An element of the cyclotomic field Q(zeta_N), stored as a coefficient
/// vector of length phi(N) in the power basis {1, zeta, ..., zeta^{phi(N)-1}}
/// reduced modulo the N-th cyclotomic polynomial. The session modulus N must
/// be a positive multiple of 8 so that sqrt(2) = zeta_8 + zeta_8^{-1} and
/// i = zeta_4 are available.
class Cyclotomic {
public:
    Cyclotomic() : n_(0) {}  // unusable sentinel; real values carry N >= 1
    explicit Cyclotomic(int modulus);
    Cyclotomic(int modulus, const Rational& value);

    static Cyclotomic zero(int modulus) { return Cyclotomic(modulus); }
    static Cyclotomic one(int modulus) { return Cyclotomic(modulus, 1); }
    static Cyclotomic from_rational(int modulus, const Rational& q) { return Cyclotomic(modulus, q); }
    /// zeta_N^k (k may be negative).
    static Cyclotomic zeta_pow(int modulus, long k);
    /// The imaginary unit i = zeta_N^{N/4}.
    static Cyclotomic imaginary_unit(int modulus);
    /// sqrt(2) = zeta_8 + zeta_8^{-1}, embedded via zeta_8 = zeta_N^{N/8}.
    static Cyclotomic sqrt_two(int modulus);
    /// e^{2 pi i q} for rational q; denominator of q must divide N.
    static Cyclotomic root_of_unity(int modulus, const Rational& q);

    int modulus() const { return n_; }
    int degree() const { return static_cast<int>(c_.size()); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Valid only when is_rational().
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    /// Total order for canonical container keys.
    int compare(const Cyclotomic& o) const;

    /// Field inverse; fails on zero.
    Cyclotomic inverse() const;
    /// Complex conjugation zeta -> zeta^{-1}.
    Cyclotomic conj() const;
    /// Embed into Q(zeta_M); requires N | M.
    Cyclotomic lift(int bigger_modulus) const;

    Cyclotomic scaled(const Rational& q) const;

private:
    int n_;
    std::vector<Rational> c_;  // size phi(N), canonical

    void trim_check() const;
};

/// phi(N)
int euler_phi(int n);

/// Coefficients of the N-th cyclotomic polynomial (monic, integer, ascending).
const std::vector<Integer>& cyclotomic_polynomial(int n);

}  // namespace heis
