#pragma once

#include "heis/cyclotomic.hpp"

#include <map>
#include <string>
#include <utility>

namespace heis {

/// Exact value in the ring Q(zeta_N)[pi^{+-1/2}, Gamma(1/4)^{+-1}], the scalar
/// domain of all residues and traces produced by the engine. pi^{1/2} and
/// Gamma(1/4) are treated as independent transcendental atoms; every Gamma
/// value at quarter-integers reduces into this basis through the recursion
/// Gamma(z+1) = z Gamma(z), the reflection value Gamma(1/4)Gamma(3/4) =
/// pi sqrt(2) and Gamma(1/2) = pi^{1/2}.
class ExactScalar {
public:
    /// Key: (piHalfExp, gammaQuarterExp), value: coefficient in Q(zeta_N).
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, Cyclotomic>;

    ExactScalar() : n_(0) {}
    explicit ExactScalar(int modulus) : n_(modulus) {}

    static ExactScalar zero(int modulus) { return ExactScalar(modulus); }
    static ExactScalar one(int modulus) { return from_rational(modulus, 1); }
    static ExactScalar from_rational(int modulus, const Rational& q);
    static ExactScalar from_cyclotomic(const Cyclotomic& c);
    /// coeff * pi^{piHalf/2} * Gamma(1/4)^{gammaQuarter}
    static ExactScalar monomial(const Cyclotomic& coeff, int piHalf, int gammaQuarter);
    static ExactScalar i_unit(int modulus) { return from_cyclotomic(Cyclotomic::imaginary_unit(modulus)); }
    static ExactScalar pi_half_pow(int modulus, int k) {
        return monomial(Cyclotomic::one(modulus), k, 0);
    }
    /// Gamma(k/4) in normal form; k must not be a non-positive multiple of 4.
    static ExactScalar gamma_quarter(int modulus, long k);
    /// 2*pi*i
    static ExactScalar two_pi_i(int modulus);

    int modulus() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }
    bool is_rational() const;
    Rational rational_part() const;

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    bool operator==(const ExactScalar& o) const;
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }
    int compare(const ExactScalar& o) const;

    ExactScalar scaled(const Rational& q) const;
    /// Multiplicative inverse; only single-term values are invertible here.
    ExactScalar inverse() const;
    ExactScalar pow(long e) const;
    ExactScalar conj() const;
    ExactScalar lift(int bigger_modulus) const;

    std::string to_string() const;

private:
    int n_;
    TermMap t_;

    void add_term(const Key& k, const Cyclotomic& c);
};

}  // namespace heis
