#pragma once

#include "heis/exact_scalar.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>

namespace heis {

using BigFloat = boost::multiprecision::mpfr_float;

/// High-precision complex value (MPFR real/imaginary pair).
struct BigComplex {
    BigFloat re, im;
    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigFloat abs() const;
};

/// Evaluates an exact scalar numerically with at least `digits` decimal digits
/// of working precision (digits >= 15).
BigComplex numeric_eval(const ExactScalar& a, unsigned digits);

std::complex<double> numeric_eval_d(const ExactScalar& a);

/// Rounds to `digits` significant decimal digits, e.g. "3.625609908".
std::string format_significant(const BigFloat& x, unsigned digits);

std::string format_complex(const BigComplex& z, unsigned digits);

}  // namespace heis
