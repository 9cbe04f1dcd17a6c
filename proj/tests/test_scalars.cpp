#include "heis/cyclotomic.hpp"
#include "heis/exact_scalar.hpp"
#include "heis/fourier.hpp"
#include "heis/numeric.hpp"

#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <random>

using namespace heis;

namespace {

Cyclotomic random_cyclo(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Cyclotomic c(n);
    for (int j = 0; j < euler_phi(n); ++j) {
        c += Cyclotomic::zeta_pow(n, j).scaled(Rational(num(rng), den(rng)));
    }
    return c;
}

ExactScalar random_scalar(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> exps(-2, 2);
    ExactScalar s(n);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t)
        s += ExactScalar::monomial(random_cyclo(rng, n), exps(rng), exps(rng));
    return s;
}

}  // namespace

TEST_CASE("cyclotomic polynomial basics") {
    auto& phi8 = cyclotomic_polynomial(8);  // x^4 + 1
    REQUIRE(phi8.size() == 5);
    CHECK(phi8[0] == 1);
    CHECK(phi8[1] == 0);
    CHECK(phi8[4] == 1);
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(24) == 8);

    // zeta_8^4 = -1
    CHECK(Cyclotomic::zeta_pow(8, 4) == Cyclotomic::from_rational(8, -1));
    // i^2 = -1
    auto i = Cyclotomic::imaginary_unit(8);
    CHECK(i * i == Cyclotomic::from_rational(8, -1));
    // sqrt2^2 = 2
    auto s2 = Cyclotomic::sqrt_two(8);
    CHECK(s2 * s2 == Cyclotomic::from_rational(8, 2));
    // same in a lifted modulus
    auto s2_24 = Cyclotomic::sqrt_two(24);
    CHECK(s2_24 * s2_24 == Cyclotomic::from_rational(24, 2));
    CHECK(s2.lift(24) == s2_24);
}

TEST_CASE("cyclotomic field axioms on random triples") {
    for (int n : {8, 24}) {
        std::mt19937_64 rng(20240601 + n);
        for (int it = 0; it < 1000; ++it) {
            Cyclotomic a = random_cyclo(rng, n), b = random_cyclo(rng, n), c = random_cyclo(rng, n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
        }
    }
}

TEST_CASE("cyclotomic inverse and conjugation") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        Cyclotomic a = random_cyclo(rng, 8);
        if (a.is_zero()) continue;
        CHECK(a * a.inverse() == Cyclotomic::one(8));
        // conj is an automorphism and fixes rationals
        Cyclotomic b = random_cyclo(rng, 8);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
    CHECK(Cyclotomic::zeta_pow(8, 1).conj() == Cyclotomic::zeta_pow(8, -1));
}

TEST_CASE("gamma quarter normalization") {
    const int N = 8;
    // Gamma(5/4) = (1/4) Gamma(1/4)
    CHECK(ExactScalar::gamma_quarter(N, 5) ==
          ExactScalar::monomial(Cyclotomic::from_rational(N, Rational(1, 4)), 0, 1));
    // Gamma(3/4) = sqrt2 * pi * Gamma(1/4)^{-1}
    CHECK(ExactScalar::gamma_quarter(N, 3) ==
          ExactScalar::monomial(Cyclotomic::sqrt_two(N), 2, -1));
    // Gamma(1/2) = pi^{1/2}, Gamma(2/2)= Gamma(1) = 1, Gamma(3) = 2
    CHECK(ExactScalar::gamma_quarter(N, 2) == ExactScalar::pi_half_pow(N, 1));
    CHECK(ExactScalar::gamma_quarter(N, 4) == ExactScalar::one(N));
    CHECK(ExactScalar::gamma_quarter(N, 12) == ExactScalar::from_rational(N, 2));
    // reflection consistency: Gamma(1/4) Gamma(3/4) = pi sqrt 2
    auto prod = ExactScalar::gamma_quarter(N, 1) * ExactScalar::gamma_quarter(N, 3);
    CHECK(prod == ExactScalar::monomial(Cyclotomic::sqrt_two(N), 2, 0));
    // pi^{1/2} * pi^{1/2} = pi
    CHECK(ExactScalar::pi_half_pow(N, 1) * ExactScalar::pi_half_pow(N, 1) ==
          ExactScalar::pi_half_pow(N, 2));
}

TEST_CASE("normalization idempotence and inverse") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 200; ++it) {
        ExactScalar a = random_scalar(rng, 8);
        ExactScalar b = a + ExactScalar::zero(8);
        CHECK(a == b);  // normal forms are stable
        ExactScalar c = a - a;
        CHECK(c.is_zero());
    }
    auto m = ExactScalar::monomial(Cyclotomic::sqrt_two(8), 3, -2);
    CHECK(m * m.inverse() == ExactScalar::one(8));
    CHECK_THROWS_AS((ExactScalar::one(8) + ExactScalar::pi_half_pow(8, 1)).inverse(), Error);
}

TEST_CASE("numeric_eval against independent MPFR gamma oracle") {
    const int N = 8;
    // frozen from mpfr_gamma(1/4) and sqrt(pi)
    CHECK(format_significant(numeric_eval(ExactScalar::gamma_quarter(N, 1), 10).re, 10) ==
          "3.625609908");
    CHECK(format_significant(numeric_eval(ExactScalar::pi_half_pow(N, 1), 10).re, 10) ==
          "1.772453851");
    CHECK(numeric_eval(ExactScalar::zero(N), 20).re == 0);

    // non-trivially normalized values vs direct mpfr_gamma
    BigFloat::default_precision(60);
    for (long k : {3L, 6L, 7L, 9L, 11L, 15L, 21L}) {
        BigComplex engine = numeric_eval(ExactScalar::gamma_quarter(N, k), 40);
        BigFloat direct = boost::math::tgamma(BigFloat(k) / 4);
        CHECK(boost::multiprecision::abs(engine.re - direct) < 1e-30);
        CHECK(boost::multiprecision::abs(engine.im) < 1e-30);
    }
}

TEST_CASE("numeric_eval is a ring homomorphism within tolerance") {
    std::mt19937_64 rng(4242);
    const unsigned digits = 20;
    BigFloat tol = boost::multiprecision::pow(BigFloat(10), -(static_cast<int>(digits) - 2));
    for (int it = 0; it < 200; ++it) {
        ExactScalar a = random_scalar(rng, 8), b = random_scalar(rng, 8);
        BigComplex pa = numeric_eval(a, digits), pb = numeric_eval(b, digits);
        BigComplex sum = numeric_eval(a + b, digits), prod = numeric_eval(a * b, digits);
        CHECK((sum - (pa + pb)).abs() < tol);
        CHECK((prod - (pa * pb)).abs() < tol * (BigFloat(1) + pa.abs() * pb.abs()));
    }
}

TEST_CASE("fourier arithmetic") {
    const int N = 8;
    auto e1 = FourierFunction::character(1, {1}, ExactScalar::one(N));
    auto em1 = FourierFunction::character(1, {-1}, ExactScalar::one(N));
    // deriv multiplies by 2 pi i k
    CHECK(e1.deriv(0) == e1.scaled(ExactScalar::two_pi_i(N)));
    // e^{2pi i x} e^{-2pi i x} = 1
    CHECK(e1 * em1 == FourierFunction::one(1, N));
    // disjoint supports add
    auto f = e1 + em1;
    CHECK(f.coeffs().size() == 2);
    // torus integral picks mode zero
    CHECK(e1.integral().is_zero());
    CHECK(FourierFunction::one(1, N).integral() == ExactScalar::one(N));
    auto g = FourierFunction::constant(1, ExactScalar::from_rational(N, 3)) + e1;
    CHECK(g.integral() == ExactScalar::from_rational(N, 3));
}

TEST_CASE("parseval pairing on finite supports") {
    const int N = 8;
    std::mt19937_64 rng(5151);
    for (int it = 0; it < 50; ++it) {
        FourierFunction f(2, N), g(2, N);
        for (int t = 0; t < 4; ++t) {
            std::uniform_int_distribution<int> kd(-2, 2);
            f.add_coeff({kd(rng), kd(rng)}, random_scalar(rng, N));
            g.add_coeff({kd(rng), kd(rng)}, random_scalar(rng, N));
        }
        // integral(f * conj(g)) = sum_k f_k conj(g_k)
        ExactScalar lhs = (f * g.conj()).integral();
        ExactScalar rhs = ExactScalar::zero(N);
        for (const auto& [k, c] : f.coeffs()) rhs += c * g.coeff(k).conj();
        CHECK(lhs == rhs);
    }
}
