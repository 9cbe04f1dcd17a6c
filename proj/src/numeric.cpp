#include "heis/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <sstream>

namespace heis {

BigFloat BigComplex::abs() const { return boost::multiprecision::sqrt(re * re + im * im); }

namespace {

struct Guard {
    unsigned saved;
    explicit Guard(unsigned digits) : saved(BigFloat::default_precision()) {
        BigFloat::default_precision(digits + 20);
    }
    ~Guard() { BigFloat::default_precision(saved); }
};

BigFloat big_pow(const BigFloat& x, int e) {
    if (e == 0) return BigFloat(1);
    BigFloat r = boost::multiprecision::pow(x, e > 0 ? e : -e);
    if (e < 0) r = 1 / r;
    return r;
}

}  // namespace

BigComplex numeric_eval(const ExactScalar& a, unsigned digits) {
    if (digits < 15) digits = 15;
    Guard guard(digits);
    const int n = a.modulus();
    BigFloat pi = boost::math::constants::pi<BigFloat>();
    BigFloat sqrt_pi = boost::multiprecision::sqrt(pi);
    BigFloat g4 = boost::math::tgamma(BigFloat(1) / 4);
    BigComplex total{BigFloat(0), BigFloat(0)};
    for (const auto& [key, cyc] : a.terms()) {
        // cyclotomic embedding zeta_N = e^{2 pi i / N}
        BigComplex c{BigFloat(0), BigFloat(0)};
        const auto& coeffs = cyc.coeffs();
        for (size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0) continue;
            BigFloat q(numerator(coeffs[j]).str());
            q /= BigFloat(denominator(coeffs[j]).str());
            BigFloat angle = 2 * pi * static_cast<int>(j) / n;
            c.re += q * boost::multiprecision::cos(angle);
            c.im += q * boost::multiprecision::sin(angle);
        }
        BigFloat mag = big_pow(sqrt_pi, key.first) * big_pow(g4, key.second);
        total.re += c.re * mag;
        total.im += c.im * mag;
    }
    return total;
}

std::complex<double> numeric_eval_d(const ExactScalar& a) {
    BigComplex z = numeric_eval(a, 30);
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

std::string format_significant(const BigFloat& x, unsigned digits) {
    std::ostringstream os;
    os << std::setprecision(static_cast<int>(digits)) << x;
    return os.str();
}

std::string format_complex(const BigComplex& z, unsigned digits) {
    // suppress an imaginary part that is pure numeric noise relative to precision
    BigFloat scale = z.abs();
    std::ostringstream os;
    bool im_negligible =
        scale == 0 || z.im == 0 ||
        boost::multiprecision::abs(z.im) < scale * boost::multiprecision::pow(BigFloat(10), -static_cast<int>(digits) - 5);
    bool re_negligible =
        scale == 0 ||
        boost::multiprecision::abs(z.re) < scale * boost::multiprecision::pow(BigFloat(10), -static_cast<int>(digits) - 5);
    if (im_negligible) return format_significant(z.re, digits);
    if (re_negligible) return format_significant(z.im, digits) + "i";
    return format_significant(z.re, digits) + (z.im > 0 ? "+" : "") + format_significant(z.im, digits) + "i";
}

}  // namespace heis
