#include "heis/residue.hpp"

#include "heis/quadrature.hpp"

#include <cmath>

namespace heis {

ExactScalar sphere_moment(const MultiIndex& gamma, const FoliationShape& shape, int modulus) {
    for (auto g : gamma)
        if (g % 2 == 1) return ExactScalar::zero(modulus);
    int d = mi_weight(gamma, shape);
    ExactScalar value = ExactScalar::from_rational(modulus, 4) *
                        ExactScalar::gamma_quarter(modulus, d + shape.Q()).inverse();
    for (int i = 0; i < shape.n(); ++i) {
        if (shape.is_leaf(i + 1)) {
            value *= ExactScalar::gamma_quarter(modulus, gamma[i] + 1).scaled(Rational(1, 2));
        } else {
            value *= ExactScalar::gamma_quarter(modulus, 2 * (gamma[i] + 1));
        }
    }
    return value;
}

namespace {

ExactScalar word_trace_factor(const CliffordWord& w, int n, int modulus, WordTrace wt) {
    Integer t = (wt == WordTrace::NormalizedTr) ? clifford_tr(w, n) : clifford_str(w, n);
    if (t == 0) return ExactScalar::zero(modulus);
    return ExactScalar::from_rational(modulus, Rational(t, Integer(1) << n));
}

}  // namespace

ExactScalar wres_with(const HSymbol& a, WordTrace wt) {
    if (!a.is_classical()) fail(ErrorKind::NotClassical, "wres requires a classical symbol");
    const FoliationShape& shape = a.shape();
    const int modulus = a.modulus();
    const int Q = shape.Q();
    if (a.floor() && *a.floor() > -Q)
        fail(ErrorKind::TruncationTooShallow, "degree -Q component unknown at this truncation");
    ExactScalar total = ExactScalar::zero(modulus);
    auto comp = a.component(-Q);
    for (const auto& [key, coeff] : comp) {
        if (key.logPow != 0) fail(ErrorKind::LogResidueUnsupported, "log term at residue degree");
        ExactScalar f = word_trace_factor(key.word, shape.n(), modulus, wt);
        if (f.is_zero()) continue;
        ExactScalar x_part = coeff.integral();
        if (x_part.is_zero()) continue;
        total += x_part * f * sphere_moment(key.gamma, shape, modulus);
    }
    // (2 pi)^{-n} prefactor
    ExactScalar pref = ExactScalar::monomial(
        Cyclotomic::from_rational(modulus, rational_pow(Rational(1, 2), shape.n())), -2 * shape.n(), 0);
    return total * pref;
}

ExactScalar wres(const HSymbol& a) { return wres_with(a, WordTrace::NormalizedTr); }

namespace {

struct AnnulusIntegrand {
    const FoliationShape& shape;
    MultiIndex gamma;
    double exponent;  // -(<gamma>+Q)/4

    double operator()(const std::vector<double>& p) const {
        double rho = 0, mono = 1;
        for (size_t i = 0; i < p.size(); ++i) {
            int w = shape.weight(static_cast<int>(i) + 1);
            rho += w == 1 ? p[i] * p[i] * p[i] * p[i] : p[i] * p[i];
            for (int k = 0; k < gamma[i]; ++k) mono *= p[i];
        }
        return mono * std::pow(rho, exponent);
    }
};

constexpr double kRhoMax = 54.598150033144236;  // e^4

// integrates over the innermost variable given partial rho over an exact section
double inner_integral(const AnnulusIntegrand& f, std::vector<double>& p, double partial_rho,
                      double tol) {
    const int n = f.shape.n();
    double lo2 = std::max(0.0, 1.0 - partial_rho);
    double hi2 = kRhoMax - partial_rho;
    if (hi2 <= 0) return 0.0;
    bool leaf = f.shape.is_leaf(n);
    double lo = leaf ? std::pow(lo2, 0.25) : std::sqrt(lo2);
    double hi = leaf ? std::pow(hi2, 0.25) : std::sqrt(hi2);
    auto g = [&](double t) {
        p[n - 1] = t;
        return f(p);
    };
    QuadResult plus = integrate_adaptive(g, lo, hi, tol / 2);
    QuadResult minus = integrate_adaptive(g, -hi, -lo, tol / 2);
    return plus.value + minus.value;
}

}  // namespace

double annulus_oracle(const MultiIndex& gamma, const FoliationShape& shape, double tol) {
    const int n = shape.n();
    if (n > 3) fail(ErrorKind::CubatureNoConvergence, "annulus oracle limited to n <= 3");
    if (tol < 1e-10) tol = 1e-10;
    AnnulusIntegrand f{shape, gamma, -(mi_weight(gamma, shape) + shape.Q()) / 4.0};
    std::vector<double> p(n, 0.0);

    auto limit = [&](int i) {
        return shape.is_leaf(i + 1) ? std::pow(kRhoMax, 0.25) : std::sqrt(kRhoMax);
    };

    if (n == 1) return inner_integral(f, p, 0.0, tol);

    if (n == 2) {
        auto outer = [&](double a) {
            p[0] = a;
            double w0 = shape.is_leaf(1) ? a * a * a * a : a * a;
            return inner_integral(f, p, w0, tol / 64);
        };
        QuadResult r = integrate_adaptive(outer, -limit(0), limit(0), tol);
        if (r.error > 10 * tol + 1e-9)
            fail(ErrorKind::CubatureNoConvergence, "annulus cubature did not reach tolerance");
        return r.value;
    }

    auto outer = [&](double a) {
        p[0] = a;
        double w0 = shape.is_leaf(1) ? a * a * a * a : a * a;
        auto middle = [&](double b) {
            p[1] = b;
            double w1 = w0 + (shape.is_leaf(2) ? b * b * b * b : b * b);
            return inner_integral(f, p, w1, tol / 4096);
        };
        return integrate_adaptive(middle, -limit(1), limit(1), tol / 64).value;
    };
    QuadResult r = integrate_adaptive(outer, -limit(0), limit(0), tol);
    if (r.error > 10 * tol + 1e-9)
        fail(ErrorKind::CubatureNoConvergence, "annulus cubature did not reach tolerance");
    return r.value;
}

}  // namespace heis
