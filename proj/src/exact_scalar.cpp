#include "heis/exact_scalar.hpp"

#include "heis/error.hpp"

#include <sstream>

namespace heis {

ExactScalar ExactScalar::from_rational(int modulus, const Rational& q) {
    ExactScalar r(modulus);
    r.add_term({0, 0}, Cyclotomic::from_rational(modulus, q));
    return r;
}

ExactScalar ExactScalar::from_cyclotomic(const Cyclotomic& c) {
    ExactScalar r(c.modulus());
    r.add_term({0, 0}, c);
    return r;
}

ExactScalar ExactScalar::monomial(const Cyclotomic& coeff, int piHalf, int gammaQuarter) {
    ExactScalar r(coeff.modulus());
    r.add_term({piHalf, gammaQuarter}, coeff);
    return r;
}

ExactScalar ExactScalar::two_pi_i(int modulus) {
    return monomial(Cyclotomic::imaginary_unit(modulus).scaled(2), 2, 0);
}

ExactScalar ExactScalar::gamma_quarter(int modulus, long k) {
    if (k <= 0 && k % 4 == 0) fail(ErrorKind::InvNotSupported, "Gamma pole at non-positive integer");
    // walk k down/up to a seed in {1,2,3,4} via Gamma(z+1) = z Gamma(z)
    Rational factor = 1;
    long kk = k;
    while (kk > 4) {
        kk -= 4;
        factor *= Rational(kk, 4);  // Gamma(kk/4 + 1) = (kk/4) Gamma(kk/4)
    }
    while (kk <= 0) {
        factor /= Rational(kk, 4);  // Gamma(kk/4) = Gamma(kk/4 + 1) / (kk/4)
        kk += 4;
    }
    Cyclotomic c = Cyclotomic::from_rational(modulus, factor);
    switch (kk) {
        case 1:  // Gamma(1/4)
            return monomial(c, 0, 1);
        case 2:  // Gamma(1/2) = pi^{1/2}
            return monomial(c, 1, 0);
        case 3:  // Gamma(3/4) = pi sqrt(2) / Gamma(1/4)
            return monomial(c * Cyclotomic::sqrt_two(modulus), 2, -1);
        case 4:  // Gamma(1) = 1
            return monomial(c, 0, 0);
        default:
            throw std::logic_error("unreachable");
    }
}

void ExactScalar::add_term(const Key& k, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

bool ExactScalar::is_rational() const {
    if (t_.empty()) return true;
    if (t_.size() > 1) return false;
    const auto& [k, c] = *t_.begin();
    return k == Key{0, 0} && c.is_rational();
}

Rational ExactScalar::rational_part() const {
    if (t_.empty()) return 0;
    return t_.begin()->second.rational_part();
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (n_ != o.n_) fail(ErrorKind::ModulusMismatch, "scalar modulus mismatch in +");
    ExactScalar r(*this);
    for (const auto& [k, c] : o.t_) r.add_term(k, c);
    return r;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator-() const {
    ExactScalar r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    if (n_ != o.n_) fail(ErrorKind::ModulusMismatch, "scalar modulus mismatch in *");
    ExactScalar r(n_);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_)
            r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

bool ExactScalar::operator==(const ExactScalar& o) const { return n_ == o.n_ && t_ == o.t_; }

int ExactScalar::compare(const ExactScalar& o) const {
    if (n_ != o.n_) return n_ < o.n_ ? -1 : 1;
    auto it = t_.begin();
    auto jt = o.t_.begin();
    for (; it != t_.end() && jt != o.t_.end(); ++it, ++jt) {
        if (it->first != jt->first) return it->first < jt->first ? -1 : 1;
        int c = it->second.compare(jt->second);
        if (c != 0) return c;
    }
    if (it != t_.end()) return 1;
    if (jt != o.t_.end()) return -1;
    return 0;
}

ExactScalar ExactScalar::scaled(const Rational& q) const {
    if (q == 0) return ExactScalar(n_);
    ExactScalar r(*this);
    for (auto& [k, c] : r.t_) c = c.scaled(q);
    return r;
}

ExactScalar ExactScalar::inverse() const {
    if (t_.size() != 1)
        fail(ErrorKind::InvNotSupported, "inverse restricted to monomial scalars");
    const auto& [k, c] = *t_.begin();
    return monomial(c.inverse(), -k.first, -k.second);
}

ExactScalar ExactScalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ExactScalar r = one(n_);
    for (long j = 0; j < e; ++j) r *= *this;
    return r;
}

ExactScalar ExactScalar::conj() const {
    // pi^{1/2} and Gamma(1/4) are real; only the cyclotomic part conjugates
    ExactScalar r(n_);
    for (const auto& [k, c] : t_) r.add_term(k, c.conj());
    return r;
}

ExactScalar ExactScalar::lift(int bigger_modulus) const {
    ExactScalar r(bigger_modulus);
    for (const auto& [k, c] : t_) r.add_term(k, c.lift(bigger_modulus));
    return r;
}

std::string ExactScalar::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(";
        bool inner = true;
        const auto& cc = c.coeffs();
        for (size_t j = 0; j < cc.size(); ++j) {
            if (cc[j] == 0) continue;
            if (!inner) os << " + ";
            inner = false;
            os << cc[j];
            if (j > 0) os << "*z" << n_ << "^" << j;
        }
        if (inner) os << "0";
        os << ")";
        if (k.first != 0) os << "*pi^(" << k.first << "/2)";
        if (k.second != 0) os << "*G4^" << k.second;
    }
    return os.str();
}

}  // namespace heis
