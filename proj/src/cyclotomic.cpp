#include "heis/cyclotomic.hpp"

#include "heis/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace heis {

Rational parse_rational(const std::string& s) {
    auto bad = [&]() -> Rational { throw std::invalid_argument("malformed rational: '" + s + "'"); };
    if (s.empty()) return bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) return bad();
        return Rational(num, den);
    } catch (const std::exception&) {
        return bad();
    }
}

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// x^a - 1 as ascending integer coefficients
std::vector<Integer> x_pow_minus_one(int a) {
    std::vector<Integer> p(a + 1, 0);
    p[0] = -1;
    p[a] = 1;
    return p;
}

// exact division of integer polynomials, remainder must vanish
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<Integer> q(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        Integer c = num[k + dd] / den[dd];
        q[k] = c;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return q;
}

struct CycloTable {
    int n = 0;
    int deg = 0;                                // phi(n)
    std::vector<Integer> phi_poly;              // ascending, monic, size deg+1
    std::vector<std::vector<Rational>> powers;  // x^k mod Phi_n for k in [0, 2n), each size deg
};

std::vector<Integer> cyclotomic_poly_impl(int n, std::map<int, std::vector<Integer>>& cache) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Integer> p = x_pow_minus_one(n);
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly_impl(d, cache));
    }
    cache[n] = p;
    return p;
}

const CycloTable& table_for(int n) {
    static std::mutex mu;
    static std::map<int, CycloTable> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(n);
    if (it != tables.end()) return it->second;
    if (n <= 0) throw std::invalid_argument("cyclotomic modulus must be positive");

    CycloTable t;
    t.n = n;
    static std::map<int, std::vector<Integer>> poly_cache;
    t.phi_poly = cyclotomic_poly_impl(n, poly_cache);
    t.deg = static_cast<int>(t.phi_poly.size()) - 1;

    // x^k mod Phi_n, for all exponents that a basis product can reach
    t.powers.reserve(2 * n);
    std::vector<Rational> cur(t.deg, Rational(0));
    for (int k = 0; k < 2 * n; ++k) {
        if (k < t.deg) {
            cur.assign(t.deg, Rational(0));
            cur[k] = 1;
        } else {
            // multiply previous by x, reduce by Phi_n (monic)
            std::vector<Rational> next(t.deg, Rational(0));
            const std::vector<Rational>& prev = t.powers.back();
            Rational top = prev[t.deg - 1];
            for (int j = t.deg - 1; j >= 1; --j) next[j] = prev[j - 1];
            next[0] = 0;
            if (top != 0) {
                for (int j = 0; j < t.deg; ++j) next[j] -= top * Rational(t.phi_poly[j]);
            }
            cur = next;
        }
        t.powers.push_back(cur);
    }
    return tables.emplace(n, std::move(t)).first->second;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(int n) { return table_for(n).phi_poly; }

Cyclotomic::Cyclotomic(int modulus) : n_(modulus) {
    const CycloTable& t = table_for(modulus);
    c_.assign(t.deg, Rational(0));
}

Cyclotomic::Cyclotomic(int modulus, const Rational& value) : Cyclotomic(modulus) {
    if (!c_.empty()) c_[0] = value;
}

Cyclotomic Cyclotomic::zeta_pow(int modulus, long k) {
    const CycloTable& t = table_for(modulus);
    long r = k % modulus;
    if (r < 0) r += modulus;
    Cyclotomic z(modulus);
    z.c_ = t.powers[static_cast<size_t>(r)];
    return z;
}

Cyclotomic Cyclotomic::imaginary_unit(int modulus) {
    if (modulus % 4 != 0) fail(ErrorKind::ModulusMismatch, "modulus must be divisible by 4 for i");
    return zeta_pow(modulus, modulus / 4);
}

Cyclotomic Cyclotomic::sqrt_two(int modulus) {
    if (modulus % 8 != 0) fail(ErrorKind::ModulusMismatch, "modulus must be divisible by 8 for sqrt(2)");
    return zeta_pow(modulus, modulus / 8) + zeta_pow(modulus, -(modulus / 8));
}

Cyclotomic Cyclotomic::root_of_unity(int modulus, const Rational& q) {
    Integer den = denominator(q);
    if (Integer(modulus) % den != 0)
        fail(ErrorKind::ModulusMismatch, "root of unity denominator does not divide session modulus");
    Integer k = numerator(q) * (Integer(modulus) / den);
    long kk = static_cast<long>(k % modulus);
    return zeta_pow(modulus, kk);
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

void Cyclotomic::trim_check() const {
    if (n_ == 0) throw std::logic_error("use of uninitialized Cyclotomic");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    trim_check();
    if (n_ != o.n_) fail(ErrorKind::ModulusMismatch, "cyclotomic modulus mismatch in +");
    Cyclotomic r(*this);
    for (size_t j = 0; j < c_.size(); ++j) r.c_[j] += o.c_[j];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    trim_check();
    if (n_ != o.n_) fail(ErrorKind::ModulusMismatch, "cyclotomic modulus mismatch in *");
    const CycloTable& t = table_for(n_);
    int d = t.deg;
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (int a = 0; a < d; ++a) {
        if (c_[a] == 0) continue;
        for (int b = 0; b < d; ++b) {
            if (o.c_[b] == 0) continue;
            prod[a + b] += c_[a] * o.c_[b];
        }
    }
    Cyclotomic r(n_);
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (prod[k] == 0) continue;
        const std::vector<Rational>& pk = t.powers[k];
        for (int j = 0; j < d; ++j) r.c_[j] += prod[k] * pk[j];
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }

int Cyclotomic::compare(const Cyclotomic& o) const {
    if (n_ != o.n_) return n_ < o.n_ ? -1 : 1;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] != o.c_[j]) return c_[j] < o.c_[j] ? -1 : 1;
    }
    return 0;
}

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rational(0));
    for (size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
    poly_trim(a);
    return a;
}

// a = q*b + r
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    q.clear();
    poly_trim(a);
    if (b.empty()) throw std::logic_error("poly division by zero");
    if (a.size() < b.size()) {
        r = a;
        return;
    }
    q.assign(a.size() - b.size() + 1, Rational(0));
    for (int k = static_cast<int>(a.size() - b.size()); k >= 0; --k) {
        Rational c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    poly_trim(a);
    r = a;
}

}  // namespace

Cyclotomic Cyclotomic::inverse() const {
    trim_check();
    if (is_zero()) fail(ErrorKind::InvNotSupported, "inverse of zero cyclotomic element");
    const CycloTable& t = table_for(n_);
    // extended Euclid: u*this + v*Phi = gcd = const (Phi irreducible over Q)
    Poly a(c_.begin(), c_.end());
    poly_trim(a);
    Poly b(t.phi_poly.size());
    for (size_t j = 0; j < t.phi_poly.size(); ++j) b[j] = Rational(t.phi_poly[j]);

    Poly r0 = a, r1 = b;
    Poly s0 = {Rational(1)}, s1 = {};
    while (!r1.empty()) {
        Poly q, r;
        poly_divmod(r0, r1, q, r);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if (r0.size() != 1) throw std::logic_error("cyclotomic inverse: gcd not constant");
    Rational g = r0[0];
    Cyclotomic inv(n_);
    for (size_t j = 0; j < s0.size() && j < inv.c_.size(); ++j) inv.c_[j] = s0[j] / g;
    if (s0.size() > inv.c_.size()) {
        // reduce overflowing degrees through the power table
        Cyclotomic extra(n_);
        for (size_t k = inv.c_.size(); k < s0.size(); ++k) {
            const std::vector<Rational>& pk = table_for(n_).powers[k];
            for (int j = 0; j < t.deg; ++j) extra.c_[j] += s0[k] * pk[j];
        }
        inv = inv + extra;
    }
    return inv;
}

Cyclotomic Cyclotomic::conj() const {
    trim_check();
    const CycloTable& t = table_for(n_);
    Cyclotomic r(n_);
    for (int j = 0; j < t.deg; ++j) {
        if (c_[j] == 0) continue;
        int k = (n_ - j) % n_;
        const std::vector<Rational>& pk = t.powers[k];
        for (int m = 0; m < t.deg; ++m) r.c_[m] += c_[j] * pk[m];
    }
    return r;
}

Cyclotomic Cyclotomic::lift(int bigger_modulus) const {
    trim_check();
    if (bigger_modulus == n_) return *this;
    if (bigger_modulus % n_ != 0) fail(ErrorKind::ModulusMismatch, "lift target modulus not a multiple");
    int step = bigger_modulus / n_;
    Cyclotomic r(bigger_modulus);
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        r += zeta_pow(bigger_modulus, static_cast<long>(j) * step).scaled(c_[j]);
    }
    return r;
}

Cyclotomic Cyclotomic::scaled(const Rational& q) const {
    Cyclotomic r(*this);
    for (auto& x : r.c_) x *= q;
    return r;
}

}  // namespace heis
