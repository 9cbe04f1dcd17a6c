#include "heis/eps_series.hpp"

#include "heis/error.hpp"

namespace heis {

EpsSeries EpsSeries::constant(int modulus, int trunc, const ExactScalar& a) {
    EpsSeries s(modulus, trunc);
    s.c_[0] = a;
    return s;
}

bool EpsSeries::is_zero() const {
    for (const auto& a : c_)
        if (!a.is_zero()) return false;
    return true;
}

EpsSeries EpsSeries::operator+(const EpsSeries& o) const {
    EpsSeries r(modulus_, std::min(trunc_, o.trunc_));
    for (int k = 0; k <= r.trunc_; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

EpsSeries EpsSeries::operator-(const EpsSeries& o) const { return *this + (-o); }

EpsSeries EpsSeries::operator-() const {
    EpsSeries r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
}

EpsSeries EpsSeries::operator*(const EpsSeries& o) const {
    EpsSeries r(modulus_, std::min(trunc_, o.trunc_));
    for (int i = 0; i <= trunc_; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j <= r.trunc_ && j <= o.trunc_; ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

bool EpsSeries::operator==(const EpsSeries& o) const {
    return modulus_ == o.modulus_ && trunc_ == o.trunc_ && c_ == o.c_;
}

EpsSeries EpsSeries::scaled(const Rational& q) const {
    EpsSeries r(*this);
    for (auto& a : r.c_) a = a.scaled(q);
    return r;
}

EpsSeries EpsSeries::scaled(const ExactScalar& s) const {
    EpsSeries r(*this);
    for (auto& a : r.c_) a = a * s;
    return r;
}

EpsSeries EpsSeries::exp() const {
    if (!nilpotent()) fail(ErrorKind::NotInFiltration, "exp needs a series without constant term");
    EpsSeries r = one(modulus_, trunc_);
    EpsSeries pow = one(modulus_, trunc_);
    for (int k = 1; k <= trunc_; ++k) {
        pow = pow * *this;
        if (pow.is_zero()) break;
        r += pow.scaled(Rational(1, factorial(k)));
    }
    return r;
}

EpsSeries EpsSeries::log() const {
    EpsSeries x = *this - one(modulus_, trunc_);
    if (!x.nilpotent()) fail(ErrorKind::NotInFiltration, "log needs constant term 1");
    EpsSeries r(modulus_, trunc_);
    EpsSeries pow = one(modulus_, trunc_);
    for (int k = 1; k <= trunc_; ++k) {
        pow = pow * x;
        if (pow.is_zero()) break;
        r += pow.scaled(Rational((k % 2) ? 1 : -1, k));
    }
    return r;
}

EpsSeries EpsSeries::inverse() const {
    ExactScalar c0inv = c_[0].inverse();
    // 1/(c0(1+y)) = c0^{-1} sum (-y)^k
    EpsSeries y = scaled(c0inv) - one(modulus_, trunc_);
    EpsSeries r = one(modulus_, trunc_);
    EpsSeries pow = one(modulus_, trunc_);
    for (int k = 1; k <= trunc_; ++k) {
        pow = pow * y;
        if (pow.is_zero()) break;
        r += (k % 2) ? -pow : pow;
    }
    return r.scaled(c0inv);
}

EpsMatrix eps_mat_mul(const EpsMatrix& a, const EpsMatrix& b) {
    size_t n = a.size();
    EpsMatrix r(n, std::vector<EpsSeries>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            EpsSeries acc = a[i][0] * b[0][j];
            for (size_t k = 1; k < n; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

EpsMatrix eps_mat_add(const EpsMatrix& a, const EpsMatrix& b) {
    size_t n = a.size();
    EpsMatrix r(n, std::vector<EpsSeries>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

EpsMatrix eps_mat_identity(int n, int modulus, int trunc) {
    EpsMatrix r(n, std::vector<EpsSeries>(n, EpsSeries(modulus, trunc)));
    for (int i = 0; i < n; ++i) r[i][i] = EpsSeries::one(modulus, trunc);
    return r;
}

EpsSeries eps_mat_trace(const EpsMatrix& a) {
    EpsSeries t = a[0][0];
    for (size_t i = 1; i < a.size(); ++i) t += a[i][i];
    return t;
}

EpsSeries todd_series(const EpsMatrix& R, int trunc) {
    size_t n = R.size();
    if (n == 0) fail(ErrorKind::BadIndex, "empty matrix");
    int modulus = R[0][0].modulus();
    for (const auto& row : R)
        for (const auto& e : row)
            if (!e.nilpotent()) fail(ErrorKind::NotInFiltration, "Todd series needs no eps^0 term");
    // B = sum_{k>=0} R^k/(k+1)!
    EpsMatrix B = eps_mat_identity(static_cast<int>(n), modulus, trunc);
    EpsMatrix pow = eps_mat_identity(static_cast<int>(n), modulus, trunc);
    for (int k = 1; k <= trunc; ++k) {
        pow = eps_mat_mul(pow, R);
        bool zero = true;
        for (const auto& row : pow)
            for (const auto& e : row) zero = zero && e.is_zero();
        if (zero) break;
        EpsMatrix term = pow;
        for (auto& row : term)
            for (auto& e : row) e = e.scaled(Rational(1, factorial(k + 1)));
        B = eps_mat_add(B, term);
    }
    // X = B - I is nilpotent in eps; log B = sum (-1)^{j+1} X^j / j
    EpsMatrix X = B;
    for (size_t i = 0; i < n; ++i) X[i][i] = X[i][i] - EpsSeries::one(modulus, trunc);
    EpsSeries trlog(modulus, trunc);
    EpsMatrix xp = eps_mat_identity(static_cast<int>(n), modulus, trunc);
    for (int j = 1; j <= trunc; ++j) {
        xp = eps_mat_mul(xp, X);
        bool zero = true;
        for (const auto& row : xp)
            for (const auto& e : row) zero = zero && e.is_zero();
        if (zero) break;
        trlog += eps_mat_trace(xp).scaled(Rational((j % 2) ? 1 : -1, j));
    }
    // Td = det(B^{-1}) = exp(-tr log B)
    return (-trlog).exp();
}

}  // namespace heis
