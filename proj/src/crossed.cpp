#include "heis/crossed.hpp"

#include "heis/numeric.hpp"
#include "heis/residue.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace heis {

namespace {

Rational mod_one(const Rational& q) {
    Integer num = numerator(q), den = denominator(q);
    Integer r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

}  // namespace

IsometryElement::IsometryElement(const FoliationShape& shape, std::vector<int> perm,
                                 std::vector<int> sign, std::vector<Rational> trans, int modulus)
    : shape_(shape), modulus_(modulus), perm_(std::move(perm)), sign_(std::move(sign)), trans_(std::move(trans)) {
    const int n = shape.n();
    if (static_cast<int>(perm_.size()) == n) perm_.insert(perm_.begin(), 0);
    if (static_cast<int>(sign_.size()) == n) sign_.insert(sign_.begin(), 0);
    if (static_cast<int>(perm_.size()) != n + 1 || static_cast<int>(sign_.size()) != n + 1 ||
        static_cast<int>(trans_.size()) != n)
        fail(ErrorKind::NonIsometricAction, "isometry data has wrong dimensions");
    std::vector<bool> seen(n + 1, false);
    for (int j = 1; j <= n; ++j) {
        int i = perm_[j];
        if (i < 1 || i > n || seen[i]) fail(ErrorKind::NonIsometricAction, "not a permutation");
        seen[i] = true;
        if (sign_[j] != 1 && sign_[j] != -1) fail(ErrorKind::NonIsometricAction, "signs must be +-1");
        // block preservation keeps rho invariant (Tier-E condition)
        if (shape.is_leaf(j) != shape.is_leaf(i))
            fail(ErrorKind::NonIsometricAction, "permutation mixes leaf and transverse blocks");
    }
    for (int j = 0; j < n; ++j) {
        trans_[j] = mod_one(trans_[j]);
        if (Integer(modulus_) % denominator(trans_[j]) != 0)
            fail(ErrorKind::ModulusMismatch, "translation denominator does not divide session modulus");
    }
}

IsometryElement IsometryElement::identity(const FoliationShape& shape, int modulus) {
    const int n = shape.n();
    std::vector<int> perm(n), sign(n, 1);
    for (int j = 0; j < n; ++j) perm[j] = j + 1;
    return IsometryElement(shape, perm, sign, std::vector<Rational>(n, Rational(0)), modulus);
}

bool IsometryElement::is_identity() const {
    const int n = shape_.n();
    for (int j = 1; j <= n; ++j)
        if (perm_[j] != j || sign_[j] != 1) return false;
    for (const auto& b : trans_)
        if (b != 0) return false;
    return true;
}

std::vector<std::vector<int>> IsometryElement::matrix() const {
    const int n = shape_.n();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int j = 1; j <= n; ++j) m[perm_[j] - 1][j - 1] = sign_[j];
    return m;
}

IsometryElement IsometryElement::operator*(const IsometryElement& o) const {
    if (shape_ != o.shape_ || modulus_ != o.modulus_)
        fail(ErrorKind::ShapeMismatch, "isometry composition across different sessions");
    const int n = shape_.n();
    // P = P1 P2 : e_j -> sign2[j] e_{perm2[j]} -> sign2[j] sign1[perm2[j]] e_{perm1[perm2[j]]}
    std::vector<int> perm(n + 1, 0), sign(n + 1, 0);
    for (int j = 1; j <= n; ++j) {
        perm[j] = perm_[o.perm_[j]];
        sign[j] = sign_[o.perm_[j]] * o.sign_[j];
    }
    // b = P1 b2 + b1 ; (P1 b2)_i = sign1[j] b2_j with i = perm1[j]
    std::vector<Rational> trans(n, Rational(0));
    for (int j = 1; j <= n; ++j) trans[perm_[j] - 1] = Rational(sign_[j]) * o.trans_[j - 1];
    for (int i = 0; i < n; ++i) trans[i] = mod_one(trans[i] + trans_[i]);
    return IsometryElement(shape_, std::vector<int>(perm.begin() + 1, perm.end()),
                           std::vector<int>(sign.begin() + 1, sign.end()), trans, modulus_);
}

IsometryElement IsometryElement::inverse() const {
    const int n = shape_.n();
    std::vector<int> perm(n + 1, 0), sign(n + 1, 0);
    for (int j = 1; j <= n; ++j) {
        perm[perm_[j]] = j;
        sign[perm_[j]] = sign_[j];
    }
    // solve P b' + b = 0: b'_j = -sign[j] b_{perm[j]}
    std::vector<Rational> trans(n, Rational(0));
    for (int j = 1; j <= n; ++j) trans[j - 1] = mod_one(Rational(-sign_[j]) * trans_[perm_[j] - 1]);
    return IsometryElement(shape_, std::vector<int>(perm.begin() + 1, perm.end()),
                           std::vector<int>(sign.begin() + 1, sign.end()), trans, modulus_);
}

bool IsometryElement::operator==(const IsometryElement& o) const {
    return shape_ == o.shape_ && perm_ == o.perm_ && sign_ == o.sign_ && trans_ == o.trans_;
}

bool IsometryElement::operator<(const IsometryElement& o) const {
    if (perm_ != o.perm_) return perm_ < o.perm_;
    if (sign_ != o.sign_) return sign_ < o.sign_;
    for (size_t j = 0; j < trans_.size(); ++j) {
        if (trans_[j] != o.trans_[j]) return trans_[j] < o.trans_[j];
    }
    return false;
}

HSymbol act_on_symbol(const IsometryElement& g, const HSymbol& a) {
    if (g.shape() != a.shape()) fail(ErrorKind::ShapeMismatch, "isometry shape mismatch");
    const int n = g.shape().n();
    const int modulus = a.modulus();
    if (modulus != g.modulus()) fail(ErrorKind::ModulusMismatch, "session modulus mismatch in action");
    auto pmat = g.matrix();
    HSymbol r(a.shape(), modulus, a.top(), a.floor());
    // inverse permutation: substitution p_i -> (Pp)_i = sign[pi^{-1}(i)] p_{pi^{-1}(i)}
    std::vector<int> inv_perm(n + 1, 0), inv_sign(n + 1, 0);
    for (int j = 1; j <= n; ++j) {
        inv_perm[g.perm()[j]] = j;
        inv_sign[g.perm()[j]] = g.sign()[j];
    }
    for (const auto& [d, comp] : a.components()) {
        for (const auto& [key, coeff] : comp) {
            // x-part: characters pull back through x -> Px + b
            FourierFunction c = coeff.pullback_affine(pmat, g.trans());
            // p-part: gamma'_j = gamma_{pi(j)} with sign prod sign[pi^{-1}(i)]^{gamma_i}
            MultiIndex gnew(n, 0);
            int s = 1;
            for (int i = 1; i <= n; ++i) {
                int j = inv_perm[i];
                gnew[j - 1] = key.gamma[i - 1];
                if (inv_sign[i] == -1 && (key.gamma[i - 1] & 1)) s = -s;
            }
            // Clifford indices follow the same substitution i -> (inv_perm[i], inv_sign[i])
            SignedWord sw = clifford_rename(key.word, inv_perm, inv_sign);
            int total_sign = s * sw.sign;
            TermKey k{gnew, key.rhoQuarter, key.logPow, sw.word};
            r.add_term(total_sign == 1 ? c : c.scaled(ExactScalar::from_rational(modulus, -1)), k);
        }
    }
    return r.with_top(a.top());
}

CrossedSymbol CrossedSymbol::unit_component(const HSymbol& a, const IsometryElement& g) {
    CrossedSymbol c(a.shape(), a.modulus());
    c.add(g, a);
    return c;
}

void CrossedSymbol::add(const IsometryElement& g, const HSymbol& a) {
    if (modulus_ == 0) {
        shape_ = a.shape();
        modulus_ = a.modulus();
    }
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        if (!a.is_zero() || a.floor()) terms_.emplace(g, a);
    } else {
        it->second = it->second + a;
        if (it->second.is_zero() && !it->second.floor()) terms_.erase(it);
    }
}

HSymbol CrossedSymbol::component(const IsometryElement& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? HSymbol::zero(shape_, modulus_) : it->second;
}

CrossedSymbol CrossedSymbol::operator+(const CrossedSymbol& o) const {
    CrossedSymbol r(*this);
    for (const auto& [g, a] : o.terms_) r.add(g, a);
    return r;
}

CrossedSymbol CrossedSymbol::operator-() const {
    CrossedSymbol r(*this);
    for (auto& [g, a] : r.terms_) a = -a;
    return r;
}

CrossedSymbol crossed_star(const CrossedSymbol& A, const CrossedSymbol& B) {
    if (A.shape() != B.shape()) fail(ErrorKind::ShapeMismatch, "crossed product shape mismatch");
    CrossedSymbol r(A.shape(), A.modulus());
    for (const auto& [g, a] : A.support())
        for (const auto& [h, b] : B.support()) r.add(g * h, star(a, act_on_symbol(g, b)));
    return r;
}

ExactScalar localized_residue(const CrossedSymbol& A) {
    ExactScalar total = ExactScalar::zero(A.modulus());
    for (const auto& [g, a] : A.support())
        if (g.is_identity()) total += wres(a);
    return total;
}

ExactScalar radul_cocycle(const CrossedSymbol& A, const CrossedSymbol& B) {
    ExactScalar total = ExactScalar::zero(A.modulus());
    for (const auto& [g, a] : A.support()) {
        IsometryElement ginv = g.inverse();
        for (const auto& [h, b] : B.support()) {
            if (!(h == ginv)) continue;  // localization at the unit: gh = e only
            if (!b.is_classical() || !a.is_classical())
                fail(ErrorKind::NotClassical, "radul cocycle requires classical symbols");
            // alpha_g(L) = L for Tier-E isometries, so
            // a * alpha_g(L * b - b * L) = a * alpha_g(log_commutator(b))
            total += wres(star(a, act_on_symbol(g, log_commutator(b))));
        }
    }
    return total;
}

HSymbol leading_lift(const HSymbol& f) {
    if (f.is_zero()) return HSymbol::zero(f.shape(), f.modulus(), 0);
    for (const auto& [d, comp] : f.components())
        if (d != 0) fail(ErrorKind::NotDegreeZero, "leading_lift input must be homogeneous of degree 0");
    HSymbol r(f.shape(), f.modulus(), 0);
    for (const auto& [d, comp] : f.components())
        for (const auto& [key, c] : comp) r.add_term(c, key);
    return r;
}

FourierFunction sphere_restrict_1d(const HSymbol& a, int sigma) {
    if (a.shape().n() != 1 || a.shape().v != 1)
        fail(ErrorKind::WrongShape, "sphere restriction requires shape (1,0)");
    FourierFunction f(1, a.modulus());
    auto comp = a.component(0);
    for (const auto& [key, c] : comp) {
        if (key.logPow != 0) fail(ErrorKind::NotClassical, "log term in degree-0 restriction");
        if (!key.word.trivial()) continue;  // scalar restriction
        // value of p^gamma rho^{q/4} at p = sigma: sigma^gamma
        bool negate = sigma < 0 && (key.gamma[0] & 1);
        f = f + (negate ? -c : c);
    }
    return f;
}

ExactScalar fundamental_pairing_1d(const HSymbol& a0, const HSymbol& a1) {
    if (a0.shape().n() != 1 || a1.shape().n() != 1)
        fail(ErrorKind::WrongShape, "fundamental pairing requires shape (1,0)");
    const int modulus = a0.modulus();
    ExactScalar total = ExactScalar::zero(modulus);
    for (int sigma : {+1, -1}) {
        FourierFunction f0 = sphere_restrict_1d(a0, sigma);
        FourierFunction f1 = sphere_restrict_1d(a1, sigma);
        // int f dg = sum_k f_{-k} (2 pi i k) g_k ; opposite orientations on
        // the two components of S*T^1
        ExactScalar part = (f0 * f1.deriv(0)).integral();
        total += sigma == 1 ? part : -part;
    }
    // divide by 2 pi = rational (1/2) * pi^{-1}
    return total * ExactScalar::monomial(Cyclotomic::from_rational(modulus, Rational(1, 2)), -2, 0);
}

long toeplitz_index_oracle_1d(const HSymbol& a1, int cutoff) {
    FourierFunction u = sphere_restrict_1d(a1, +1);
    if (u.is_zero()) fail(ErrorKind::NonInvertibleSymbol, "zero symbol");
    // dominant character check certifies invertibility and fixes the winding slot
    int dominant = 0;
    double best = -1, rest = 0;
    for (const auto& [k, c] : u.coeffs()) {
        double m = std::abs(numeric_eval_d(c));
        rest += m;
        if (m > best) {
            best = m;
            dominant = k[0];
        }
    }
    if (!(best > rest - best + 1e-12))
        fail(ErrorKind::NonInvertibleSymbol, "no dominant character; invertibility undecided");

    int bandwidth = 0;
    for (const auto& [k, c] : u.coeffs()) bandwidth = std::max(bandwidth, std::abs(k[0]));
    if (cutoff < 4 * bandwidth + 8) cutoff = 4 * bandwidth + 8;

    // rows 0..cutoff+dominant, cols 0..cutoff of the Toeplitz matrix u_{m-n}
    long rows = cutoff + dominant + 1, cols = cutoff + 1;
    if (rows <= 0) rows = 0;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(rows, cols);
    for (long m = 0; m < rows; ++m)
        for (long n = 0; n < cols; ++n) {
            auto c = u.coeff({static_cast<int>(m - n)});
            if (!c.is_zero()) T(m, n) = numeric_eval_d(c);
        }
    long rank = 0;
    if (rows > 0 && cols > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(T);
        qr.setThreshold(1e-9);
        rank = qr.rank();
    }
    long dim_ker = cols - rank;
    long dim_coker = rows - rank;
    return dim_ker - dim_coker;
}

}  // namespace heis
