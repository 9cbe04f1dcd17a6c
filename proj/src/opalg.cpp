#include "heis/opalg.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace heis {

OpSeries OpSeries::identity(FoliationShape shape, int modulus, int eps_truncation) {
    OpSeries s(shape, modulus, eps_truncation);
    s.add(OpKey{{}, mi_zero(shape.n()), mi_zero(shape.n()), 0}, HSymbol::one(shape, modulus));
    return s;
}

OpSeries OpSeries::left_symbol(const HSymbol& a, int eps_truncation, int eps_pow) {
    OpSeries s(a.shape(), a.modulus(), eps_truncation);
    s.add(OpKey{{}, mi_zero(a.shape().n()), mi_zero(a.shape().n()), eps_pow}, a);
    return s;
}

OpSeries OpSeries::term(FoliationShape shape, const HSymbol& leftSym, const CliffordWord& w,
                        const MultiIndex& dx, const MultiIndex& dp, int epsPow, int eps_truncation) {
    OpSeries s(shape, leftSym.modulus(), eps_truncation);
    s.add(OpKey{w, dx, dp, epsPow}, leftSym);
    return s;
}

void OpSeries::add(const OpKey& key, const HSymbol& leftSym) {
    if (key.epsPow > trunc_) return;
    if (leftSym.is_zero() && !leftSym.floor()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, leftSym);
    } else {
        it->second = it->second + leftSym;
        if (it->second.is_zero() && !it->second.floor()) terms_.erase(it);
    }
}

OpSeries OpSeries::operator+(const OpSeries& o) const {
    OpSeries r(*this);
    r.trunc_ = std::min(trunc_, o.trunc_);
    std::erase_if(r.terms_, [&](const auto& kv) { return kv.first.epsPow > r.trunc_; });
    for (const auto& [k, a] : o.terms_) r.add(k, a);
    return r;
}

OpSeries OpSeries::operator-(const OpSeries& o) const { return *this + (-o); }

OpSeries OpSeries::operator-() const {
    OpSeries r(*this);
    for (auto& [k, a] : r.terms_) a = -a;
    return r;
}

bool OpSeries::operator==(const OpSeries& o) const {
    return shape_ == o.shape_ && trunc_ == o.trunc_ && terms_ == o.terms_;
}

OpSeries OpSeries::scaled(const ExactScalar& c) const {
    OpSeries r(shape_, modulus_, trunc_);
    for (const auto& [k, a] : terms_) r.add(k, a.scaled(c));
    return r;
}

OpSeries OpSeries::scaled(const Rational& q) const {
    return scaled(ExactScalar::from_rational(modulus_, q));
}

OpSeries OpSeries::with_truncation(int n) const {
    OpSeries r(shape_, modulus_, n);
    for (const auto& [k, a] : terms_) r.add(k, a);
    return r;
}

int OpSeries::parity() const {
    int seen = -2;
    for (const auto& [k, a] : terms_) {
        int wp = k.rightWord.parity();
        for (const auto& [d, comp] : a.components())
            for (const auto& [key, c] : comp) {
                int p = (wp + key.word.parity()) & 1;
                if (seen == -2)
                    seen = p;
                else if (seen != p)
                    return -1;
            }
    }
    return seen == -2 ? 0 : seen;
}

namespace {

// splits a symbol by the parity of its Clifford words
std::pair<HSymbol, HSymbol> split_parity(const HSymbol& a) {
    HSymbol even(a.shape(), a.modulus(), a.top(), a.floor());
    HSymbol odd(a.shape(), a.modulus(), a.top(), a.floor());
    for (const auto& [d, comp] : a.components())
        for (const auto& [key, c] : comp) {
            if (key.word.parity() == 0)
                even.add_term(c, key);
            else
                odd.add_term(c, key);
        }
    return {even.with_top(a.top()), odd.with_top(a.top())};
}

HSymbol iterated_deriv(const HSymbol& b, const MultiIndex& mu_x, const MultiIndex& nu_p) {
    HSymbol r = b;
    for (size_t j = 0; j < mu_x.size(); ++j)
        for (int k = 0; k < mu_x[j]; ++k) r = r.dx(static_cast<int>(j));
    for (size_t j = 0; j < nu_p.size(); ++j)
        for (int k = 0; k < nu_p[j]; ++k) r = r.dp(static_cast<int>(j));
    return r;
}

void enumerate_sub(const MultiIndex& bound, MultiIndex& cur, size_t i,
                   const std::function<void(const MultiIndex&)>& fn) {
    if (i == bound.size()) {
        fn(cur);
        return;
    }
    for (int a = 0; a <= bound[i]; ++a) {
        cur[i] = static_cast<uint16_t>(a);
        enumerate_sub(bound, cur, i + 1, fn);
    }
    cur[i] = 0;
}

Rational binom_product(const MultiIndex& a, const MultiIndex& b) {
    Rational r = 1;
    for (size_t i = 0; i < a.size(); ++i) r *= Rational(binomial(a[i], b[i]));
    return r;
}

}  // namespace

OpSeries op_compose(const OpSeries& s, const OpSeries& t) {
    if (s.shape() != t.shape()) fail(ErrorKind::ShapeMismatch, "op_compose shape mismatch");
    const int n = s.shape().n();
    const int modulus = s.modulus();
    OpSeries result(s.shape(), modulus, std::min(s.eps_truncation(), t.eps_truncation()));

    for (const auto& [k1, a] : s.terms()) {
        int w1p = k1.rightWord.parity();
        for (const auto& [k2, b] : t.terms()) {
            int eps = k1.epsPow + k2.epsPow;
            if (eps > result.eps_truncation()) continue;
            // Leibniz: dx^{a1} dp^{b1} b_L = sum (a1 choose mu)(b1 choose nu)
            //          (dx^mu dp^nu b)_L dx^{a1-mu} dp^{b1-nu}
            MultiIndex mu(n, 0);
            enumerate_sub(k1.dx, mu, 0, [&](const MultiIndex& mu_fixed) {
                MultiIndex nu(n, 0);
                MultiIndex mu_copy = mu_fixed;
                enumerate_sub(k1.dp, nu, 0, [&](const MultiIndex& nu_fixed) {
                    HSymbol db = iterated_deriv(b, mu_copy, nu_fixed);
                    if (db.is_zero() && !db.floor()) return;
                    Rational cmult = binom_product(k1.dx, mu_copy) * binom_product(k1.dp, nu_fixed);
                    // right word w1 graded-commutes past the derived left symbol
                    auto [db_even, db_odd] = split_parity(db);
                    for (int par = 0; par < 2; ++par) {
                        const HSymbol& piece = par == 0 ? db_even : db_odd;
                        if (piece.is_zero() && !piece.floor()) continue;
                        int sign = (w1p && par) ? -1 : 1;
                        HSymbol left = star(a, piece).scaled(
                            ExactScalar::from_rational(modulus, sign == 1 ? cmult : -cmult));
                        // right-word slot: R_{w1} o R_{w2} = (-1)^{|w1||w2|} R_{w2 w1}
                        int koszul = (w1p && k2.rightWord.parity()) ? -1 : 1;
                        MultiIndex dx_new = mi_add(mi_sub(k1.dx, mu_copy), k2.dx);
                        MultiIndex dp_new = mi_add(mi_sub(k1.dp, nu_fixed), k2.dp);
                        for (const auto& sw : clifford_mul(k2.rightWord, k1.rightWord)) {
                            int total = koszul * sw.sign;
                            result.add(OpKey{sw.word, dx_new, dp_new, eps},
                                       total == 1 ? left : -left);
                        }
                    }
                });
            });
        }
    }
    return result;
}

OpSeries op_commutator(const OpSeries& s, const OpSeries& t) {
    return op_compose(s, t) - op_compose(t, s);
}

namespace {

// 2m-value of a single term component: 2*deg - (k + sum (2d_i-1) dp_i - 3|dx|)
int two_m_of(const FoliationShape& shape, const OpKey& key, int component_degree) {
    int f = key.epsPow - 3 * mi_total(key.dx);
    for (size_t i = 0; i < key.dp.size(); ++i)
        f += (2 * shape.weight(static_cast<int>(i) + 1) - 1) * key.dp[i];
    return 2 * component_degree - f;
}

}  // namespace

bool in_filtration(const OpSeries& s, int two_m, int k) {
    for (const auto& [key, a] : s.terms()) {
        if (key.epsPow < k) return false;
        if (mi_total(key.dx) > key.epsPow) return false;
        for (const auto& [d, comp] : a.components())
            if (two_m_of(s.shape(), key, d) > two_m) return false;
    }
    return true;
}

int filtration_two_m(const OpSeries& s) {
    int m = INT_MIN;
    for (const auto& [key, a] : s.terms())
        for (const auto& [d, comp] : a.components())
            m = std::max(m, two_m_of(s.shape(), key, d));
    return m;
}

GeneralizedLaplacian flat_laplacian(const FoliationShape& shape, int modulus, int eps_truncation) {
    OpSeries s(shape, modulus, eps_truncation);
    HSymbol i_sym = HSymbol::constant(shape, ExactScalar::i_unit(modulus));
    for (int i = 0; i < shape.n(); ++i)
        s.add(OpKey{{}, mi_unit(shape.n(), i), mi_unit(shape.n(), i), 1}, i_sym);
    return {s};
}

bool is_generalized_laplacian(const OpSeries& s) {
    if (s.parity() == 1 || s.parity() == -1) return false;
    if (!in_filtration(s, 1, 1)) return false;  // D^{1/2}_1
    OpSeries defect = s - flat_laplacian(s.shape(), s.modulus(), s.eps_truncation()).op;
    return in_filtration(defect, 0, 1);  // = flat mod D^0_1
}

OpPolynomial sigma_conj(const GeneralizedLaplacian& delta, const OpSeries& s) {
    OpPolynomial out;
    OpSeries cur = s;
    Rational inv_fact = 1;
    int j = 0;
    while (!cur.is_zero()) {
        out.push_back(cur.scaled(inv_fact));
        ++j;
        inv_fact /= j;
        cur = op_commutator(delta.op, cur);
        if (j > 4 * (s.eps_truncation() + 2)) break;  // each ad raises the eps power
    }
    if (out.empty()) out.push_back(s);
    return out;
}

OpSeries op_poly_eval_one(const OpPolynomial& p) {
    OpSeries r = p[0];
    for (size_t j = 1; j < p.size(); ++j) r = r + p[j];
    return r;
}

OpSeries sigma_at_one(const GeneralizedLaplacian& delta, const OpSeries& s) {
    return op_poly_eval_one(sigma_conj(delta, s));
}

namespace {

// polynomial in u with OpSeries coefficients
using UPoly = std::vector<OpSeries>;

UPoly upoly_integrate(const UPoly& p) {
    // int_0^u q(w) dw
    UPoly r;
    r.reserve(p.size() + 1);
    r.push_back(OpSeries(p[0].shape(), p[0].modulus(), p[0].eps_truncation()));
    for (size_t m = 0; m < p.size(); ++m) r.push_back(p[m].scaled(Rational(1, m + 1)));
    return r;
}

UPoly upoly_compose_mul(const UPoly& a, const UPoly& b) {
    UPoly r(a.size() + b.size() - 1, OpSeries(a[0].shape(), a[0].modulus(), a[0].eps_truncation()));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + op_compose(a[i], b[j]);
        }
    }
    return r;
}

OpSeries upoly_eval_one(const UPoly& p) {
    OpSeries r = p[0];
    for (size_t j = 1; j < p.size(); ++j) r = r + p[j];
    return r;
}

bool all_terms_carry_eps(const OpSeries& s) {
    for (const auto& [k, a] : s.terms())
        if (k.epsPow < 1) return false;
    return true;
}

}  // namespace

TraceClassElement duhamel_exp(const GeneralizedLaplacian& delta, const OpSeries& s) {
    if (!all_terms_carry_eps(s))
        fail(ErrorKind::NotInFiltration, "Duhamel perturbation must lie in D^0_1 (eps in every term)");
    const int N = s.eps_truncation();
    OpPolynomial sigma = sigma_conj(delta, s);

    // G_k(u) = int_{0<=u_1<=...<=u_k<=u} sigma^{u_1}(s)...sigma^{u_k}(s) du,
    // via G_k(u) = int_0^u G_{k-1}(w) sigma^w(s) dw.
    OpSeries total = OpSeries::identity(s.shape(), s.modulus(), N);
    UPoly g = {OpSeries::identity(s.shape(), s.modulus(), N)};
    for (int k = 1; k <= N; ++k) {
        g = upoly_integrate(upoly_compose_mul(g, sigma));
        OpSeries gk = upoly_eval_one(g);
        if (gk.is_zero()) break;
        total = total + gk;
    }
    return {total};
}

OpSeries exp_direct(const OpSeries& total, int eps_truncation) {
    if (!all_terms_carry_eps(total))
        fail(ErrorKind::NotInFiltration, "exp_direct needs eps in every term");
    OpSeries r = OpSeries::identity(total.shape(), total.modulus(), eps_truncation);
    OpSeries pow = r;
    for (int j = 1; j <= eps_truncation; ++j) {
        pow = op_compose(pow, total);
        if (pow.is_zero()) break;
        r = r + pow.scaled(Rational(1, factorial(j)));
    }
    return r;
}

OpSeries duhamel_first_form(const GeneralizedLaplacian& delta, const OpSeries& s) {
    // sum_k int_{Delta_k} exp(t_0 D) s exp(t_1 D) ... s exp(t_k D) dt over the
    // simplex {t_i >= 0, sum t_i = 1}. Substituting cumulative coordinates
    // u_j = t_0+..+t_{j-1} and using exp(a D) X = sigma^a(X) exp(a D):
    // equal to the second form; here we instead expand every exponential as a
    // power series in its own simplex variable and integrate monomials exactly
    // over {t >= 0, sum t = 1}: int prod t_i^{a_i} dt = prod a_i! / (k + sum a_i)!.
    if (!all_terms_carry_eps(s))
        fail(ErrorKind::NotInFiltration, "Duhamel perturbation must lie in D^0_1");
    const int N = s.eps_truncation();
    const FoliationShape shape = s.shape();
    const int modulus = s.modulus();

    // exp(t D) truncated: list of (OpSeries coefficient, power of t)
    auto exp_poly = [&]() {
        std::vector<OpSeries> c;
        c.push_back(OpSeries::identity(shape, modulus, N));
        OpSeries pow = c[0];
        for (int j = 1; j <= N; ++j) {
            pow = op_compose(pow, delta.op);
            if (pow.is_zero()) break;
            c.push_back(pow.scaled(Rational(1, factorial(j))));
        }
        return c;
    }();

    OpSeries total(shape, modulus, N);
    // k = number of s insertions; k <= N because each s carries eps
    for (int k = 0; k <= N; ++k) {
        // product over segments 0..k of exp(t_i D), with s between segments;
        // enumerate the exponents a_0..a_k of each exponential factor
        std::vector<size_t> idx(k + 1, 0);
        while (true) {
            // assemble term
            int total_eps_min = 0;
            for (int seg = 0; seg <= k; ++seg) total_eps_min += static_cast<int>(idx[seg]);
            if (total_eps_min + k <= N) {
                OpSeries prod = exp_poly[idx[0]];
                bool dead = prod.is_zero();
                for (int seg = 1; seg <= k && !dead; ++seg) {
                    prod = op_compose(prod, s);
                    prod = op_compose(prod, exp_poly[idx[seg]]);
                    dead = prod.is_zero();
                }
                if (!dead) {
                    Integer num = 1;
                    Integer total_a = 0;
                    for (int seg = 0; seg <= k; ++seg) {
                        num *= factorial(static_cast<unsigned>(idx[seg]));
                        total_a += static_cast<int>(idx[seg]);
                    }
                    Integer den = factorial(static_cast<unsigned>(k + static_cast<int>(total_a)));
                    total = total + prod.scaled(Rational(num, den));
                }
            }
            // advance multi-counter
            int pos = 0;
            while (pos <= k) {
                if (idx[pos] + 1 < exp_poly.size()) {
                    ++idx[pos];
                    bool feasible = true;
                    int sum = 0;
                    for (int seg = 0; seg <= k; ++seg) sum += static_cast<int>(idx[seg]);
                    feasible = sum + k <= N;
                    if (feasible) break;
                }
                idx[pos] = 0;
                ++pos;
            }
            if (pos > k) break;
        }
    }
    return total;
}

BracketValue bracket_contract(const MultiIndex& dx, const MultiIndex& dp, int modulus) {
    BracketValue out{ExactScalar::zero(modulus), mi_total(dx)};
    if (mi_total(dx) != mi_total(dp)) return out;
    if (dx != dp) return out;  // matchings require identical multi-indices
    // number of bijections between equal multisets: prod (dx_i)!
    Integer count = 1;
    for (auto a : dx) count *= factorial(a);
    out.coeff = ExactScalar::i_unit(modulus).pow(mi_total(dx)).scaled(Rational(count));
    return out;
}

EpsSymbol double_bracket(const TraceClassElement& t) {
    const OpSeries& p = t.prefactor;
    const FoliationShape& shape = p.shape();
    const int n = shape.n();
    const int modulus = p.modulus();
    EpsSymbol out;
    for (const auto& [key, leftSym] : p.terms()) {
        BracketValue bv = bracket_contract(key.dx, key.dp, modulus);
        if (bv.coeff.is_zero()) continue;
        // <(psi^eta psibar^theta)_R> = (-1)^n tr_s(psi^eta psibar^theta)
        Integer ws = clifford_str(key.rightWord, n);
        if (n % 2 == 1) ws = -ws;
        if (ws == 0) continue;
        int eps_power = key.epsPow - bv.epsNeg;
        HSymbol piece = leftSym.scaled(bv.coeff.scaled(Rational(ws)));
        auto it = out.find(eps_power);
        if (it == out.end())
            out.emplace(eps_power, piece);
        else
            it->second = it->second + piece;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero() && !kv.second.floor(); });
    return out;
}

EpsSeries scalar_bracket(const OpSeries& prefactor, int eps_truncation) {
    const int modulus = prefactor.modulus();
    EpsSeries out(modulus, eps_truncation);
    HSymbol acc_check(prefactor.shape(), modulus, 0);
    for (const auto& [key, leftSym] : prefactor.terms()) {
        if (!key.rightWord.trivial())
            fail(ErrorKind::NotInFiltration, "scalar bracket applies to word-free prefactors");
        BracketValue bv = bracket_contract(key.dx, key.dp, modulus);
        if (bv.coeff.is_zero()) continue;
        int eps_power = key.epsPow - bv.epsNeg;
        if (eps_power < 0 || eps_power > eps_truncation)
            fail(ErrorKind::NotInFiltration, "scalar bracket produced out-of-range eps power");
        HSymbol piece = leftSym.scaled(bv.coeff);
        // the contracted value must be a pure constant
        ExactScalar val = ExactScalar::zero(modulus);
        for (const auto& [d, comp] : piece.components()) {
            for (const auto& [tk, c] : comp) {
                if (d != 0 || mi_total(tk.gamma) != 0 || tk.rhoQuarter != 0 || tk.logPow != 0 ||
                    !tk.word.trivial() || !c.is_constant())
                    fail(ErrorKind::NotInFiltration, "scalar bracket left a non-constant symbol");
                val += c.integral();
            }
        }
        EpsSeries add(modulus, eps_truncation);
        add.set(eps_power, val);
        out += add;
    }
    return out;
}

ExactScalar tr_s(const TraceClassElement& t, WordTrace residual) {
    EpsSymbol db = double_bracket(t);
    const int n = t.prefactor.shape().n();
    auto it = db.find(n);
    if (it == db.end()) return ExactScalar::zero(t.prefactor.modulus());
    return wres_with(it->second, residual);
}

namespace {

OpSeries p_dot_r_dp(const EpsMatrix& R, const FoliationShape& shape, int trunc) {
    const int n = shape.n();
    const int modulus = R[0][0].modulus();
    OpSeries s(shape, modulus, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 1; k <= R[i][j].trunc(); ++k) {
                const ExactScalar& c = R[i][j][k];
                if (c.is_zero()) continue;
                HSymbol p_i = HSymbol::term(shape, FourierFunction::constant(n, c), mi_unit(n, i), 0, 0, {});
                s.add(OpKey{{}, mi_zero(n), mi_unit(n, j), k}, p_i);
            }
        }
    return s;
}

}  // namespace

EpsSeries mehler_bracket(const EpsMatrix& R, int eps_truncation) {
    if (R.empty()) fail(ErrorKind::BadIndex, "empty matrix");
    const int n = static_cast<int>(R.size());
    FoliationShape shape(n, 0);
    const int modulus = R[0][0].modulus();
    GeneralizedLaplacian delta = flat_laplacian(shape, modulus, eps_truncation);
    OpSeries s = p_dot_r_dp(R, shape, eps_truncation);
    TraceClassElement heat = duhamel_exp(delta, s);
    return scalar_bracket(heat.prefactor, eps_truncation);
}

EpsSeries mehler_vanishing(const MultiIndex& alpha, const EpsMatrix& R, int eps_truncation) {
    const int n = static_cast<int>(R.size());
    FoliationShape shape(n, 0);
    const int modulus = R[0][0].modulus();
    GeneralizedLaplacian delta = flat_laplacian(shape, modulus, eps_truncation);
    OpSeries s = p_dot_r_dp(R, shape, eps_truncation);
    TraceClassElement heat = duhamel_exp(delta, s);

    // prefix (i eps dx_i + (p.R)_i)^{alpha_i}
    OpSeries prefix = OpSeries::identity(shape, modulus, eps_truncation);
    for (int i = 0; i < n; ++i) {
        OpSeries factor(shape, modulus, eps_truncation);
        factor.add(OpKey{{}, mi_unit(n, i), mi_zero(n), 1},
                   HSymbol::constant(shape, ExactScalar::i_unit(modulus)));
        for (int k = 0; k < n; ++k)
            for (int e = 0; e <= R[k][i].trunc(); ++e) {
                const ExactScalar& c = R[k][i][e];
                if (c.is_zero()) continue;
                factor.add(OpKey{{}, mi_zero(n), mi_zero(n), e},
                           HSymbol::term(shape, FourierFunction::constant(n, c), mi_unit(n, k), 0, 0, {}));
            }
        for (int rep = 0; rep < alpha[i]; ++rep) prefix = op_compose(prefix, factor);
    }
    OpSeries total = op_compose(prefix, heat.prefactor);
    return scalar_bracket(total, eps_truncation);
}

}  // namespace heis
