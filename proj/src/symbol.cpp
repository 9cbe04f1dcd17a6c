#include "heis/symbol.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace heis {

bool TermKey::operator<(const TermKey& o) const {
    if (gamma != o.gamma) return gamma < o.gamma;
    if (rhoQuarter != o.rhoQuarter) return rhoQuarter < o.rhoQuarter;
    if (logPow != o.logPow) return logPow < o.logPow;
    return word < o.word;
}

HSymbol HSymbol::one(FoliationShape shape, int modulus) {
    return constant(shape, ExactScalar::one(modulus));
}

HSymbol HSymbol::constant(FoliationShape shape, const ExactScalar& c) {
    HSymbol s(shape, c.modulus(), 0);
    s.add_term(FourierFunction::constant(shape.n(), c), TermKey{mi_zero(shape.n()), 0, 0, {}});
    return s;
}

HSymbol HSymbol::term(FoliationShape shape, const FourierFunction& coeff, const MultiIndex& gamma,
                      int rhoQuarter, int logPow, const CliffordWord& word) {
    TermKey key{gamma, rhoQuarter, static_cast<uint8_t>(logPow), word};
    HSymbol s(shape, coeff.modulus(), key.degree(shape));
    s.add_term(coeff, key);
    return s;
}

int HSymbol::effective_floor() const {
    if (floor_) return *floor_;
    return comps_.empty() ? top_ : comps_.begin()->first;
}

HSymbol::Component HSymbol::component(int degree) const {
    auto it = comps_.find(degree);
    return it == comps_.end() ? Component{} : it->second;
}

bool HSymbol::is_classical() const {
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp)
            if (key.logPow != 0) return false;
    return true;
}

bool HSymbol::scalar_type_leading() const {
    auto it = comps_.find(top_);
    if (it == comps_.end()) return false;
    for (const auto& [key, c] : it->second)
        if (!key.word.trivial()) return false;
    return true;
}

int HSymbol::max_clifford_index() const {
    int m = 0;
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp) {
            uint32_t mask = key.word.psi | key.word.psiBar;
            while (mask) {
                int i = 32 - __builtin_clz(mask);
                m = std::max(m, i);
                break;
            }
        }
    return m;
}

void HSymbol::reduce_and_add(const FourierFunction& coeff, TermKey key) {
    const int n = shape_.n();
    // canonical reduction of the last gamma entry through the rho relation
    struct Item {
        TermKey key;
        Rational scale;
    };
    std::deque<Item> work;
    work.push_back({std::move(key), Rational(1)});
    while (!work.empty()) {
        Item it = std::move(work.front());
        work.pop_front();
        TermKey& k = it.key;
        if (n == 1 && k.gamma[0] >= 2) {
            k.gamma[0] -= 2;
            k.rhoQuarter += 2;
            work.push_back(std::move(it));
            continue;
        }
        if (n >= 2 && shape_.h >= 1 && k.gamma[n - 1] >= 2) {
            TermKey base = k;
            base.gamma[n - 1] -= 2;
            Item rho{base, it.scale};
            rho.key.rhoQuarter += 4;
            work.push_back(std::move(rho));
            for (int i = 0; i < n - 1; ++i) {
                Item sub{base, -it.scale};
                sub.key.gamma[i] += shape_.is_leaf(i + 1) ? 4 : 2;
                work.push_back(std::move(sub));
            }
            continue;
        }
        if (n >= 2 && shape_.h == 0 && k.gamma[n - 1] >= 4) {
            TermKey base = k;
            base.gamma[n - 1] -= 4;
            Item rho{base, it.scale};
            rho.key.rhoQuarter += 4;
            work.push_back(std::move(rho));
            for (int i = 0; i < n - 1; ++i) {
                Item sub{base, -it.scale};
                sub.key.gamma[i] += 4;
                work.push_back(std::move(sub));
            }
            continue;
        }
        // reduced: merge
        int d = k.degree(shape_);
        if (floor_ && d < *floor_) continue;  // below trust: unknown, drop
        FourierFunction c = it.scale == 1 ? coeff : coeff.scaled(ExactScalar::from_rational(modulus_, it.scale));
        auto& comp = comps_[d];
        auto pos = comp.find(k);
        if (pos == comp.end()) {
            if (!c.is_zero()) comp.emplace(std::move(k), std::move(c));
        } else {
            pos->second = pos->second + c;
            if (pos->second.is_zero()) comp.erase(pos);
        }
        if (comps_.count(d) && comps_[d].empty()) comps_.erase(d);
    }
}

void HSymbol::add_term(const FourierFunction& coeff, const TermKey& key) {
    if (coeff.is_zero()) return;
    if (static_cast<int>(key.gamma.size()) != shape_.n())
        fail(ErrorKind::DimensionMismatch, "gamma size does not match shape");
    int d = key.degree(shape_);
    if (d > top_) top_ = d;
    reduce_and_add(coeff, key);
}

HSymbol HSymbol::operator+(const HSymbol& o) const {
    if (shape_ != o.shape_) fail(ErrorKind::ShapeMismatch, "shape mismatch in symbol +");
    std::optional<int> f;
    if (floor_ || o.floor_) f = std::max(floor_.value_or(INT32_MIN), o.floor_.value_or(INT32_MIN));
    HSymbol r(shape_, modulus_, std::max(top_, o.top_), f);
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp) r.reduce_and_add(c, key);
    for (const auto& [d, comp] : o.comps_)
        for (const auto& [key, c] : comp) r.reduce_and_add(c, key);
    return r;
}

HSymbol HSymbol::operator-(const HSymbol& o) const { return *this + (-o); }

HSymbol HSymbol::operator-() const {
    HSymbol r(*this);
    for (auto& [d, comp] : r.comps_)
        for (auto& [key, c] : comp) c = -c;
    return r;
}

bool HSymbol::operator==(const HSymbol& o) const {
    return shape_ == o.shape_ && modulus_ == o.modulus_ && floor_ == o.floor_ && comps_ == o.comps_;
}

HSymbol HSymbol::scaled(const ExactScalar& c) const {
    if (c.is_zero()) return HSymbol(shape_, modulus_, top_, floor_);
    HSymbol r(*this);
    for (auto& [d, comp] : r.comps_)
        for (auto& [key, f] : comp) f = f.scaled(c);
    return r;
}

HSymbol HSymbol::with_top(int new_top) const {
    HSymbol r(*this);
    r.top_ = new_top;
    return r;
}

HSymbol HSymbol::truncated(int f) const {
    HSymbol r(shape_, modulus_, top_, f);
    for (const auto& [d, comp] : comps_) {
        if (d < f) continue;
        r.comps_[d] = comp;
    }
    if (floor_ && *floor_ > f)
        r.floor_ = floor_;  // cannot gain trust by truncating lower
    return r;
}

HSymbol HSymbol::dp(int i) const {
    HSymbol r(shape_, modulus_, top_ - shape_.weight(i + 1), floor_);
    if (floor_) r.floor_ = *floor_ - shape_.weight(i + 1);
    const int n = shape_.n();
    for (const auto& [d, comp] : comps_) {
        for (const auto& [key, c] : comp) {
            // d/dp_i [ p^gamma rho^{q/4} log^l ] , with drho_i = 4 p_i^3 or 2 p_i
            if (key.gamma[i] > 0) {
                TermKey k1 = key;
                k1.gamma[i] -= 1;
                r.reduce_and_add(c.scaled(ExactScalar::from_rational(modulus_, key.gamma[i])), k1);
            }
            bool leaf = shape_.is_leaf(i + 1);
            if (key.rhoQuarter != 0) {
                TermKey k2 = key;
                k2.rhoQuarter -= 4;
                k2.gamma[i] += leaf ? 3 : 1;
                Rational factor = Rational(key.rhoQuarter, 4) * (leaf ? 4 : 2);
                r.reduce_and_add(c.scaled(ExactScalar::from_rational(modulus_, factor)), k2);
            }
            if (key.logPow > 0) {
                TermKey k3 = key;
                k3.logPow -= 1;
                k3.rhoQuarter -= 4;
                k3.gamma[i] += leaf ? 3 : 1;
                Rational factor = Rational(key.logPow) * (leaf ? 4 : 2);
                r.reduce_and_add(c.scaled(ExactScalar::from_rational(modulus_, factor)), k3);
            }
        }
    }
    (void)n;
    return r;
}

HSymbol HSymbol::dx(int i) const {
    HSymbol r(shape_, modulus_, top_, floor_);
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp) r.reduce_and_add(c.deriv(i), key);
    return r;
}

HSymbol HSymbol::pointwise(const HSymbol& o) const {
    if (shape_ != o.shape_) fail(ErrorKind::ShapeMismatch, "shape mismatch in pointwise product");
    std::optional<int> f;
    if (floor_ && o.floor_)
        f = std::max(*floor_ + o.top_, top_ + *o.floor_);
    else if (floor_)
        f = *floor_ + o.top_;
    else if (o.floor_)
        f = top_ + *o.floor_;
    HSymbol r(shape_, modulus_, top_ + o.top_, f);
    for (const auto& [da, compa] : comps_) {
        for (const auto& [ka, ca] : compa) {
            for (const auto& [db, compb] : o.comps_) {
                for (const auto& [kb, cb] : compb) {
                    int logs = ka.logPow + kb.logPow;
                    if (logs > 1) fail(ErrorKind::NotClassical, "log power overflow in product");
                    FourierFunction c = ca * cb;
                    if (c.is_zero()) continue;
                    for (const auto& sw : clifford_mul(ka.word, kb.word)) {
                        TermKey k{mi_add(ka.gamma, kb.gamma), ka.rhoQuarter + kb.rhoQuarter,
                                  static_cast<uint8_t>(logs), sw.word};
                        r.reduce_and_add(
                            sw.sign == 1 ? c : c.scaled(ExactScalar::from_rational(modulus_, sw.sign)), k);
                    }
                }
            }
        }
    }
    return r;
}

HSymbol HSymbol::times_p(int i) const {
    HSymbol r(shape_, modulus_, top_ + shape_.weight(i + 1),
              floor_ ? std::optional<int>(*floor_ + shape_.weight(i + 1)) : std::nullopt);
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp) {
            TermKey k = key;
            k.gamma[i] += 1;
            r.reduce_and_add(c, k);
        }
    return r;
}

HSymbol HSymbol::leading() const {
    HSymbol r(shape_, modulus_, top_);
    auto it = comps_.find(top_);
    if (it != comps_.end()) r.comps_[top_] = it->second;
    return r;
}

int HSymbol::parity_of_terms() const {
    int seen = -2;
    for (const auto& [d, comp] : comps_)
        for (const auto& [key, c] : comp) {
            int p = key.word.parity();
            if (seen == -2)
                seen = p;
            else if (seen != p)
                return -1;
        }
    return seen == -2 ? 0 : seen;
}

std::string HSymbol::to_string() const {
    std::ostringstream os;
    os << "HSymbol(v=" << shape_.v << ",h=" << shape_.h << ", top=" << top_;
    if (floor_)
        os << ", floor=" << *floor_;
    else
        os << ", exact";
    os << ")";
    for (const auto& [d, comp] : comps_) {
        os << "\n  deg " << d << ":";
        for (const auto& [key, c] : comp) {
            os << "\n    p^(";
            for (size_t j = 0; j < key.gamma.size(); ++j) os << (j ? "," : "") << key.gamma[j];
            os << ") rho^(" << key.rhoQuarter << "/4)";
            if (key.logPow) os << " log";
            if (!key.word.trivial()) {
                os << " psi[";
                for (int i = 1; i <= 32; ++i)
                    if (key.word.psi & (1u << (i - 1))) os << i;
                os << "] psibar[";
                for (int i = 1; i <= 32; ++i)
                    if (key.word.psiBar & (1u << (i - 1))) os << i;
                os << "]";
            }
            os << " x {";
            bool first = true;
            for (const auto& [k, v] : c.coeffs()) {
                if (!first) os << ", ";
                first = false;
                os << "e[";
                for (size_t j = 0; j < k.size(); ++j) os << (j ? "," : "") << k[j];
                os << "]*" << v.to_string();
            }
            os << "}";
        }
    }
    return os.str();
}

namespace {

// true when every dp-derivative chain of `a` terminates (polynomial p-content)
bool p_finite(const HSymbol& a) {
    for (const auto& [d, comp] : a.components())
        for (const auto& [key, c] : comp)
            if (key.logPow != 0 || key.rhoQuarter < 0 || key.rhoQuarter % 4 != 0) return false;
    return true;
}

bool x_independent(const HSymbol& a) {
    for (const auto& [d, comp] : a.components())
        for (const auto& [key, c] : comp)
            if (!c.is_constant()) return false;
    return true;
}

int p_size(const HSymbol& a) {
    int m = 0;
    for (const auto& [d, comp] : a.components())
        for (const auto& [key, c] : comp) m = std::max(m, mi_total(key.gamma) + key.rhoQuarter);
    return m;
}

}  // namespace

HSymbol star(const HSymbol& a, const HSymbol& b) {
    if (a.shape() != b.shape()) fail(ErrorKind::ShapeMismatch, "shape mismatch in star product");
    const FoliationShape& shape = a.shape();
    const int n = shape.n();
    const int modulus = a.modulus();

    bool term_by_pa = p_finite(a);
    bool term_by_xb = x_independent(b);
    bool exact = a.is_exact() && b.is_exact() && (term_by_pa || term_by_xb);

    std::optional<int> floor;
    if (!exact) {
        if (a.is_exact() && b.is_exact())
            fail(ErrorKind::TruncationRequired,
                 "star expansion does not terminate; truncate an argument first");
        if (a.floor() && b.floor())
            floor = std::max(*a.floor() + b.top(), a.top() + *b.floor());
        else if (a.floor())
            floor = *a.floor() + b.top();
        else
            floor = a.top() + *b.floor();
    }

    int top = a.top() + b.top();
    HSymbol result(shape, modulus, top, floor);

    // weighted alpha bound: contributions to degree >= floor need <alpha> <= top - floor
    int weight_bound;
    if (floor)
        weight_bound = top - *floor;
    else if (term_by_xb)
        weight_bound = 0;
    else
        weight_bound = 2 * p_size(a);  // each dp strictly shrinks polynomial p-content

    ExactScalar minus_i = -ExactScalar::i_unit(modulus);

    // iterate alpha by increasing weight, reusing dp-derivative chains
    std::map<MultiIndex, HSymbol> da_cache;
    da_cache.emplace(mi_zero(n), a);
    for (const MultiIndex& alpha : enumerate_weighted(shape, weight_bound)) {
        // compute dp^alpha a via cache
        auto it = da_cache.find(alpha);
        if (it == da_cache.end()) {
            int j = 0;
            while (alpha[j] == 0) ++j;
            MultiIndex prev = alpha;
            prev[j] -= 1;
            const HSymbol& dprev = da_cache.at(prev);
            it = da_cache.emplace(alpha, dprev.dp(j)).first;
        }
        const HSymbol& da = it->second;
        if (da.is_zero()) continue;
        // dx^alpha b
        HSymbol db = b;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < alpha[j]; ++k) db = db.dx(j);
        if (db.is_zero()) continue;

        int total = mi_total(alpha);
        Rational inv_fact = 1;
        for (int j = 0; j < n; ++j) inv_fact /= Rational(factorial(alpha[j]));
        ExactScalar coeff = minus_i.pow(total).scaled(inv_fact);

        HSymbol contrib = da.pointwise(db).scaled(coeff);
        for (const auto& [d, comp] : contrib.components())
            for (const auto& [key, c] : comp) result.reduce_and_add(c, key);
    }
    return result;
}

HSymbol star_commutator(const HSymbol& a, const HSymbol& b) { return star(a, b) - star(b, a); }

HSymbol build_symbol(BuilderKind kind, const FoliationShape& shape, int modulus, int index) {
    const int n = shape.n();
    FourierFunction one = FourierFunction::one(n, modulus);
    switch (kind) {
        case BuilderKind::Rho:
            return HSymbol::term(shape, one, mi_zero(n), 4, 0, {});
        case BuilderKind::Q1:
            return HSymbol::term(shape, one, mi_zero(n), 1, 0, {});
        case BuilderKind::ChiPlus: {
            if (index < 1 || index > n) fail(ErrorKind::BadIndex, "chiPlus index out of range");
            int d = shape.weight(index);
            FourierFunction half = FourierFunction::constant(n, ExactScalar::from_rational(modulus, Rational(1, 2)));
            HSymbol s = HSymbol::term(shape, half, mi_zero(n), 0, 0, {});
            HSymbol t = HSymbol::term(shape, half, mi_unit(n, index - 1), -d, 0, {});
            return s + t;
        }
        case BuilderKind::SubLaplacian: {
            // full left-quantization symbol of Delta_H on the flat torus:
            // sum p_i^4 + sum p_j^2, which canonicalizes to rho
            HSymbol s = HSymbol::zero(shape, modulus, 4);
            for (int i = 0; i < n; ++i) {
                MultiIndex g = mi_zero(n);
                g[i] = shape.is_leaf(i + 1) ? 4 : 2;
                s.add_term(one, TermKey{g, 0, 0, {}});
            }
            return s;
        }
    }
    throw std::logic_error("unknown builder");
}

bool is_heisenberg_elliptic(const HSymbol& a) {
    if (!a.is_classical()) fail(ErrorKind::NotClassical, "ellipticity requires a classical symbol");
    auto comp = a.component(a.top());
    if (comp.empty()) fail(ErrorKind::UnsupportedLeading, "empty leading component");
    if (comp.size() != 1) fail(ErrorKind::UnsupportedLeading, "leading component is a sum of monomials");
    const auto& [key, coeff] = *comp.begin();
    if (!key.word.trivial()) fail(ErrorKind::UnsupportedLeading, "leading component is not scalar type");
    if (a.shape().n() >= 2 && mi_total(key.gamma) != 0)
        fail(ErrorKind::UnsupportedLeading, "leading p-monomial vanishes off the rho axis");
    if (coeff.coeffs().size() != 1)
        fail(ErrorKind::UnsupportedLeading, "leading coefficient is a multi-term trigonometric polynomial");
    const auto& [mode, c] = *coeff.coeffs().begin();
    if (!c.is_monomial()) fail(ErrorKind::UnsupportedLeading, "leading scalar is not a unit monomial");
    return true;
}

HSymbol parametrix(const HSymbol& a, int floor) {
    is_heisenberg_elliptic(a);  // throws if unsupported
    const FoliationShape& shape = a.shape();
    const int n = shape.n();
    const int modulus = a.modulus();
    const int m = a.top();

    auto comp = a.component(m);
    const auto& [key, coeff] = *comp.begin();
    const auto& [mode, c] = *coeff.coeffs().begin();

    // leading inverse b0 = c^{-1} e^{-2 pi i k.x} p^{-gamma} rho^{-q/4}
    FourierFunction::Mode neg(mode.size());
    for (size_t j = 0; j < mode.size(); ++j) neg[j] = -mode[j];
    FourierFunction inv_coeff = FourierFunction::character(n, neg, c.inverse());
    TermKey inv_key;
    inv_key.gamma = key.gamma;  // n>=2 forces gamma=0; n=1 inverts via p^{-1} = p rho^{-1/2}
    inv_key.rhoQuarter = -key.rhoQuarter - 2 * mi_total(key.gamma);
    inv_key.logPow = 0;
    inv_key.word = {};
    HSymbol b0 = HSymbol::term(shape, inv_coeff, inv_key.gamma, inv_key.rhoQuarter, 0, {});

    // b = b0 (1 + r + r^2 + ...) with r = 1 - a * b0; trust bookkeeping gives
    // floor(b) = floor(a) - 2m, so the argument must be known down to floor + 2m.
    HSymbol a_use = a;
    if (a.is_exact()) {
        if (!p_finite(a) && !x_independent(b0))
            a_use = a.truncated(std::min(floor + 2 * m, m));
    } else if (a.effective_floor() > floor + 2 * m) {
        fail(ErrorKind::TruncationTooShallow, "parametrix: argument floor too shallow for requested depth");
    }

    HSymbol r = HSymbol::one(shape, modulus) - star(a_use, b0);
    if (r.is_exact() && !r.is_zero() && !x_independent(r) && !p_finite(r))
        r = r.truncated(floor + m);

    HSymbol series = HSymbol::one(shape, modulus);
    HSymbol power = r;
    int guard = 0;
    while (!power.is_zero() && guard < 200) {
        int actual_top = power.components().empty() ? INT32_MIN : power.components().rbegin()->first;
        if (actual_top == INT32_MIN || actual_top < floor + m) break;
        power = power.with_top(actual_top);
        series = series + power;
        power = star(power, r);
        ++guard;
    }
    HSymbol b = star(b0, series);
    if (b.is_exact()) return b;
    if (b.effective_floor() > floor)
        fail(ErrorKind::TruncationTooShallow, "parametrix: could not reach requested floor");
    return b.truncated(floor);
}

HSymbol log_quarter_rho(const FoliationShape& shape, int modulus) {
    FourierFunction quarter =
        FourierFunction::constant(shape.n(), ExactScalar::from_rational(modulus, Rational(1, 4)));
    return HSymbol::term(shape, quarter, mi_zero(shape.n()), 0, 1, {});
}

HSymbol log_commutator(const HSymbol& b) {
    if (!b.is_classical()) fail(ErrorKind::NotClassical, "log_commutator requires a classical symbol");
    const FoliationShape& shape = b.shape();
    HSymbol L = log_quarter_rho(shape, b.modulus());
    if (x_independent(b)) return HSymbol::zero(shape, b.modulus(), b.top(), b.floor());
    HSymbol lc = star(L, b) - star(b, L);
    if (!lc.is_classical()) throw std::logic_error("log terms failed to cancel in log_commutator");
    return lc.with_top(b.top());
}

}  // namespace heis
