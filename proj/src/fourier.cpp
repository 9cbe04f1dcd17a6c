#include "heis/fourier.hpp"

#include "heis/error.hpp"

namespace heis {

FourierFunction FourierFunction::constant(int dim, const ExactScalar& c) {
    FourierFunction f(dim, c.modulus());
    f.set_coeff(Mode(dim, 0), c);
    return f;
}

FourierFunction FourierFunction::character(int dim, const Mode& k, const ExactScalar& c) {
    if (static_cast<int>(k.size()) != dim) fail(ErrorKind::DimensionMismatch, "character mode size");
    FourierFunction f(dim, c.modulus());
    f.set_coeff(k, c);
    return f;
}

ExactScalar FourierFunction::coeff(const Mode& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? ExactScalar::zero(modulus_) : it->second;
}

void FourierFunction::set_coeff(const Mode& k, const ExactScalar& c) {
    if (c.is_zero())
        coeffs_.erase(k);
    else
        coeffs_[k] = c;
}

void FourierFunction::add_coeff(const Mode& k, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        coeffs_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void FourierFunction::check_same(const FourierFunction& o) const {
    if (dim_ != o.dim_) fail(ErrorKind::DimensionMismatch, "torus dimension mismatch");
    if (modulus_ != o.modulus_) fail(ErrorKind::ModulusMismatch, "scalar modulus mismatch");
}

FourierFunction FourierFunction::operator+(const FourierFunction& o) const {
    check_same(o);
    FourierFunction r(*this);
    for (const auto& [k, c] : o.coeffs_) r.add_coeff(k, c);
    return r;
}

FourierFunction FourierFunction::operator-(const FourierFunction& o) const { return *this + (-o); }

FourierFunction FourierFunction::operator-() const {
    FourierFunction r(*this);
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
}

FourierFunction FourierFunction::operator*(const FourierFunction& o) const {
    check_same(o);
    FourierFunction r(dim_, modulus_);
    Mode sum(dim_);
    for (const auto& [ka, ca] : coeffs_) {
        for (const auto& [kb, cb] : o.coeffs_) {
            for (int j = 0; j < dim_; ++j) sum[j] = ka[j] + kb[j];
            r.add_coeff(sum, ca * cb);
        }
    }
    return r;
}

bool FourierFunction::operator==(const FourierFunction& o) const {
    return dim_ == o.dim_ && modulus_ == o.modulus_ && coeffs_ == o.coeffs_;
}

FourierFunction FourierFunction::scaled(const ExactScalar& c) const {
    FourierFunction r(dim_, modulus_);
    for (const auto& [k, v] : coeffs_) r.add_coeff(k, v * c);
    return r;
}

FourierFunction FourierFunction::deriv(int j) const {
    if (j < 0 || j >= dim_) fail(ErrorKind::BadIndex, "derivative index out of range");
    FourierFunction r(dim_, modulus_);
    ExactScalar tpi = ExactScalar::two_pi_i(modulus_);
    for (const auto& [k, c] : coeffs_) {
        if (k[j] == 0) continue;
        r.add_coeff(k, c * tpi.scaled(k[j]));
    }
    return r;
}

FourierFunction FourierFunction::conj() const {
    FourierFunction r(dim_, modulus_);
    for (const auto& [k, c] : coeffs_) {
        Mode neg(dim_);
        for (int j = 0; j < dim_; ++j) neg[j] = -k[j];
        r.add_coeff(neg, c.conj());
    }
    return r;
}

ExactScalar FourierFunction::integral() const { return coeff(Mode(dim_, 0)); }

bool FourierFunction::is_constant() const {
    if (coeffs_.empty()) return true;
    return coeffs_.size() == 1 && coeffs_.begin()->first == Mode(dim_, 0);
}

FourierFunction FourierFunction::pullback_affine(const std::vector<std::vector<int>>& p_matrix,
                                                 const std::vector<Rational>& translation) const {
    FourierFunction r(dim_, modulus_);
    for (const auto& [k, c] : coeffs_) {
        // e^{2 pi i k.(Px+b)} = e^{2 pi i k.b} e^{2 pi i (P^T k).x}
        Mode kt(dim_, 0);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) kt[j] += k[i] * p_matrix[i][j];
        Rational phase = 0;
        for (int i = 0; i < dim_; ++i) phase += Rational(k[i]) * translation[i];
        ExactScalar twist = ExactScalar::from_cyclotomic(Cyclotomic::root_of_unity(modulus_, phase));
        r.add_coeff(kt, c * twist);
    }
    return r;
}

}  // namespace heis
