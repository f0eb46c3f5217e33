#include "hsd/poly.hpp"

namespace hsd {

Poly::Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
}

Poly Poly::constant(std::uint64_t p, std::uint64_t v) {
    Poly r(p);
    if (v % p) r.c_ = {v % p};
    return r;
}

Poly Poly::variable(std::uint64_t p) {
    Poly r(p);
    r.c_ = {0, 1};
    return r;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly& Poly::negate() {
    for (auto& x : c_)
        if (x) x = p_ - x;
    return *this;
}

Poly Poly::scaled(std::uint64_t s) const {
    s %= p_;
    Poly r(p_);
    if (!s) return r;
    r.c_.reserve(c_.size());
    for (auto x : c_) r.c_.push_back(mod_mul(x, s, p_));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    require(!is_zero(), "Poly::monic: zero polynomial");
    return scaled(mod_inv(leading(), p_));
}

Poly Poly::derivative() const {
    Poly r(p_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = mod_mul(c_[i], i % p_, p_);
    r.trim();
    return r;
}

Poly Poly::substitute_power(std::uint64_t k) const {
    require(k >= 1, "Poly::substitute_power: exponent must be >= 1");
    Poly r(p_);
    if (is_zero()) return r;
    r.c_.assign((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
    return r;
}

std::vector<Poly> Poly::residue_split(std::uint64_t q) const {
    std::vector<Poly> parts(q, Poly(p_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        auto& pc = parts[i % q].c_;
        std::size_t slot = i / q;
        if (pc.size() <= slot) pc.resize(slot + 1, 0);
        pc[slot] = c_[i];
    }
    return parts;
}

Scalar Poly::eval(const Scalar& x) const {
    check_same_prime(p_, x.p, "Poly::eval");
    std::uint64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = mod_add(mod_mul(acc, x.v, p_), c_[i], p_);
    return {acc, p_};
}

Poly Poly::pow(std::uint64_t e) const {
    Poly r = Poly::constant(p_, 1);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    check_same_prime(a.p_, b.p_, "Poly+");
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = mod_add(a.coeff(i), b.coeff(i), a.p_);
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    check_same_prime(a.p_, b.p_, "Poly-");
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = mod_sub(a.coeff(i), b.coeff(i), a.p_);
    r.trim();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same_prime(a.p_, b.p_, "Poly*");
    Poly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (!b.c_[j]) continue;
            r.c_[i + j] = mod_add(r.c_[i + j], mod_mul(a.c_[i], b.c_[j], a.p_), a.p_);
        }
    }
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    check_same_prime(a.p_, b.p_, "Poly::divrem");
    require(!b.is_zero(), "Poly::divrem: division by zero polynomial");
    Poly q(a.p_);
    Poly r = a;
    if (a.degree() < b.degree()) return {q, r};
    std::uint64_t p = a.p_;
    std::uint64_t lead_inv = mod_inv(b.leading(), p);
    q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = r.degree() - b.degree();
        std::uint64_t f = mod_mul(r.leading(), lead_inv, p);
        q.c_[shift] = f;
        // r -= f * t^shift * b
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            r.c_[shift + i] = mod_sub(r.c_[shift + i], mod_mul(f, b.c_[i], p), p);
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::gcd(Poly a, Poly b) {
    check_same_prime(a.p_, b.p_, "Poly::gcd");
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

} // namespace hsd
