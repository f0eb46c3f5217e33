#include "hsd/ratfn.hpp"

namespace hsd {

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    check_same_prime(num_.p(), den_.p(), "RatFn");
    require(!den_.is_zero(), "RatFn: zero denominator");
    normalize();
}

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.p(), 1)) {}

void RatFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(p(), 1);
        return;
    }
    if (!den_.is_one()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = Poly::divrem(num_, g).first;
            den_ = Poly::divrem(den_, g).first;
        }
        if (den_.leading() != 1) {
            std::uint64_t s = mod_inv(den_.leading(), p());
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }
}

RatFn RatFn::inverse() const {
    require(!is_zero(), "RatFn::inverse: division by zero");
    return RatFn(den_, num_);
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_.negate();
    return r;
}

RatFn RatFn::derivative() const {
    if (is_polynomial()) return RatFn(num_.derivative());
    // (u/v)' = (u'v - uv') / v^2
    Poly u = num_.derivative() * den_ - num_ * den_.derivative();
    return RatFn(std::move(u), den_ * den_);
}

RatFn RatFn::substitute_power(std::uint64_t k) const {
    return RatFn(num_.substitute_power(k), den_.substitute_power(k));
}

RatFn RatFn::pow(std::uint64_t e) const {
    RatFn r = RatFn::constant(p(), 1);
    RatFn b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ + b.num_);
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ - b.num_);
    return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
    check_same_prime(a.p(), b.p(), "RatFn*");
    if (a.is_zero() || b.is_zero()) return RatFn::zero(a.p());
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ * b.num_);
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    check_same_prime(a.p(), b.p(), "RatFn/");
    require(!b.is_zero(), "RatFn/: division by zero");
    if (a.is_zero()) return RatFn::zero(a.p());
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
}

} // namespace hsd
