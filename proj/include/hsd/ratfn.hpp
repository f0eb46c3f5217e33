#pragma once

#include "hsd/poly.hpp"

namespace hsd {

// Element of F_p(t), always reduced: gcd(num, den) = 1, den monic and nonzero,
// zero stored as 0/1. Constructing with a zero denominator is an error.
class RatFn {
public:
    RatFn() = default;
    explicit RatFn(std::uint64_t p) : num_(p), den_(Poly::constant(p, 1)) {}
    RatFn(Poly num, Poly den);
    explicit RatFn(Poly num);

    static RatFn zero(std::uint64_t p) { return RatFn(p); }
    static RatFn constant(std::uint64_t p, std::uint64_t v) {
        return RatFn(Poly::constant(p, v));
    }
    static RatFn variable(std::uint64_t p) { return RatFn(Poly::variable(p)); }

    std::uint64_t p() const { return num_.p(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    // constant-term-at-t=0 style access is meaningless here; constants are
    // degree-<=0 polynomials with unit denominator
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    RatFn inverse() const; // error on zero
    RatFn operator-() const;
    // d/dt by the quotient rule, reduced
    RatFn derivative() const;
    // t -> t^k
    RatFn substitute_power(std::uint64_t k) const;
    RatFn pow(std::uint64_t e) const;

    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    // structural order, used as a map key
    friend bool operator<(const RatFn& a, const RatFn& b) {
        if (!(a.num_ == b.num_)) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

private:
    void normalize();

    Poly num_;
    Poly den_;
};

} // namespace hsd
