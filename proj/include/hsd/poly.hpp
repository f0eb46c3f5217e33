#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hsd/scalar.hpp"

namespace hsd {

// Dense univariate polynomial over F_p, ascending coefficients, canonical:
// no trailing zeros (zero polynomial = empty coefficient vector).
class Poly {
public:
    Poly() = default;
    explicit Poly(std::uint64_t p) : p_(p) {}
    Poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

    static Poly zero(std::uint64_t p) { return Poly(p); }
    static Poly constant(std::uint64_t p, std::uint64_t v);
    static Poly variable(std::uint64_t p); // t

    std::uint64_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    // degree of zero is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    Poly& negate();
    Poly scaled(std::uint64_t s) const;
    Poly monic() const; // error on zero

    Poly derivative() const;
    // t -> t^k (k >= 1): exponent stretch, exact
    Poly substitute_power(std::uint64_t k) const;
    // w(t) = sum_j w_j(t^q) t^j for 0 <= j < q; returns the q pieces w_j
    std::vector<Poly> residue_split(std::uint64_t q) const;
    Scalar eval(const Scalar& x) const;
    Poly pow(std::uint64_t e) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator<(const Poly& a, const Poly& b) {
        return a.c_ != b.c_ ? a.c_ < b.c_ : a.p_ < b.p_;
    }

    // quotient and remainder; divisor must be nonzero
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    static Poly gcd(Poly a, Poly b); // monic (or zero)

private:
    void trim();

    std::uint64_t p_ = 0;
    std::vector<std::uint64_t> c_;
};

} // namespace hsd
