#pragma once

#include <cstdint>
#include <string>

#include "hsd/error.hpp"

namespace hsd {

// Arithmetic mod a word-size prime p. Every scalar carries its modulus;
// mixing moduli is a hard error, never a coercion.
struct Scalar {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    Scalar() = default;
    Scalar(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    bool is_zero() const { return v == 0; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.p == b.p && a.v == b.v;
    }
};

void check_same_prime(std::uint64_t a, std::uint64_t b, const char* where);

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p); // error on a == 0

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);

// C(n, k) mod p via base-p digits; exact for arbitrary word-size n, k.
std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p);

// n! / (a! b! c!) mod p for n = a + b + c.
std::uint64_t multinom_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t p);

bool is_prime_u64(std::uint64_t n);

} // namespace hsd
