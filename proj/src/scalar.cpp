#include "hsd/scalar.hpp"

namespace hsd {

void check_same_prime(std::uint64_t a, std::uint64_t b, const char* where) {
    if (a != b)
        fail(std::string(where) + ": mixed moduli " + std::to_string(a) + " and " +
             std::to_string(b));
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b; // a, b < p < 2^63: no overflow
    return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    require(a != 0, "mod_inv: division by zero");
    return mod_pow(a, p - 2, p);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_prime(a.p, b.p, "Scalar+");
    return {mod_add(a.v, b.v, a.p), a.p};
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same_prime(a.p, b.p, "Scalar-");
    return {mod_sub(a.v, b.v, a.p), a.p};
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_prime(a.p, b.p, "Scalar*");
    return {mod_mul(a.v, b.v, a.p), a.p};
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same_prime(a.p, b.p, "Scalar/");
    return {mod_mul(a.v, mod_inv(b.v, a.p), a.p), a.p};
}

std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (k > n) return 0;
    // digitwise: C(n, k) = prod C(n_i, k_i) mod p
    std::uint64_t r = 1;
    while (n || k) {
        std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // C(ni, ki) with ni < p fits easily in a word
        std::uint64_t c = 1;
        for (std::uint64_t j = 0; j < ki; ++j)
            c = mod_mul(c, mod_mul((ni - j) % p, mod_inv(j + 1, p), p), p);
        r = mod_mul(r, c, p);
        n /= p;
        k /= p;
    }
    return r;
}

std::uint64_t multinom_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t p) {
    std::uint64_t n = a + b + c;
    return mod_mul(binom_mod_p(n, a, p), binom_mod_p(n - a, b, p), p);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace hsd
