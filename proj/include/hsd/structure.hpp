#pragma once

#include <random>

#include "hsd/derivation.hpp"
#include "hsd/linsolve.hpp"

namespace hsd {

// K = F_p(t) is a q-dimensional vector space over C = F_p(t^q), q = p^m, with
// basis 1, t, ..., t^(q-1). decompose returns the q coordinates of r, each a
// rational function in s = t^q but stored in the ordinary variable slot;
// reassemble substitutes s = t^q back and recombines. Round trip is exact.
std::vector<RatFn> decompose(const RatFn& r, std::uint32_t m);
RatFn reassemble(const std::vector<RatFn>& coords, std::uint32_t m);

// Matrix of component n as a C-linear map of K in the basis above; column j
// holds the coordinates of d_n(t^j). C-linearity holds for n < q because C
// is killed by components 1..q-1; it is still asserted on the basis products
// t^q * t^j, and a failure is an error naming the offending product.
Matrix linear_map_matrix(const HSDerivation& d, std::uint32_t n, std::uint32_t m);

struct ConstantsDegreeReport {
    std::uint64_t q = 0;        // p^m
    std::size_t kernel_dim = 0; // dim over C of the joint kernel of d_1..d_{q-1}
    std::uint64_t degree = 0;   // q / kernel_dim = [K : joint-kernel field]
    bool d1_nonzero = false;
    bool kernel_is_c = false;   // the joint kernel is exactly C * 1
};

// Joint-kernel dimension count. The trivial derivation yields degree 1 with
// d1_nonzero = false; that is a report, not an error.
ConstantsDegreeReport constants_degree(const HSDerivation& d, std::uint32_t m);

struct ImIsKerReport {
    bool pass = false;
    std::size_t im_dim = 0;
    std::size_t ker_dim = 0;
    Matrix im_basis;  // rows are coordinate vectors over C = F_p(t^p)
    Matrix ker_basis;
    std::string detail;
};

// For d_1 nonzero with p-th compositional power zero (both verified on the
// basis, error otherwise): the image of d_1 equals the kernel of its
// (p-1)-st compositional power, as C-subspaces of K with C = F_p(t^p).
ImIsKerReport imisker_check(const HSDerivation& d);

// Nonzero x with d_1(x) = x, found as an eigenvector for eigenvalue 1 of the
// matrix of d_1 over F_p(t^p). Requires d_1 nonzero with d_1^(p) = d_1.
RatFn solve_dx_eq_x(const HSDerivation& d);

struct CanonicalElement {
    RatFn x;
    LawTag flavor = LawTag::Additive;
    std::uint32_t level = 0; // m; defining equations run over indexes < p^m
};

struct CanonicalCheckReport {
    bool pass = true;
    std::vector<std::string> lines; // one verification line per component
};

// x with d_1(x) = 1 and d_n(x) = 0 for 2 <= n < p^m. Base case by the
// quotient formula on iterated d_1; each induction step subtracts a p-power
// constant correction obtained by linear algebra. Errors when d_1 = 0 (the
// caller must deflate first) and when the input fails the equations (it was
// not additively iterative).
CanonicalElement canonical_element_additive(const HSDerivation& d);

// x with d_1(x) = x + 1 != 0 and d_n(x) = 0 for 2 <= n < p^m. Starts from
// solve_dx_eq_x; each step searches y over F_p[t] in a deterministic
// degree-then-coefficients order until y^(p^(i+1)) x minus the (p-1)-st
// compositional power of d_(p^(i+1)) applied to it is nonzero. Errors with
// the bound when the enumeration up to degree_bound is exhausted.
CanonicalElement canonical_element_multiplicative(const HSDerivation& d,
                                                  std::uint32_t degree_bound = 4);

// evaluation oracle for the defining equations of a canonical element
CanonicalCheckReport verify_canonical(const HSDerivation& d, const CanonicalElement& e);

struct IdentityCheckReport {
    bool pass = true;
    std::size_t checks = 0; // number of identity instances evaluated
    std::string detail;     // first failure, empty when pass
};

// Evaluates operator identities on `samples` random elements, writing D for
// the derivation d_1 and D^(k) for its k-fold composition:
//   (1) D^(p-1) + sum_{l=1..p-1} sum_{i=1..p-1} l^(p-1-i) D^(i) = 0,
//       which holds for any D (at p = 2 it reads D + D = 0);
//   (2) D(sum_i l^(p-1-i) D^(i)(a)) = l * sum_i l^(p-1-i) D^(i)(a),
//       evaluated only when D^(p) = D holds (decided exactly on t);
//   (3) the product expansion, for e = p^i below the precision and j <= p:
//       d_e^(j)(x y^e) = sum_l C(j,l) d_e^(j-l)(x) * (D^(l)(y))^e.
IdentityCheckReport general_identity_check(const HSDerivation& d, std::size_t samples,
                                           std::uint64_t seed);

// The p maps r -> (D^(i)(r))^q for i < p (pointwise q-th powers, D = d_1)
// evaluated on the basis 1, t, ..., t^(p-1) give a full-rank matrix over K.
bool independence_check(const HSDerivation& d, std::uint64_t q);

// x alone generates K = F_p(t) over K^p iff x is not a p-th power, i.e. its
// formal t-derivative is nonzero
bool is_pbasis(const RatFn& x);

// uniform random rational function with numerator and denominator of degree
// at most max_degree (denominator nonzero); used by property tests and the
// batch verifier
RatFn random_ratfn(std::mt19937_64& rng, std::uint64_t p, int max_degree);

} // namespace hsd
