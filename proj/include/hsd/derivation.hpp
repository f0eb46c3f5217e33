#pragma once

#include <memory>
#include <optional>

#include "hsd/group_law.hpp"

namespace hsd {

// Higher derivation on K = F_p(t), represented by its generator image
// g = sum g_n X^n with g_0 = t. The full K-algebra homomorphism
// K -> K[X]/(X^N) is recovered by r = u/v |-> u(g) * v(g)^{-1}; v(g) is
// invertible because its constant term is v(t), a nonzero element of K.
// An m-truncated derivation is the same data with N = p^m and the exact
// quotient-ring reading of X^N = 0.
class HSDerivation {
public:
    // formal derivation; gen must be univariate with constant term t
    static HSDerivation from_gen_image(TruncSeries gen);
    // m-truncated derivation; gen order must be p^m
    static HSDerivation from_gen_image(TruncSeries gen, std::uint32_t m);
    // generator image F(t, X), the canonical F-iterative derivation; for a
    // truncated law the order argument is ignored and p^m is used
    static HSDerivation canonical(const GroupLaw& law, std::uint32_t order);
    static HSDerivation trivial(std::uint64_t p, std::uint32_t order);
    // divided powers of the nilpotent derivation D = a d/dt: component i is
    // D^i / i! for i < p, a 1-truncated derivation; requires D^p = 0
    static HSDerivation from_nilpotent_derivation(const RatFn& a);

    std::uint64_t p() const { return gen_.p(); }
    // component indexes 0 .. precision-1 are defined
    std::uint32_t precision() const { return gen_.order(0); }
    bool is_truncated() const { return level_ > 0; }
    std::uint32_t level() const { return level_; } // m, 0 when formal
    const TruncSeries& gen_image() const { return gen_; }
    // the law this derivation is iterative for, when known by construction
    const std::optional<GroupLaw>& law() const { return law_; }

    bool is_trivial() const;

    // component n applied to r, i.e. the X^n coefficient of the image of r
    RatFn apply(const RatFn& r, std::uint32_t n) const;
    // the full image of r in K[X]/(X^precision); memoized per numerator and
    // denominator polynomial, safe to call concurrently
    TruncSeries apply_series(const RatFn& r) const;

private:
    HSDerivation(TruncSeries gen, std::uint32_t level, std::optional<GroupLaw> law);

    TruncSeries eval_at_gen(const Poly& u) const;
    TruncSeries inv_at_gen(const Poly& v) const;

    TruncSeries gen_;
    std::uint32_t level_ = 0;
    std::optional<GroupLaw> law_;
    struct Memo;
    std::shared_ptr<Memo> memo_;

    friend HSDerivation star_product(const HSDerivation&, const HSDerivation&);
    friend HSDerivation pth_comp_power(const HSDerivation&);
    friend HSDerivation truncate_derivation(const HSDerivation&, std::uint32_t);
    friend HSDerivation inflate(const HSDerivation&, std::uint32_t);
    friend HSDerivation deflate(const HSDerivation&, std::uint32_t);
    friend HSDerivation pullback_along_hom(const HSDerivation&, const GroupLawHom&);
};

// Coefficient of t^i in component n applied to t^k, for the canonical
// derivation of the additive or multiplicative law, in closed form:
// additive      C(k,n) at i = k-n,
// multiplicative C(k,n) t^(k-n) (1+t)^n expanded at t^i.
std::uint64_t closed_form_coefficient(LawTag tag, std::uint64_t p, std::uint32_t n,
                                      std::uint32_t i, std::uint32_t k);

struct IterativityReport {
    bool pass = true;
    // smallest (lex) exponent pair (i, j) where the two sides differ on t
    std::optional<std::array<std::uint32_t, 2>> witness;
    std::string detail;
};

// The iterativity identity for the law: composing the derivation with itself
// (in a second variable) must equal evaluating it at F(X,Y). Both sides are
// K-algebra homomorphisms, so agreement on t decides. A truncated derivation
// coerces the law (and vice versa) to the smaller level; two formal inputs
// are compared mod total degree `order`.
IterativityReport check_f_iterative(const HSDerivation& d, const GroupLaw& law,
                                    std::uint32_t order);

// (a * b)_n = sum_{i+j=n} a_i o b_j, realized on generator images
HSDerivation star_product(const HSDerivation& a, const HSDerivation& b);
// m-fold star product; m = 0 gives the trivial derivation
HSDerivation star_power(const HSDerivation& d, std::uint32_t m);
// p-fold star power reindexed: component i is the X^(p i) coefficient of the
// p-fold star product. Requires the components to commute on t and the star
// power to be supported on p-th powers; formal derivations only.
HSDerivation pth_comp_power(const HSDerivation& d);

// component i applied after component j: d_i(d_j(r))
RatFn compose_terms(const HSDerivation& d, std::uint32_t i, std::uint32_t j,
                    const RatFn& r);

// forget components at index >= p^l; the result is l-truncated
HSDerivation truncate_derivation(const HSDerivation& d, std::uint32_t l);

// reindex components: inflate sends component i to index i p^j (X -> X^(p^j)),
// deflate inverts that and requires the support to lie on multiples of p^j
HSDerivation inflate(const HSDerivation& d, std::uint32_t j);
HSDerivation deflate(const HSDerivation& d, std::uint32_t j);

// precompose the generator image with alpha: a hom F -> G turns a G-iterative
// derivation into an F-iterative one
HSDerivation pullback_along_hom(const HSDerivation& d, const GroupLawHom& hom);

} // namespace hsd
