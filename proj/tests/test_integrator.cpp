// Integration layer: minimal polynomials over a generated subfield,
// extension of a canonical element to a full derivation, and expansion of
// truncated derivations with audit and iterativity reports.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/integrate.hpp"
#include "hsd/text.hpp"

#include <cstdlib>
#include <string>

using namespace hsd;

namespace {

GroupLaw ga(std::uint64_t p) { return GroupLaw::make(LawTag::Additive, p); }
GroupLaw gm(std::uint64_t p) { return GroupLaw::make(LawTag::Multiplicative, p); }

RatFn rf(const std::string& s, std::uint64_t p) { return parse_ratfn(s, p); }

// evaluate a coefficient stored in the abstract-generator slot at x
RatFn at_x(const RatFn& coeff, const RatFn& x) {
    auto horner = [&](const Poly& q) {
        RatFn acc = RatFn::zero(x.p());
        for (int i = q.degree(); i >= 0; --i)
            acc = acc * x + RatFn::constant(x.p(), q.coeff(i));
        return acc;
    };
    return horner(coeff.num()) / horner(coeff.den());
}

bool contains(const Error& e, const char* needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("minimal polynomial over a generated subfield") {
    // x = t: P(T) = T - x
    auto p3 = minimal_polynomial_over(rf("t", 3));
    REQUIRE(p3.size() == 2);
    CHECK(p3[0] == rf("2*t", 3));
    CHECK(p3[1] == RatFn::constant(3, 1));

    auto p2 = minimal_polynomial_over(rf("t", 2));
    REQUIRE(p2.size() == 2);
    CHECK(p2[0] == rf("t", 2));
    CHECK(p2[1] == RatFn::constant(2, 1));

    // x = t^2 + t: P(T) = T^2 + T + x, and t is a simple root
    RatFn x = rf("t^2+t", 2);
    auto mp = minimal_polynomial_over(x);
    REQUIRE(mp.size() == 3);
    CHECK(mp[0] == rf("t", 2));
    CHECK(mp[1] == RatFn::constant(2, 1));
    CHECK(mp[2] == RatFn::constant(2, 1));

    RatFn t = RatFn::variable(2);
    RatFn value = RatFn::zero(2);
    RatFn derivative = RatFn::zero(2);
    for (std::size_t i = 0; i < mp.size(); ++i) {
        RatFn c = at_x(mp[i], x);
        value = value + c * t.pow(static_cast<std::uint32_t>(i));
        if (i > 0)
            derivative = derivative + RatFn::constant(2, i % 2) *
                                          c * t.pow(static_cast<std::uint32_t>(i - 1));
    }
    CHECK(value.is_zero());
    CHECK(!derivative.is_zero());

    // a denominator exercises the u(T) - x v(T) shape
    auto mq = minimal_polynomial_over(rf("1/t", 3));
    RatFn xq = rf("1/t", 3);
    RatFn vq = RatFn::zero(3);
    for (std::size_t i = 0; i < mq.size(); ++i)
        vq = vq + at_x(mq[i], xq) * RatFn::variable(3).pow(static_cast<std::uint32_t>(i));
    CHECK(vq.is_zero());

    // p-th powers and constants generate no admissible subfield
    bool threw_pow = false;
    try {
        minimal_polynomial_over(rf("t^2", 2));
    } catch (const Error& e) {
        threw_pow = contains(e, "p-th power");
    }
    CHECK(threw_pow);
    CHECK_THROWS_AS(minimal_polynomial_over(RatFn::constant(2, 1)), Error);
}

TEST_CASE("extending a canonical element") {
    // x = t gives back the canonical derivation of the law
    auto e1 = extend_canonical(rf("t", 2), ga(2), 8);
    CHECK(e1.gen_image() == HSDerivation::canonical(ga(2), 8).gen_image());

    auto e2 = extend_canonical(rf("t", 3), gm(3), 6);
    CHECK(e2.gen_image() == HSDerivation::canonical(gm(3), 6).gen_image());

    // x = t^2 + t at p = 2: generator image is supported on 2-power indexes
    RatFn x = rf("t^2+t", 2);
    auto ext = extend_canonical(x, ga(2), 8);
    for (std::uint32_t i = 0; i < 8; ++i) {
        RatFn expect = (i == 0)   ? rf("t", 2)
                       : (i == 1 || i == 2 || i == 4) ? RatFn::constant(2, 1)
                                                      : RatFn::zero(2);
        CHECK(ext.gen_image().at1(i) == expect);
    }
    CHECK(ext.apply(x, 1) == RatFn::constant(2, 1));
    for (std::uint32_t n = 2; n < 8; ++n) CHECK(ext.apply(x, n).is_zero());
    CHECK(check_f_iterative(ext, ga(2), 8).pass);
}

TEST_CASE("additive integration round trip") {
    auto canon = HSDerivation::canonical(ga(2), 16);
    auto res = integrate_additive(truncate_derivation(canon, 1), 16);
    CHECK(res.output.gen_image() == canon.gen_image());
    REQUIRE(res.canonical_x.has_value());
    CHECK(res.canonical_x->x == rf("t", 2));
    CHECK(res.deflated_pow == 0);
    CHECK(res.minimal_poly.size() == 2);
    CHECK(res.audit.pass);
    CHECK(res.iterativity.pass);
    for (const auto& line : res.audit.lines) CHECK(line.match);
}

TEST_CASE("integration of a derivation supported on p-th powers") {
    // generator t + X^2 at level 2: d_1 = 0 forces one deflation
    auto degen =
        truncate_derivation(inflate(HSDerivation::canonical(ga(2), 2), 1), 2);
    auto res = integrate_additive(degen, 8);
    CHECK(res.deflated_pow == 1);
    REQUIRE(res.canonical_x.has_value());
    CHECK(res.canonical_x->x == rf("t", 2));
    CHECK(res.audit.pass);
    CHECK(res.iterativity.pass);
    CHECK(truncate_derivation(res.output, 2).gen_image() == degen.gen_image());
    CHECK(res.output.gen_image().at1(2) == RatFn::constant(2, 1));
    CHECK(res.output.gen_image().at1(1).is_zero());
}

TEST_CASE("trivial input integrates to the trivial derivation") {
    auto triv = truncate_derivation(HSDerivation::trivial(2, 4), 2);
    auto res = integrate_additive(triv, 8);
    CHECK(res.output.is_trivial());
    CHECK(!res.canonical_x.has_value());
    CHECK(res.minimal_poly.empty());
    CHECK(res.deflated_pow == 0);
    CHECK(res.audit.pass);
    CHECK(res.iterativity.pass);
}

TEST_CASE("multiplicative integration round trip") {
    auto canon = HSDerivation::canonical(gm(2), 16);
    for (std::uint32_t m : {1u, 2u}) {
        auto res = integrate_multiplicative(truncate_derivation(canon, m), 16);
        CHECK(res.output.gen_image() == canon.gen_image());
        REQUIRE(res.canonical_x.has_value());
        CHECK(res.canonical_x->x == rf("t", 2));
        CHECK(res.audit.pass);
        CHECK(res.iterativity.pass);
    }

    // pullback along multiplication by 3 is again multiplicative-iterative
    auto three = mult_by_m(gm(2), 3, 8);
    GroupLawHom h3{gm(2), gm(2), three};
    auto pulled = truncate_derivation(
        pullback_along_hom(HSDerivation::canonical(gm(2), 8), h3), 1);
    auto res = integrate_multiplicative(pulled, 8);
    CHECK(res.audit.pass);
    CHECK(res.iterativity.pass);
    CHECK(truncate_derivation(res.output, 1).gen_image() == pulled.gen_image());
}

TEST_CASE("multiplicative inputs with vanishing first component are rejected") {
    // pullback of the canonical derivation along X^2 kills d_1
    auto frob = TruncSeries::monomial(shape1(2, "X", 4), 0, 2);
    GroupLawHom hom{gm(2), gm(2), frob};
    auto degen = truncate_derivation(
        pullback_along_hom(HSDerivation::canonical(gm(2), 4), hom), 2);
    REQUIRE(degen.gen_image().at1(1).is_zero());
    REQUIRE(degen.gen_image().at1(2) == rf("t+1", 2));
    bool threw = false;
    try {
        integrate_multiplicative(degen, 8);
    } catch (const Error& e) {
        threw = contains(e, "additive law only");
    }
    CHECK(threw);
}

TEST_CASE("overriding the canonical element") {
    auto d1 = truncate_derivation(HSDerivation::canonical(ga(2), 2), 1);

    auto with_t = integrate_additive(d1, 16, rf("t", 2));
    CHECK(with_t.output.gen_image() ==
          HSDerivation::canonical(ga(2), 16).gen_image());

    // x = t^2 + t satisfies the same level-1 equations but extends differently
    auto with_x = integrate_additive(d1, 16, rf("t^2+t", 2));
    CHECK(with_x.audit.pass);
    CHECK(with_x.iterativity.pass);
    CHECK(with_t.output.gen_image().at1(1) == with_x.output.gen_image().at1(1));
    CHECK(with_t.output.gen_image().at1(2).is_zero());
    CHECK(with_x.output.gen_image().at1(2) == RatFn::constant(2, 1));

    // an override that fails the canonical equations is rejected
    bool threw_eq = false;
    try {
        integrate_additive(d1, 8, rf("t^2", 2));
    } catch (const Error& e) {
        threw_eq = contains(e, "fails the canonical equations");
    }
    CHECK(threw_eq);

    // no canonical element exists when d_1 = 0, so an override is meaningless
    auto degen =
        truncate_derivation(inflate(HSDerivation::canonical(ga(2), 2), 1), 2);
    bool threw_d1 = false;
    try {
        integrate_additive(degen, 8, rf("t", 2));
    } catch (const Error& e) {
        threw_d1 = contains(e, "x_override is not meaningful");
    }
    CHECK(threw_d1);
}

TEST_CASE("step budget limits the series root search") {
    setenv("HSD_STEP_BUDGET", "1", 1);
    bool threw = false;
    try {
        extend_canonical(rf("t^2+t", 2), ga(2), 8);
    } catch (const Error& e) {
        threw = contains(e, "step budget exhausted");
    }
    CHECK(threw);
    unsetenv("HSD_STEP_BUDGET");
    CHECK(extend_canonical(rf("t^2+t", 2), ga(2), 8).precision() == 8);
}
