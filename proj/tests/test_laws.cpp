// Group-law layer: construction, axiom checking, truncation, [m]_F,
// Verschiebung extraction, formal inverses, and law homomorphisms.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/group_law.hpp"
#include "hsd/text.hpp"

using namespace hsd;

namespace {

GroupLaw ga(std::uint64_t p) { return GroupLaw::make(LawTag::Additive, p); }
GroupLaw gm(std::uint64_t p) { return GroupLaw::make(LawTag::Multiplicative, p); }

TruncSeries xpow(std::uint64_t p, std::uint32_t order, std::uint32_t e) {
    return TruncSeries::monomial(shape1(p, "X", order), 0, e);
}

} // namespace

TEST_CASE("built-in law bodies") {
    auto add = ga(2).series(4);
    CHECK(add.at2(1, 0) == RatFn::constant(2, 1));
    CHECK(add.at2(0, 1) == RatFn::constant(2, 1));
    CHECK(add.at2(1, 1).is_zero());

    // mixed with c = 0 coincides with the additive law body
    CHECK(GroupLaw::make(LawTag::Mixed, 3, 0).series(6) == ga(3).series(6));

    // multiplicative truncated at m=1, p=3: v + w + vw in the exact 3x3 box
    auto tm = gm(3).truncated(1).series(0);
    CHECK(tm.order(0) == 3);
    CHECK(tm.order(1) == 3);
    CHECK(tm.cap() == 0);
    CHECK(tm.at2(1, 0) == RatFn::constant(3, 1));
    CHECK(tm.at2(1, 1) == RatFn::constant(3, 1));
    CHECK(tm.at2(2, 2).is_zero());

    // m=1 truncation of the multiplicative law at p=2 is v+w+vw with v^2=0
    auto t2 = gm(2).truncated(1).series(0);
    CHECK(t2.order(0) == 2);
    CHECK(t2.at2(1, 1) == RatFn::constant(2, 1));
}

TEST_CASE("axioms pass for every built-in law") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        CHECK(check_group_law(ga(p), 32).pass);
        CHECK(check_group_law(gm(p), 64).pass);
        for (std::uint64_t c = 1; c < p; ++c)
            CHECK(check_group_law(GroupLaw::make(LawTag::Mixed, p, c), 32).pass);
        // truncated variants are exact in their rectangle
        CHECK(check_group_law(ga(p).truncated(2), 0).pass);
        CHECK(check_group_law(gm(p).truncated(1), 0).pass);
    }
}

TEST_CASE("axiom failures carry a witness") {
    // formal: X + Y + X^2 Y is not associative
    std::vector<std::uint64_t> tab(9, 0);
    tab[1 * 3 + 0] = 1;
    tab[0 * 3 + 1] = 1;
    tab[2 * 3 + 1] = 1;
    auto bad = GroupLaw::custom(5, 3, tab);
    auto rep = check_group_law(bad, 8);
    CHECK(!rep.pass);
    CHECK(rep.axiom == "associativity");
    REQUIRE(rep.witness.has_value());
    CHECK((*rep.witness) == std::array<std::uint32_t, 3>{1, 1, 1});

    // the same body truncated at p=2, m=2 fails at (2,2,1): the offending
    // monomial X^2 Y^2 Z survives in k[v]/(v^4)
    auto bad2 = GroupLaw::custom(2, 3, tab).truncated(2);
    auto rep2 = check_group_law(bad2, 0);
    CHECK(!rep2.pass);
    CHECK(rep2.axiom == "associativity");
    REQUIRE(rep2.witness.has_value());
    CHECK((*rep2.witness) == std::array<std::uint32_t, 3>{2, 2, 1});

    // v + w + v^2 w^2 at p=2, m=2 IS a truncated group law: both association
    // orders collapse to X+Y+Z+X^2Y^2+X^2Z^2+Y^2Z^2 once X^4 = 0
    std::vector<std::uint64_t> tab22(9, 0);
    tab22[1 * 3 + 0] = 1;
    tab22[0 * 3 + 1] = 1;
    tab22[2 * 3 + 2] = 1;
    CHECK(check_group_law(GroupLaw::custom(2, 3, tab22).truncated(2), 0).pass);

    // unit-axiom violations are rejected at construction
    std::vector<std::uint64_t> nox(9, 0);
    nox[0 * 3 + 1] = 1;
    CHECK_THROWS_AS(GroupLaw::custom(2, 3, nox), Error);
}

TEST_CASE("truncation tower") {
    auto f = GroupLaw::make(LawTag::Mixed, 3, 2);
    CHECK(f.truncated(2).truncated(1) == f.truncated(1));
    CHECK(f.truncated(2).level() == 2);
    CHECK(f.truncated(2).q() == 9);
    CHECK_THROWS_AS(f.truncated(0), Error);
    // widening a truncated law is not defined
    CHECK_THROWS_AS(f.truncated(1).truncated(2), Error);
    // the Frobenius twist is the identity over the prime field
    CHECK(f.frobenius_twist(3) == f);
}

TEST_CASE("multiplication by m") {
    CHECK(mult_by_m(ga(2), 2, 8).is_zero());
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        auto pm = mult_by_m(gm(p), static_cast<std::uint32_t>(p),
                            static_cast<std::uint32_t>(p + 2));
        CHECK(pm == xpow(p, static_cast<std::uint32_t>(p + 2),
                         static_cast<std::uint32_t>(p)));
    }
    // [3] for the multiplicative law: (1+X)^3 - 1
    auto m3 = mult_by_m(gm(2), 3, 5);
    CHECK(m3 == xpow(2, 5, 1) + xpow(2, 5, 2) + xpow(2, 5, 3));

    // [m]_F is an endomorphism: [m](F(X,Y)) = F([m]X, [m]Y)
    for (std::uint64_t p : {2ull, 3ull}) {
        for (const auto& law : {ga(p), gm(p), GroupLaw::make(LawTag::Mixed, p, p - 1)}) {
            for (std::uint32_t m : {2u, 3u}) {
                GroupLawHom hom{law, law, mult_by_m(law, m, 12)};
                CHECK(check_hom(hom, 12).pass);
            }
        }
    }
}

TEST_CASE("verschiebung extraction") {
    auto vm = verschiebung(gm(3), 12);
    CHECK(vm.V == xpow(3, 12, 1));
    CHECK(vm.W == xpow(3, 12, 1));

    auto va = verschiebung(ga(5), 12);
    CHECK(va.V.is_zero());
    CHECK(va.W.is_zero());

    // F_c: [p] = c^(p-1) X^p and c^(p-1) = 1, so V = X
    CHECK(verschiebung(GroupLaw::make(LawTag::Mixed, 3, 2), 12).V == xpow(3, 12, 1));

    // consistency: V(X^p) = [p]_F coefficientwise, W = V over F_p
    for (std::uint64_t p : {2ull, 3ull}) {
        for (const auto& law : {ga(p), gm(p), GroupLaw::make(LawTag::Mixed, p, 1)}) {
            std::uint32_t n = 16;
            auto vw = verschiebung(law, n);
            CHECK(vw.W == vw.V);
            CHECK(vw.V.stretched(static_cast<std::uint32_t>(p), n) ==
                  mult_by_m(law, static_cast<std::uint32_t>(p), n));
        }
    }
}

TEST_CASE("formal inverse") {
    CHECK(formal_inverse(ga(3), 8) == xpow(3, 8, 1).scaled(RatFn::constant(3, 2)));

    auto im = formal_inverse(gm(2), 4);
    CHECK(im == xpow(2, 4, 1) + xpow(2, 4, 2) + xpow(2, 4, 3));

    // F(X, iota(X)) = 0 = F(iota(X), X) to order (laws are commutative)
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (const auto& law : {ga(p), gm(p), GroupLaw::make(LawTag::Mixed, p, p - 1)}) {
            std::uint32_t n = 12;
            auto iota = formal_inverse(law, n);
            auto x = xpow(p, n, 1);
            auto body = law.series(n);
            CHECK(compose(body, {x, iota}).is_zero());
            CHECK(compose(body, {iota, x}).is_zero());
        }
    }
}

TEST_CASE("law homomorphisms") {
    // alpha = cX : F_c -> multiplicative
    for (std::uint64_t c : {1ull, 2ull}) {
        auto fc = GroupLaw::make(LawTag::Mixed, 3, c);
        GroupLawHom hom{fc, gm(3), xpow(3, 8, 1).scaled(RatFn::constant(3, c))};
        CHECK(check_hom(hom, 8).pass);
    }

    // alpha = X^(p^m) : additive -> additive (Frobenius powers)
    for (std::uint32_t m : {1u, 2u}) {
        GroupLawHom hom{ga(2), ga(2), xpow(2, 16, 1u << m)};
        CHECK(check_hom(hom, 16).pass);
    }

    // alpha = X^2 : multiplicative -> multiplicative fails at (1,1)
    GroupLawHom sq{gm(3), gm(3), xpow(3, 8, 2)};
    auto rep = check_hom(sq, 8);
    CHECK(!rep.pass);
    REQUIRE(rep.witness.has_value());
    CHECK((*rep.witness)[0] == 1);
    CHECK((*rep.witness)[1] == 1);

    // substitution into a truncated target requires alpha nilpotent there;
    // the violation is reported as a failure, not thrown
    GroupLawHom notnil{ga(2).truncated(2), ga(2).truncated(1),
                       TruncSeries::monomial(shape1(2, "v", 4), 0, 1)};
    auto nilrep = check_hom(notnil, 0);
    CHECK(!nilrep.pass);
    CHECK(nilrep.detail.find("nilpotent") != std::string::npos);
}
