// Structure layer: coordinate decomposition over the constants, component
// matrices, constants-field degree, image/kernel duality, canonical elements
// and their verification, operator identities, and p-basis predicates.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsd/structure.hpp"
#include "hsd/text.hpp"

#include <random>

using namespace hsd;

namespace {

GroupLaw ga(std::uint64_t p) { return GroupLaw::make(LawTag::Additive, p); }
GroupLaw gm(std::uint64_t p) { return GroupLaw::make(LawTag::Multiplicative, p); }

RatFn rf(const std::string& s, std::uint64_t p) { return parse_ratfn(s, p); }

HSDerivation canon_trunc(const GroupLaw& law, std::uint32_t m) {
    std::uint32_t need = 1;
    for (std::uint32_t i = 0; i < m; ++i)
        need *= static_cast<std::uint32_t>(law.p());
    return truncate_derivation(HSDerivation::canonical(law, need), m);
}

} // namespace

TEST_CASE("decompose and reassemble") {
    // t^3 = (t^2) * t at p = 2: coordinate 1 is t, stored pre-substitution
    auto c1 = decompose(rf("t^3", 2), 1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].is_zero());
    CHECK(c1[1] == rf("t", 2));

    // 1/(t+1) = (1 + t)/(t^2 + 1) at p = 2
    auto c2 = decompose(rf("1/(t+1)", 2), 1);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == rf("1/(t+1)", 2));
    CHECK(c2[1] == rf("1/(t+1)", 2));

    std::mt19937_64 rng(31);
    for (std::uint64_t p : {2ull, 3ull})
        for (std::uint32_t m : {1u, 2u})
            for (int iter = 0; iter < 200; ++iter) {
                RatFn r = random_ratfn(rng, p, 4);
                auto coords = decompose(r, m);
                std::uint64_t q = 1;
                for (std::uint32_t i = 0; i < m; ++i) q *= p;
                REQUIRE(coords.size() == q);
                CHECK(reassemble(coords, m) == r);
            }

    // decomposition is linear over the constants
    RatFn r = rf("t^3+t+1", 3);
    RatFn c = rf("t+2", 3).substitute_power(3); // element of F_3(t^3)
    auto plain = decompose(r, 1);
    auto scaled = decompose(c * r, 1);
    for (std::size_t i = 0; i < plain.size(); ++i)
        CHECK(scaled[i] == rf("t+2", 3) * plain[i]);
}

TEST_CASE("component matrices") {
    // additive d_1 at p = 2, m = 1 in the basis 1, t
    auto da = HSDerivation::canonical(ga(2), 4);
    Matrix ma = linear_map_matrix(da, 1, 1);
    Matrix expect_a = {{RatFn::zero(2), RatFn::constant(2, 1)},
                       {RatFn::zero(2), RatFn::zero(2)}};
    CHECK(ma == expect_a);

    // multiplicative d_1(t) = 1 + t
    auto dm = HSDerivation::canonical(gm(2), 4);
    Matrix mm = linear_map_matrix(dm, 1, 1);
    Matrix expect_m = {{RatFn::zero(2), RatFn::constant(2, 1)},
                       {RatFn::zero(2), RatFn::constant(2, 1)}};
    CHECK(mm == expect_m);

    // component 0 is the identity, and the trivial derivation vanishes
    auto triv = HSDerivation::trivial(2, 4);
    CHECK(linear_map_matrix(triv, 0, 1) == mat_identity(2, 2));
    CHECK(mat_is_zero(linear_map_matrix(triv, 1, 1)));

    // matrices compose like the maps they represent
    std::mt19937_64 rng(32);
    auto d3 = HSDerivation::canonical(gm(3), 9);
    Matrix m1 = linear_map_matrix(d3, 1, 1);
    for (int iter = 0; iter < 5; ++iter) {
        RatFn r = random_ratfn(rng, 3, 3);
        auto coords = decompose(r, 1);
        // apply the matrix: entries act on pre-substitution coordinates
        std::vector<RatFn> image(coords.size(), RatFn::zero(3));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                image[i] = image[i] + m1[i][j] * coords[j];
        CHECK(reassemble(image, 1) == d3.apply(r, 1));
    }
}

TEST_CASE("first component power law by flavor") {
    // additive: M^p = 0; multiplicative: M^p = M; mixed c: M^p = c^(p-1) M
    Matrix ma = linear_map_matrix(HSDerivation::canonical(ga(3), 4), 1, 1);
    CHECK(mat_is_zero(mat_pow(ma, 3, 3)));

    Matrix mm = linear_map_matrix(HSDerivation::canonical(gm(3), 4), 1, 1);
    CHECK(mat_pow(mm, 3, 3) == mm);

    auto fc = GroupLaw::make(LawTag::Mixed, 3, 2);
    Matrix mc = linear_map_matrix(HSDerivation::canonical(fc, 4), 1, 1);
    std::uint64_t scale = 1; // 2^2 mod 3
    Matrix rhs = mc;
    for (auto& row : rhs)
        for (auto& e : row) e = RatFn::constant(3, scale) * e;
    CHECK(mat_pow(mc, 3, 3) == rhs);
}

TEST_CASE("constants field degree") {
    for (std::uint64_t p : {2ull, 3ull})
        for (std::uint32_t m : {1u, 2u})
            for (auto tag : {LawTag::Additive, LawTag::Multiplicative}) {
                auto law = GroupLaw::make(tag, p);
                std::uint32_t q = static_cast<std::uint32_t>(m == 1 ? p : p * p);
                auto d = HSDerivation::canonical(law, q);
                auto rep = constants_degree(d, m);
                CHECK(rep.q == q);
                CHECK(rep.kernel_dim == 1);
                CHECK(rep.degree == q);
                CHECK(rep.d1_nonzero);
                CHECK(rep.kernel_is_c);
            }

    auto rep = constants_degree(HSDerivation::trivial(2, 4), 1);
    CHECK(rep.degree == 1);
    CHECK(rep.kernel_dim == 2);
    CHECK(!rep.d1_nonzero);
    CHECK(!rep.kernel_is_c);
}

TEST_CASE("image of d1 equals kernel of its (p-1)-st power") {
    auto r2 = imisker_check(HSDerivation::canonical(ga(2), 4));
    CHECK(r2.pass);
    CHECK(r2.im_dim == 1);
    CHECK(r2.ker_dim == 1);

    auto r3 = imisker_check(HSDerivation::canonical(ga(3), 4));
    CHECK(r3.pass);
    CHECK(r3.im_dim == 2);
    CHECK(r3.ker_dim == 2);

    // requires the p-th compositional power of d_1 to vanish
    CHECK_THROWS_AS(imisker_check(HSDerivation::canonical(gm(2), 4)), Error);
}

TEST_CASE("eigenvector of d1 for eigenvalue one") {
    auto dm2 = HSDerivation::canonical(gm(2), 4);
    RatFn x2 = solve_dx_eq_x(dm2);
    CHECK(x2 == rf("t+1", 2));
    CHECK(dm2.apply(x2, 1) == x2);

    auto dm3 = HSDerivation::canonical(gm(3), 4);
    RatFn x3 = solve_dx_eq_x(dm3);
    CHECK(!x3.is_zero());
    CHECK(dm3.apply(x3, 1) == x3);

    // additive d_1 has no eigenvalue 1: d_1^(p) = 0 there
    CHECK_THROWS_AS(solve_dx_eq_x(HSDerivation::canonical(ga(2), 4)), Error);
}

TEST_CASE("additive canonical element") {
    for (std::uint64_t p : {2ull, 3ull})
        for (std::uint32_t m : {1u, 2u}) {
            auto d = canon_trunc(ga(p), m);
            auto e = canonical_element_additive(d);
            CHECK(e.x == RatFn::variable(p));
            CHECK(e.flavor == LawTag::Additive);
            CHECK(e.level == m);
            CHECK(verify_canonical(d, e).pass);
        }

    // generator t + t^2 X: d_1 = t^2 d/dt, so x satisfies x' = 1/t^2
    auto nil = HSDerivation::from_nilpotent_derivation(rf("t^2", 2));
    auto en = canonical_element_additive(nil);
    CHECK(nil.apply(en.x, 1) == RatFn::constant(2, 1));
    CHECK(verify_canonical(nil, en).pass);

    // level 2 input that is iterative but not the canonical derivation
    auto twist = truncate_derivation(
        HSDerivation::from_gen_image(TruncSeries::from_coeffs(
            2, "X",
            {rf("t", 2), RatFn::constant(2, 1), RatFn::constant(2, 1),
             RatFn::zero(2)})),
        2);
    auto et = canonical_element_additive(twist);
    CHECK(twist.apply(et.x, 1) == RatFn::constant(2, 1));
    CHECK(twist.apply(et.x, 2).is_zero());
    CHECK(twist.apply(et.x, 3).is_zero());
    CHECK(verify_canonical(twist, et).pass);

    // d_1 = 0 is rejected: the caller must deflate first
    auto degen = truncate_derivation(inflate(HSDerivation::canonical(ga(2), 2), 1), 2);
    CHECK_THROWS_AS(canonical_element_additive(degen), Error);

    // non-iterative input is rejected when the element fails its equations
    auto bad = truncate_derivation(
        HSDerivation::from_gen_image(TruncSeries::from_coeffs(
            2, "X",
            {rf("t", 2), RatFn::constant(2, 1), rf("t", 2), RatFn::zero(2)})),
        2);
    bool threw = false;
    try {
        canonical_element_additive(bad);
    } catch (const Error& err) {
        threw = true;
        CHECK(std::string(err.what()).find("not additively iterative") !=
              std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("multiplicative canonical element") {
    auto d1 = canon_trunc(gm(2), 1);
    auto e1 = canonical_element_multiplicative(d1);
    CHECK(e1.x == rf("t", 2));
    CHECK(e1.flavor == LawTag::Multiplicative);
    CHECK(verify_canonical(d1, e1).pass);
    CHECK(d1.apply(e1.x, 1) == e1.x + RatFn::constant(2, 1));

    auto d2 = canon_trunc(gm(2), 2);
    auto e2 = canonical_element_multiplicative(d2);
    CHECK(verify_canonical(d2, e2).pass);

    // pullback along multiplication by 2 stays multiplicative-iterative
    auto dm3 = HSDerivation::canonical(gm(3), 9);
    GroupLawHom two{gm(3), gm(3), mult_by_m(gm(3), 2, 9)};
    REQUIRE(check_hom(two, 9).pass);
    auto pulled = truncate_derivation(pullback_along_hom(dm3, two), 1);
    auto ep = canonical_element_multiplicative(pulled);
    CHECK(verify_canonical(pulled, ep).pass);
    CHECK(pulled.apply(ep.x, 1) == ep.x + RatFn::constant(3, 1));
}

TEST_CASE("operator identities on random samples") {
    for (std::uint64_t p : {2ull, 3ull}) {
        for (const auto& law : {ga(p), gm(p)}) {
            auto d = HSDerivation::canonical(law, 9);
            auto rep = general_identity_check(d, 20, 77);
            CHECK(rep.pass);
            CHECK(rep.checks > 0);
        }
    }
}

TEST_CASE("independence of twisted power maps") {
    for (std::uint64_t p : {2ull, 3ull}) {
        auto d = HSDerivation::canonical(gm(p), 8);
        CHECK(independence_check(d, 1));
        CHECK(independence_check(d, p));
    }
}

TEST_CASE("p-basis predicate") {
    CHECK(is_pbasis(rf("t", 2)));
    CHECK(!is_pbasis(rf("t^2", 2)));
    CHECK(is_pbasis(rf("t^2+t", 2)));
    CHECK(is_pbasis(rf("1/t", 2)));
    CHECK(!is_pbasis(rf("t^3", 3)));
    CHECK(!is_pbasis(RatFn::constant(3, 2)));
}

TEST_CASE("random rational functions are deterministic per seed") {
    std::mt19937_64 a(99), b(99);
    for (int iter = 0; iter < 20; ++iter) {
        RatFn ra = random_ratfn(a, 3, 4);
        RatFn rb = random_ratfn(b, 3, 4);
        CHECK(ra == rb);
        CHECK(ra.num().degree() <= 4);
        CHECK(ra.den().degree() <= 4);
    }
}
