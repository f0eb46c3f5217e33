#include "hsd/verify.hpp"

#include "hsd/derivation.hpp"
#include "hsd/error.hpp"
#include "hsd/group_law.hpp"
#include "hsd/integrate.hpp"
#include "hsd/linsolve.hpp"
#include "hsd/scalar.hpp"
#include "hsd/structure.hpp"
#include "hsd/text.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace hsd {

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Case {
    std::string suite;
    std::string params;
    std::function<Outcome()> body;
};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// per-case stream: stable under parallel scheduling
std::uint64_t case_seed(std::uint64_t seed, const std::string& id) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : id) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return splitmix(seed ^ h);
}

std::vector<std::uint64_t> grid_ps(const SuiteConfig& cfg,
                                   std::initializer_list<std::uint64_t> def) {
    return cfg.ps.empty() ? std::vector<std::uint64_t>(def) : cfg.ps;
}

std::vector<std::uint32_t> grid_ms(const SuiteConfig& cfg,
                                   std::initializer_list<std::uint32_t> def) {
    return cfg.ms.empty() ? std::vector<std::uint32_t>(def) : cfg.ms;
}

std::uint32_t pick_order(const SuiteConfig& cfg, std::uint32_t def) {
    return cfg.order ? cfg.order : def;
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        require(r <= (1ull << 26) / (b ? b : 1), "parameter grid overflow");
        r *= b;
    }
    return r;
}

std::string law_label(LawTag tag, std::uint64_t c) {
    switch (tag) {
        case LawTag::Additive: return "additive";
        case LawTag::Multiplicative: return "multiplicative";
        case LawTag::Mixed: {
            std::ostringstream os;
            os << "mixed(" << c << ")";
            return os.str();
        }
        default: return "custom";
    }
}

struct NamedLaw {
    std::string name;
    GroupLaw law;
};

// the two distinguished laws plus every mixing coefficient
std::vector<NamedLaw> laws_all(std::uint64_t p) {
    std::vector<NamedLaw> v;
    v.push_back({"additive", GroupLaw::make(LawTag::Additive, p)});
    v.push_back({"multiplicative", GroupLaw::make(LawTag::Multiplicative, p)});
    for (std::uint64_t c = 1; c < p; ++c)
        v.push_back({law_label(LawTag::Mixed, c), GroupLaw::make(LawTag::Mixed, p, c)});
    return v;
}

// representative set for the heavier sample-driven suites
std::vector<NamedLaw> laws_rep(std::uint64_t p) {
    std::vector<NamedLaw> v;
    v.push_back({"additive", GroupLaw::make(LawTag::Additive, p)});
    v.push_back({"multiplicative", GroupLaw::make(LawTag::Multiplicative, p)});
    if (p > 2)
        v.push_back({law_label(LawTag::Mixed, 2), GroupLaw::make(LawTag::Mixed, p, 2)});
    return v;
}

std::string witness2(const std::array<std::uint32_t, 2>& w) {
    std::ostringstream os;
    os << "(" << w[0] << "," << w[1] << ")";
    return os.str();
}

RatFn t_var(std::uint64_t p) { return RatFn::variable(p); }

// Frobenius-linear endomorphism c X + X^p of the additive law, and the
// multiplication endomorphism [k] of the multiplicative law; both have a
// unit linear term, so pullback keeps d_1 nonzero.
GroupLawHom additive_hom(std::uint64_t p, std::uint32_t order) {
    TruncSeries alpha(shape1(p, "X", order));
    alpha.set1(1, RatFn::constant(p, p - 1));
    if (p < order) alpha.set1(static_cast<std::uint32_t>(p), RatFn::constant(p, 1));
    auto ga = GroupLaw::make(LawTag::Additive, p);
    return GroupLawHom{ga, ga, alpha};
}

GroupLawHom multiplicative_hom(std::uint64_t p, std::uint32_t order) {
    auto gm = GroupLaw::make(LawTag::Multiplicative, p);
    std::uint32_t k = (p == 2) ? 3 : 2;
    return GroupLawHom{gm, gm, mult_by_m(gm, k, order)};
}

HSDerivation truncated_canonical(const GroupLaw& law, std::uint32_t m) {
    auto q = static_cast<std::uint32_t>(pow_u64(law.p(), m));
    return truncate_derivation(HSDerivation::canonical(law, q), m);
}

HSDerivation truncated_pullback(const GroupLawHom& hom, std::uint32_t m) {
    auto q = static_cast<std::uint32_t>(pow_u64(hom.target.p(), m));
    auto d0 = HSDerivation::canonical(hom.target, q);
    return truncate_derivation(pullback_along_hom(d0, hom), m);
}

Outcome check_roundtrip(const HSDerivation& input, const IntegrationResult& r,
                        std::uint32_t expect_deflate) {
    if (!r.iterativity.pass) return {false, "iterativity: " + r.iterativity.detail};
    if (!r.audit.pass) {
        for (const auto& line : r.audit.lines)
            if (!line.match) return {false, "audit: " + line.text};
        return {false, "audit failed"};
    }
    auto back = truncate_derivation(r.output, input.level());
    if (auto fd = back.gen_image().first_difference(input.gen_image())) {
        std::ostringstream os;
        os << "truncation differs from input at index " << (*fd)[0];
        return {false, os.str()};
    }
    if (r.deflated_pow != expect_deflate) {
        std::ostringstream os;
        os << "deflated_pow=" << r.deflated_pow << ", expected " << expect_deflate;
        return {false, os.str()};
    }
    std::string note;
    if (r.deflated_pow) {
        std::ostringstream os;
        os << "deflated_pow=" << r.deflated_pow;
        note = os.str();
    }
    return {true, note};
}

// group-law axioms hold exactly at the stated order
void build_laws(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3, 5}))
        for (const auto& nl : laws_all(p)) {
            std::uint32_t n = pick_order(cfg, 64);
            std::ostringstream ps;
            ps << "p=" << p << " N=" << n << " law=" << nl.name;
            GroupLaw law = nl.law;
            cases.push_back({"laws", ps.str(), [law, n]() -> Outcome {
                auto rep = check_group_law(law, n);
                if (rep.pass) return {true, ""};
                return {false, rep.axiom + ": " + rep.detail};
            }});
        }
}

// the canonical derivation of each law is iterative for it; a perturbed
// generator image fails with a witness
void build_canonical(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3, 5})) {
        std::uint32_t n = pick_order(cfg, 32);
        for (const auto& nl : laws_all(p)) {
            std::ostringstream ps;
            ps << "p=" << p << " N=" << n << " law=" << nl.name;
            GroupLaw law = nl.law;
            cases.push_back({"canonical", ps.str(), [law, n]() -> Outcome {
                auto d = HSDerivation::canonical(law, n);
                auto rep = check_f_iterative(d, law, n);
                if (rep.pass) return {true, ""};
                return {false, rep.detail};
            }});
        }
        std::ostringstream ps;
        ps << "p=" << p << " N=" << n << " law=additive perturbed";
        cases.push_back({"canonical", ps.str(), [p, n]() -> Outcome {
            auto law = GroupLaw::make(LawTag::Additive, p);
            auto gen = HSDerivation::canonical(law, n).gen_image();
            gen.set1(2, gen.at1(2) + t_var(p));
            auto d = HSDerivation::from_gen_image(gen);
            auto rep = check_f_iterative(d, law, n);
            if (rep.pass) return {false, "perturbed generator image passed"};
            if (!rep.witness) return {false, "failure carries no witness"};
            return {true, "fails as required, witness=" + witness2(*rep.witness)};
        }});
    }
}

// apply on the canonical derivations matches the closed-form coefficients
void build_closedform(const SuiteConfig& cfg, std::vector<Case>& cases) {
    constexpr std::uint32_t kmax = 12, nmax = 12;
    for (auto p : grid_ps(cfg, {2, 3, 5}))
        for (LawTag tag : {LawTag::Additive, LawTag::Multiplicative}) {
            std::ostringstream ps;
            ps << "p=" << p << " law=" << law_label(tag, 0) << " kmax=" << kmax
               << " nmax=" << nmax;
            cases.push_back({"closedform", ps.str(), [p, tag]() -> Outcome {
                auto d = HSDerivation::canonical(GroupLaw::make(tag, p), nmax + 1);
                for (std::uint32_t k = 0; k <= kmax; ++k)
                    for (std::uint32_t n = 0; n <= nmax; ++n) {
                        auto lhs = d.apply(RatFn(Poly::variable(p).pow(k)), n);
                        std::vector<std::uint64_t> coeffs(k + 1, 0);
                        for (std::uint32_t i = 0; i <= k; ++i)
                            coeffs[i] = closed_form_coefficient(tag, p, n, i, k);
                        if (lhs != RatFn(Poly(p, coeffs))) {
                            std::ostringstream os;
                            os << "mismatch at n=" << n << " k=" << k;
                            return {false, os.str()};
                        }
                    }
                return {true, ""};
            }});
        }
}

// the p-fold star power lives on exponents divisible by p and reading its
// X^(p i) coefficients gives the p-th compositional power
void build_epe(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3, 5}))
        for (const auto& nl : laws_all(p)) {
            auto n = pick_order(cfg, static_cast<std::uint32_t>(pow_u64(p, 3)));
            std::ostringstream ps;
            ps << "p=" << p << " N=" << n << " law=" << nl.name;
            GroupLaw law = nl.law;
            cases.push_back({"epe", ps.str(), [law, n]() -> Outcome {
                auto p = law.p();
                auto d = HSDerivation::canonical(law, n);
                auto s = star_power(d, static_cast<std::uint32_t>(p));
                for (std::uint32_t i = 1; i < n; ++i)
                    if (i % p != 0 && !s.gen_image().at1(i).is_zero()) {
                        std::ostringstream os;
                        os << "nonzero star coefficient off p-support at X^" << i;
                        return {false, os.str()};
                    }
                auto e = pth_comp_power(d);
                for (std::uint32_t i = 0; i < e.precision(); ++i)
                    if (e.gen_image().at1(i) !=
                        s.gen_image().at1(i * static_cast<std::uint32_t>(p))) {
                        std::ostringstream os;
                        os << "compositional power differs at index " << i;
                        return {false, os.str()};
                    }
                return {true, ""};
            }});
        }
}

// the m-fold star power equals evaluation at [m]_F, for m up to p+1
void build_composing(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (const auto& nl : laws_all(p)) {
            std::uint32_t n = pick_order(cfg, p == 2 ? 32 : 27);
            auto mmax = static_cast<std::uint32_t>(p + 1);
            std::ostringstream ps;
            ps << "p=" << p << " N=" << n << " law=" << nl.name << " mmax=" << mmax;
            GroupLaw law = nl.law;
            cases.push_back({"composing", ps.str(), [law, n, mmax]() -> Outcome {
                auto d = HSDerivation::canonical(law, n);
                for (std::uint32_t m = 1; m <= mmax; ++m) {
                    auto lhs = star_power(d, m).gen_image();
                    auto rhs = compose(d.gen_image(), {mult_by_m(law, m, n)});
                    if (auto fd = lhs.first_difference(rhs)) {
                        std::ostringstream os;
                        os << "star power m=" << m << " differs at X^" << (*fd)[0];
                        return {false, os.str()};
                    }
                }
                return {true, ""};
            }});
        }
}

// the p-th compositional power equals evaluation at W
void build_pthpower(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (const auto& nl : laws_all(p)) {
            std::uint32_t n = pick_order(cfg, p == 2 ? 32 : 27);
            std::ostringstream ps;
            ps << "p=" << p << " N=" << n << " law=" << nl.name;
            GroupLaw law = nl.law;
            cases.push_back({"pthpower", ps.str(), [law, n]() -> Outcome {
                auto p32 = static_cast<std::uint32_t>(law.p());
                auto d = HSDerivation::canonical(law, n * p32);
                auto e = pth_comp_power(d);
                auto w = verschiebung(law, n).W;
                auto rhs = compose(d.gen_image().restricted(shape1(law.p(), "X", n)), {w});
                if (auto fd = e.gen_image().first_difference(rhs)) {
                    std::ostringstream os;
                    os << "differs from evaluation at W at X^" << (*fd)[0];
                    return {false, os.str()};
                }
                return {true, ""};
            }});
        }
}

// composition of two components minus the binomial multiple of the top
// component lands in the F_p-span of the lower components
void build_approx(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (const auto& nl : laws_rep(p))
            for (std::uint32_t i = 1; i <= 5; ++i)
                for (std::uint32_t j = 1; i + j <= 6; ++j) {
                    std::ostringstream ps;
                    ps << "p=" << p << " law=" << nl.name << " i=" << i << " j=" << j
                       << " samples=" << cfg.samples;
                    GroupLaw law = nl.law;
                    auto seed = case_seed(cfg.seed, "approx|" + ps.str());
                    auto samples = cfg.samples;
                    cases.push_back({"approx", ps.str(), [law, i, j, samples,
                                                          seed]() -> Outcome {
                        auto p = law.p();
                        auto d = HSDerivation::canonical(law, 8);
                        std::mt19937_64 rng(seed);
                        auto c = RatFn::constant(p, binom_mod_p(i + j, i, p));
                        auto rhs_of = [&](const RatFn& r) {
                            return compose_terms(d, j, i, r) - c * d.apply(r, i + j);
                        };
                        Matrix a;
                        std::vector<RatFn> b;
                        for (std::size_t s = 0; s < samples; ++s) {
                            auto r = random_ratfn(rng, p, 3);
                            std::vector<RatFn> row;
                            for (std::uint32_t k = 1; k < i + j; ++k)
                                row.push_back(d.apply(r, k));
                            a.push_back(std::move(row));
                            b.push_back(rhs_of(r));
                        }
                        auto res = linsolve(a, b);
                        if (!res.consistent) return {false, "no span representation"};
                        if (!res.kernel.empty())
                            return {false, "sample matrix is rank-deficient"};
                        for (std::uint32_t k = 0; k + 1 < i + j; ++k)
                            if (!res.solution[k].is_constant()) {
                                std::ostringstream os;
                                os << "coefficient of component " << (k + 1)
                                   << " is not in F_p: " << to_string(res.solution[k]);
                                return {false, os.str()};
                            }
                        auto r = random_ratfn(rng, p, 3);
                        RatFn acc = RatFn::zero(p);
                        for (std::uint32_t k = 1; k < i + j; ++k)
                            acc = acc + res.solution[k - 1] * d.apply(r, k);
                        if (acc != rhs_of(r))
                            return {false, "span coefficients fail on a fresh sample"};
                        return {true, ""};
                    }});
                }
}

// the exact multiplicative composition rule with multinomial coefficients
void build_multiter(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3})) {
        auto psq = static_cast<std::uint32_t>(pow_u64(p, 2));
        for (std::uint32_t i = 1; i < psq; ++i)
            for (std::uint32_t j = 1; i + j < psq; ++j) {
                std::ostringstream ps;
                ps << "p=" << p << " law=multiplicative i=" << i << " j=" << j;
                auto seed = case_seed(cfg.seed, "multiter|" + ps.str());
                cases.push_back({"multiter", ps.str(), [p, psq, i, j, seed]() -> Outcome {
                    auto d = HSDerivation::canonical(
                        GroupLaw::make(LawTag::Multiplicative, p), psq);
                    std::mt19937_64 rng(seed);
                    std::vector<RatFn> pts;
                    for (std::uint32_t k = 0; k <= 5; ++k)
                        pts.push_back(RatFn(Poly::variable(p).pow(k)));
                    for (int s = 0; s < 3; ++s) pts.push_back(random_ratfn(rng, p, 2));
                    for (const auto& r : pts) {
                        auto lhs = compose_terms(d, j, i, r);
                        RatFn rhs = RatFn::zero(p);
                        for (std::uint32_t n = std::max(i, j); n <= i + j; ++n) {
                            auto coef = multinom_mod_p(n - i, n - j, i + j - n, p);
                            rhs = rhs + RatFn::constant(p, coef) * d.apply(r, n);
                        }
                        if (lhs != rhs) {
                            std::ostringstream os;
                            os << "rule fails at r=" << to_string(r);
                            return {false, os.str()};
                        }
                    }
                    return {true, ""};
                }});
            }
    }
}

// joint kernel of the positive components has C-dimension 1, so the
// constants field has the full degree p^m
void build_degree(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (auto m : grid_ms(cfg, {1, 2}))
            for (LawTag tag : {LawTag::Additive, LawTag::Multiplicative}) {
                std::ostringstream ps;
                ps << "p=" << p << " m=" << m << " law=" << law_label(tag, 0);
                cases.push_back({"degree", ps.str(), [p, m, tag]() -> Outcome {
                    auto q = pow_u64(p, m);
                    auto d = truncated_canonical(GroupLaw::make(tag, p), m);
                    auto rep = constants_degree(d, m);
                    if (rep.degree != q) {
                        std::ostringstream os;
                        os << "degree " << rep.degree << ", expected " << q;
                        return {false, os.str()};
                    }
                    if (!rep.d1_nonzero) return {false, "d_1 vanished"};
                    if (!rep.kernel_is_c)
                        return {false, "joint kernel is not the base constants field"};
                    return {true, ""};
                }});
            }
}

// operator identities on random samples plus independence of the pointwise
// q-th powers of the compositional powers
void build_general(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (const auto& nl : laws_rep(p)) {
            {
                std::ostringstream ps;
                ps << "p=" << p << " law=" << nl.name << " identities samples="
                   << cfg.samples;
                GroupLaw law = nl.law;
                auto seed = case_seed(cfg.seed, "general|" + ps.str());
                auto samples = cfg.samples;
                cases.push_back({"general", ps.str(), [law, samples, seed]() -> Outcome {
                    auto d = HSDerivation::canonical(law, 16);
                    auto rep = general_identity_check(d, samples, seed);
                    if (!rep.pass) return {false, rep.detail};
                    std::ostringstream os;
                    os << "checks=" << rep.checks;
                    return {true, os.str()};
                }});
            }
            for (std::uint64_t q : {std::uint64_t{1}, p}) {
                std::ostringstream ps;
                ps << "p=" << p << " law=" << nl.name << " independence q=" << q;
                GroupLaw law = nl.law;
                cases.push_back({"general", ps.str(), [law, q]() -> Outcome {
                    auto d = HSDerivation::canonical(law, 16);
                    if (!independence_check(d, q))
                        return {false, "power maps are linearly dependent"};
                    return {true, ""};
                }});
            }
        }
}

// both canonical-element finders satisfy their defining equations, on the
// canonical inputs and on pullbacks along nontrivial endomorphisms
void build_elements(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2, 3}))
        for (auto m : grid_ms(cfg, {1, 2}))
            for (bool pullback : {false, true})
                for (LawTag tag : {LawTag::Additive, LawTag::Multiplicative}) {
                    std::ostringstream ps;
                    ps << "p=" << p << " m=" << m << " flavor=" << law_label(tag, 0)
                       << " input=" << (pullback ? "pullback" : "canonical");
                    cases.push_back({"elements", ps.str(), [p, m, tag,
                                                            pullback]() -> Outcome {
                        auto q = static_cast<std::uint32_t>(pow_u64(p, m));
                        auto d = [&] {
                            if (!pullback)
                                return truncated_canonical(GroupLaw::make(tag, p), m);
                            auto hom = tag == LawTag::Additive
                                           ? additive_hom(p, q)
                                           : multiplicative_hom(p, q);
                            return truncated_pullback(hom, m);
                        }();
                        auto e = tag == LawTag::Additive
                                     ? canonical_element_additive(d)
                                     : canonical_element_multiplicative(d);
                        auto rep = verify_canonical(d, e);
                        if (!rep.pass) {
                            for (const auto& line : rep.lines)
                                if (line.find("FAIL") != std::string::npos)
                                    return {false, line};
                            return {false, "verification failed"};
                        }
                        return {true, "x = " + to_string(e.x)};
                    }});
                }
}

void build_roundtrip(const SuiteConfig& cfg, std::vector<Case>& cases, LawTag tag) {
    std::string suite = tag == LawTag::Additive ? "roundtrip-additive"
                                                : "roundtrip-multiplicative";
    for (auto p : grid_ps(cfg, {2, 3})) {
        std::uint32_t n = pick_order(cfg, 32);
        for (auto m : grid_ms(cfg, {1, 2})) {
            {
                std::ostringstream ps;
                ps << "p=" << p << " m=" << m << " N=" << n << " input=canonical";
                cases.push_back({suite, ps.str(), [p, m, n, tag]() -> Outcome {
                    auto d = truncated_canonical(GroupLaw::make(tag, p), m);
                    auto r = tag == LawTag::Additive ? integrate_additive(d, n)
                                                     : integrate_multiplicative(d, n);
                    return check_roundtrip(d, r, 0);
                }});
            }
            if (m >= 2) {
                std::ostringstream ps;
                ps << "p=" << p << " m=" << m << " N=" << n << " input=pullback";
                cases.push_back({suite, ps.str(), [p, m, n, tag]() -> Outcome {
                    auto q = static_cast<std::uint32_t>(pow_u64(p, m));
                    auto hom = tag == LawTag::Additive ? additive_hom(p, q)
                                                       : multiplicative_hom(p, q);
                    auto d = truncated_pullback(hom, m);
                    auto r = tag == LawTag::Additive ? integrate_additive(d, n)
                                                     : integrate_multiplicative(d, n);
                    return check_roundtrip(d, r, 0);
                }});
            }
            if (m >= 2 && tag == LawTag::Additive) {
                // d_1 = 0: generator t + X^p forces one deflation round
                std::ostringstream ps;
                ps << "p=" << p << " m=" << m << " N=" << n << " input=degenerate";
                cases.push_back({suite, ps.str(), [p, m, n]() -> Outcome {
                    auto q = static_cast<std::uint32_t>(pow_u64(p, m));
                    TruncSeries gen(shape1(p, "X", q));
                    gen.set1(0, t_var(p));
                    gen.set1(static_cast<std::uint32_t>(p), RatFn::constant(p, 1));
                    auto d = HSDerivation::from_gen_image(gen, m);
                    return check_roundtrip(d, integrate_additive(d, n), 1);
                }});
            }
        }
    }
}

// two different canonical elements integrate the same truncated input to
// different expansions; both pass the audit
void build_nonuniq(const SuiteConfig& cfg, std::vector<Case>& cases) {
    for (auto p : grid_ps(cfg, {2})) {
        std::uint32_t n = pick_order(cfg, 8);
        std::ostringstream ps;
        ps << "p=" << p << " m=1 N=" << n;
        cases.push_back({"nonuniq", ps.str(), [p, n]() -> Outcome {
            auto d = truncated_canonical(GroupLaw::make(LawTag::Additive, p), 1);
            auto x1 = t_var(p);
            auto x2 = x1 + RatFn(Poly::variable(p).pow(static_cast<std::uint32_t>(p)));
            auto r1 = integrate_additive(d, n, x1);
            auto r2 = integrate_additive(d, n, x2);
            if (auto bad = check_roundtrip(d, r1, 0); !bad.pass)
                return {false, "x=t: " + bad.detail};
            if (auto bad = check_roundtrip(d, r2, 0); !bad.pass)
                return {false, "x=t+t^p: " + bad.detail};
            auto fd = r1.output.gen_image().first_difference(r2.output.gen_image());
            if (!fd) return {false, "both integrations produced the same expansion"};
            auto idx = (*fd)[0];
            if (idx < p) return {false, "expansions differ below the input precision"};
            if (p == 2 && idx != 2) {
                std::ostringstream os;
                os << "first difference at index " << idx << ", expected 2";
                return {false, os.str()};
            }
            std::ostringstream os;
            os << "expansions differ first at index " << idx;
            return {true, os.str()};
        }});
    }
}

using Builder = void (*)(const SuiteConfig&, std::vector<Case>&);

struct SuiteEntry {
    const char* name;
    Builder build;
};

void build_roundtrip_additive(const SuiteConfig& cfg, std::vector<Case>& cases) {
    build_roundtrip(cfg, cases, LawTag::Additive);
}

void build_roundtrip_multiplicative(const SuiteConfig& cfg, std::vector<Case>& cases) {
    build_roundtrip(cfg, cases, LawTag::Multiplicative);
}

const SuiteEntry kSuites[] = {
    {"laws", build_laws},
    {"canonical", build_canonical},
    {"closedform", build_closedform},
    {"epe", build_epe},
    {"composing", build_composing},
    {"pthpower", build_pthpower},
    {"approx", build_approx},
    {"multiter", build_multiter},
    {"degree", build_degree},
    {"general", build_general},
    {"elements", build_elements},
    {"roundtrip-additive", build_roundtrip_additive},
    {"roundtrip-multiplicative", build_roundtrip_multiplicative},
    {"nonuniq", build_nonuniq},
};

} // namespace

const std::vector<std::string>& suite_registry() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kSuites) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    const auto& registry = suite_registry();
    for (const auto& s : cfg.suites)
        require(std::find(registry.begin(), registry.end(), s) != registry.end(),
                "unknown suite: " + s);
    std::vector<Case> cases;
    for (const auto& e : kSuites) {
        if (!cfg.suites.empty() &&
            std::find(cfg.suites.begin(), cfg.suites.end(), e.name) == cfg.suites.end())
            continue;
        e.build(cfg, cases);
    }

    SuiteReport rep;
    rep.cases.resize(cases.size());
    const auto total = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
        const auto& c = cases[static_cast<std::size_t>(i)];
        auto& out = rep.cases[static_cast<std::size_t>(i)];
        out.suite = c.suite;
        out.params = c.params;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto o = c.body();
            out.pass = o.pass;
            out.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("error: ") + e.what();
        }
        out.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rep.pass = std::all_of(rep.cases.begin(), rep.cases.end(),
                           [](const SuiteCase& c) { return c.pass; });
    return rep;
}

std::string render_report(const SuiteReport& rep, bool timings) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    std::string current;
    std::size_t npass = 0;
    for (const auto& c : rep.cases) {
        if (c.suite != current) {
            current = c.suite;
            os << "== " << current << " ==\n";
        }
        os << (c.pass ? "ok    " : "FAIL  ") << c.params;
        if (!c.detail.empty()) os << "  " << c.detail;
        if (timings) os << "  [" << c.seconds << "s]";
        os << "\n";
        if (c.pass) ++npass;
    }
    os << "result: " << npass << "/" << rep.cases.size() << " checks passed\n";
    return os.str();
}

} // namespace hsd
