#include "hsd/integrate.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "hsd/error.hpp"
#include "hsd/text.hpp"

namespace hsd {

namespace {

std::uint64_t pow_u64(std::uint64_t p, std::uint32_t m) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        require(q <= (std::uint64_t{1} << 26) / p, "p^m is too large");
        q *= p;
    }
    return q;
}

// F(x, X) as a univariate series in X: column sums of the law table
TruncSeries law_at(const GroupLaw& law, const RatFn& x, std::uint32_t order) {
    const std::uint64_t p = law.p();
    TruncSeries out(shape1(p, "X", order));
    const std::uint32_t bmax = std::min<std::uint32_t>(law.width(), order);
    for (std::uint32_t b = 0; b < bmax; ++b) {
        RatFn acc = RatFn::zero(p);
        for (std::uint32_t a = 0; a < law.width(); ++a) {
            const std::uint64_t c = law.coeff(a, b);
            if (c == 0) continue;
            acc = acc + RatFn::constant(p, c) * x.pow(a);
        }
        out.set1(b, std::move(acc));
    }
    return out;
}

struct Extension {
    HSDerivation output;
    IterativityReport iterativity;
};

Extension extend_impl(const RatFn& x, const GroupLaw& law, std::uint32_t order) {
    const std::uint64_t p = x.p();
    require(law.p() == p, "modulus mismatch between element and law");
    require(!law.is_truncated(), "the expansion target must be a formal law");
    require(order >= 2, "expansion needs order at least 2");
    require(is_pbasis(x), "x is a p-th power; t is inseparable over F_p(x)");
    require(!x.is_constant(), "a constant element determines nothing");

    // Q(T) = u(T) - F(x, X) v(T): the minimal polynomial of t over F_p(x)
    // with x replaced by its intended image. The root with constant term t
    // is the generator image of the extension.
    const TruncSeries fx = law_at(law, x, order);
    const Poly& u = x.num();
    const Poly& v = x.den();
    const int deg = std::max(u.degree(), v.degree());
    std::vector<TruncSeries> q;
    q.reserve(static_cast<std::size_t>(deg) + 1);
    for (int j = 0; j <= deg; ++j) {
        TruncSeries cj = TruncSeries::constant(fx.shape(), RatFn::constant(p, u.coeff(j)));
        if (v.coeff(j) != 0) cj = cj - fx.scaled(RatFn::constant(p, v.coeff(j)));
        q.push_back(std::move(cj));
    }
    TruncSeries gen = poly_root(q, RatFn::variable(p));
    HSDerivation out = HSDerivation::from_gen_image(std::move(gen));
    IterativityReport rep = check_f_iterative(out, law, order);
    return {std::move(out), std::move(rep)};
}

AuditReport audit_against(const HSDerivation& input, const HSDerivation& output) {
    AuditReport rep;
    const TruncSeries& gin = input.gen_image();
    const TruncSeries& gout = output.gen_image();
    require(output.precision() >= input.precision(),
            "output precision fell below the input precision");
    for (std::uint32_t i = 0; i < input.precision(); ++i) {
        const RatFn& a = gout.at1(i);
        const RatFn& b = gin.at1(i);
        AuditLine line;
        line.index = i;
        line.match = a == b;
        std::ostringstream os;
        os << "D_" << i << "(t) = " << to_string(a);
        if (!line.match) os << ", input has " << to_string(b);
        line.text = os.str();
        rep.pass = rep.pass && line.match;
        rep.lines.push_back(std::move(line));
    }
    return rep;
}

IntegrationResult assemble(HSDerivation output, std::optional<CanonicalElement> ce,
                           std::uint32_t deflated_pow, std::vector<RatFn> pmin,
                           const HSDerivation& input, IterativityReport iter) {
    require(iter.pass, "integration produced a non-iterative derivation: " + iter.detail);
    AuditReport audit = audit_against(input, output);
    return IntegrationResult{std::move(output), std::move(ce), deflated_pow,
                             std::move(pmin), std::move(audit), std::move(iter)};
}

// common gate and trivial/degenerate handling; flavor decides the law
IntegrationResult integrate_common(const HSDerivation& d, std::uint32_t order,
                                   const std::optional<RatFn>& x_override, LawTag tag) {
    const std::uint64_t p = d.p();
    require(d.is_truncated(), "only truncated derivations can be expanded");
    require(order >= d.precision(), "the requested order is below the input precision");
    const GroupLaw law = GroupLaw::make(tag, p);

    const IterativityReport gate = check_f_iterative(d, law, order);
    require(gate.pass, "the input fails its truncated iterativity check: " + gate.detail);

    if (d.is_trivial()) {
        HSDerivation out = HSDerivation::trivial(p, order);
        IterativityReport iter = check_f_iterative(out, law, order);
        return assemble(std::move(out), std::nullopt, 0, {}, d, std::move(iter));
    }

    const RatFn t = RatFn::variable(p);
    if (d.apply(t, 1).is_zero()) {
        require(tag == LawTag::Additive,
                "d_1 = 0: the reindexing reduction is established for the additive law "
                "only; this input is out of supported scope");
        require(!x_override.has_value(),
                "x_override is not meaningful when d_1 = 0; no canonical element exists");
        // all nonzero components sit at indexes divisible by p^j; deflate by
        // the largest such j, expand, and stretch back
        const TruncSeries& g = d.gen_image();
        std::uint32_t j = d.level();
        for (std::uint32_t n = 1; n < d.precision(); ++n) {
            if (g.at1(n).is_zero()) continue;
            std::uint32_t vp = 0;
            for (std::uint32_t k = n; k % p == 0; k /= p) ++vp;
            j = std::min(j, vp);
        }
        require(j >= 1, "d_1 vanishes but the support is not on p-th powers; the input "
                        "is not additively iterative");
        const std::uint64_t pj = pow_u64(p, j);
        const HSDerivation dj = deflate(d, j);
        const auto sub_order =
            static_cast<std::uint32_t>((order + pj - 1) / pj);
        IntegrationResult sub =
            integrate_additive(dj, std::max(sub_order, dj.precision()), std::nullopt);
        HSDerivation stretched = inflate(sub.output, j);
        HSDerivation out = HSDerivation::from_gen_image(
            stretched.gen_image().restricted(shape1(p, "X", order)));
        IterativityReport iter = check_f_iterative(out, law, order);
        return assemble(std::move(out), std::move(sub.canonical_x), j + sub.deflated_pow,
                        std::move(sub.minimal_poly), d, std::move(iter));
    }

    CanonicalElement ce;
    if (x_override) {
        ce = CanonicalElement{*x_override, tag, d.level()};
        const CanonicalCheckReport chk = verify_canonical(d, ce);
        require(chk.pass, "the supplied element fails the canonical equations for this "
                          "input; integration from it would not extend the input");
    } else {
        ce = tag == LawTag::Additive ? canonical_element_additive(d)
                                     : canonical_element_multiplicative(d);
    }
    std::vector<RatFn> pmin = minimal_polynomial_over(ce.x);
    Extension ext = extend_impl(ce.x, law, order);
    return assemble(std::move(ext.output), std::move(ce), 0, std::move(pmin), d,
                    std::move(ext.iterativity));
}

} // namespace

std::vector<RatFn> minimal_polynomial_over(const RatFn& x) {
    const std::uint64_t p = x.p();
    require(p >= 2, "minimal_polynomial_over needs an element of F_p(t)");
    require(!x.is_constant(), "a constant generates no subfield of finite index");
    require(is_pbasis(x), "x is a p-th power; t is inseparable over F_p(x)");
    const Poly& u = x.num();
    const Poly& v = x.den();
    const int deg = std::max(u.degree(), v.degree());
    const RatFn gen = RatFn::variable(p);
    std::vector<RatFn> coeffs;
    coeffs.reserve(static_cast<std::size_t>(deg) + 1);
    for (int j = 0; j <= deg; ++j)
        coeffs.push_back(RatFn::constant(p, u.coeff(j)) -
                         gen * RatFn::constant(p, v.coeff(j)));
    return coeffs;
}

HSDerivation extend_canonical(const RatFn& x, const GroupLaw& law, std::uint32_t order) {
    Extension ext = extend_impl(x, law, order);
    require(ext.iterativity.pass,
            "extension produced a non-iterative derivation: " + ext.iterativity.detail);
    return std::move(ext.output);
}

IntegrationResult integrate_additive(const HSDerivation& d, std::uint32_t order,
                                     const std::optional<RatFn>& x_override) {
    return integrate_common(d, order, x_override, LawTag::Additive);
}

IntegrationResult integrate_multiplicative(const HSDerivation& d, std::uint32_t order) {
    return integrate_common(d, order, std::nullopt, LawTag::Multiplicative);
}

} // namespace hsd
