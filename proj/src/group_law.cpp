#include "hsd/group_law.hpp"

namespace hsd {

namespace {

void validate_units(std::uint32_t width, const std::vector<std::uint64_t>& table) {
    // F(X,0) = X and F(0,Y) = Y, i.e. border rows are exactly the variables
    for (std::uint32_t a = 0; a < width; ++a) {
        std::uint64_t want = (a == 1) ? 1u : 0u;
        require(table[a * width] == want, "group law: F(X,0) != X");
        require(table[a] == want, "group law: F(0,Y) != Y");
    }
}

} // namespace

GroupLaw GroupLaw::make(LawTag tag, std::uint64_t p, std::uint64_t c) {
    require(p >= 2 && is_prime_u64(p), "make_law: p must be prime");
    require(tag != LawTag::Custom, "make_law: custom laws take an explicit table");
    GroupLaw law;
    law.p_ = p;
    law.tag_ = tag;
    switch (tag) {
    case LawTag::Additive: law.c_ = 0; break;
    case LawTag::Multiplicative: law.c_ = 1; break;
    case LawTag::Mixed: law.c_ = c % p; break;
    default: break;
    }
    law.width_ = 2;
    law.table_.assign(4, 0);
    law.table_[1 * 2 + 0] = 1;         // X
    law.table_[0 * 2 + 1] = 1;         // Y
    law.table_[1 * 2 + 1] = law.c_;    // cXY
    return law;
}

GroupLaw GroupLaw::custom(std::uint64_t p, std::uint32_t width,
                          std::vector<std::uint64_t> table) {
    require(p >= 2 && is_prime_u64(p), "make_law: p must be prime");
    require(width >= 2 && table.size() == static_cast<std::size_t>(width) * width,
            "make_law: table must be width x width");
    for (auto& x : table) x %= p;
    validate_units(width, table);
    GroupLaw law;
    law.p_ = p;
    law.tag_ = LawTag::Custom;
    law.width_ = width;
    law.table_ = std::move(table);
    return law;
}

std::uint32_t GroupLaw::q() const {
    require(is_truncated(), "GroupLaw::q: formal law has no truncation order");
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < level_; ++i) r *= static_cast<std::uint32_t>(p_);
    return r;
}

std::uint64_t GroupLaw::coeff(std::uint32_t a, std::uint32_t b) const {
    if (a >= width_ || b >= width_) return 0;
    return table_[static_cast<std::size_t>(a) * width_ + b];
}

GroupLaw GroupLaw::truncated(std::uint32_t m) const {
    require(m >= 1, "truncate_law: level must be >= 1");
    if (is_truncated())
        require(m <= level_, "truncate_law: cannot extend a truncated law");
    GroupLaw law = *this;
    law.level_ = m;
    std::uint32_t qm = law.q();
    // drop table entries at or above the truncation order
    for (std::uint32_t a = 0; a < width_; ++a)
        for (std::uint32_t b = 0; b < width_; ++b)
            if (a >= qm || b >= qm) law.table_[static_cast<std::size_t>(a) * width_ + b] = 0;
    return law;
}

GroupLaw GroupLaw::frobenius_twist(std::uint32_t) const { return *this; }

TruncSeries GroupLaw::series(std::uint32_t order) const {
    if (is_truncated()) {
        std::uint32_t qm = q();
        return series_in(shape2(p_, "X", "Y", qm, qm, 0), 0, 1);
    }
    require(order >= 1, "GroupLaw::series: order must be >= 1");
    return series_in(shape2(p_, "X", "Y", order, order, order), 0, 1);
}

TruncSeries GroupLaw::series_in(const SeriesShape& shape, std::size_t ax,
                                std::size_t ay) const {
    TruncSeries f(shape);
    std::array<std::uint32_t, 3> e{0, 0, 0};
    for (std::uint32_t a = 0; a < width_; ++a)
        for (std::uint32_t b = 0; b < width_; ++b) {
            std::uint64_t c = coeff(a, b);
            if (!c) continue;
            if (a >= shape.orders[ax] || b >= shape.orders[ay]) continue;
            e.fill(0);
            e[ax] = a;
            e[ay] = b;
            if (!f.under_cap(e)) continue;
            f.set(e, RatFn::constant(p_, c));
        }
    return f;
}

std::string GroupLaw::describe() const {
    std::string s;
    switch (tag_) {
    case LawTag::Additive: s = "additive"; break;
    case LawTag::Multiplicative: s = "multiplicative"; break;
    case LawTag::Mixed: s = "mixed(c=" + std::to_string(c_) + ")"; break;
    case LawTag::Custom: s = "custom"; break;
    }
    if (is_truncated()) s += "[m=" + std::to_string(level_) + "]";
    return s;
}

LawCheckReport check_group_law(const GroupLaw& law, std::uint32_t order) {
    LawCheckReport rep;
    const std::uint64_t p = law.p();
    if (!law.is_truncated())
        require(order >= 2, "check_group_law: order must be >= 2");
    const std::uint32_t n = law.is_truncated() ? law.q() : order;
    const std::uint32_t cap = law.is_truncated() ? 0 : order;

    // units, in one variable
    SeriesShape uni = shape1(p, "X", n);
    TruncSeries x = TruncSeries::monomial(uni, 0, 1);
    TruncSeries zero(uni);
    TruncSeries f2 = law.series(order);
    TruncSeries left = compose(f2, {x, zero});
    TruncSeries right = compose(f2, {zero, x});
    if (auto w = left.first_difference(x)) {
        rep.pass = false;
        rep.axiom = "left-unit";
        rep.witness = *w;
        return rep;
    }
    if (auto w = right.first_difference(x)) {
        rep.pass = false;
        rep.axiom = "right-unit";
        rep.witness = *w;
        return rep;
    }

    // associativity, in three variables; a formal law is a polynomial of
    // per-variable degree width-1, so both sides fit a box of per-variable
    // order (width-1)^2+1 and the cap alone enforces the requested precision
    std::uint32_t tight = n;
    if (!law.is_truncated()) {
        std::uint64_t w = law.width() - 1;
        if (w * w + 1 < n) tight = static_cast<std::uint32_t>(w * w + 1);
    }
    SeriesShape tri = shape3(p, "X", "Y", "Z", tight, cap);
    TruncSeries fxy = law.series_in(tri, 0, 1);
    TruncSeries fyz = law.series_in(tri, 1, 2);
    TruncSeries mx = TruncSeries::monomial(tri, 0, 1);
    TruncSeries mz = TruncSeries::monomial(tri, 2, 1);
    TruncSeries lhs = compose(f2, {fxy, mz});
    TruncSeries rhs = compose(f2, {mx, fyz});
    if (auto w = lhs.first_difference(rhs)) {
        rep.pass = false;
        rep.axiom = "associativity";
        rep.witness = *w;
        return rep;
    }
    return rep;
}

GroupLaw truncate_law(const GroupLaw& law, std::uint32_t m) { return law.truncated(m); }

TruncSeries mult_by_m(const GroupLaw& law, std::uint32_t k, std::uint32_t order) {
    require(k >= 1, "mult_by_m: k must be >= 1");
    if (!law.is_truncated()) require(order >= 2, "mult_by_m: order must be >= 2");
    const std::uint32_t n = law.is_truncated() ? law.q() : order;
    SeriesShape uni = shape1(law.p(), "X", n);
    TruncSeries x = TruncSeries::monomial(uni, 0, 1);
    TruncSeries acc = x;
    TruncSeries f2 = law.series(order);
    for (std::uint32_t j = 1; j < k; ++j) acc = compose(f2, {x, acc});
    return acc;
}

VerschiebungData verschiebung(const GroupLaw& law, std::uint32_t order) {
    const std::uint64_t p = law.p();
    std::uint32_t full;
    if (law.is_truncated()) {
        full = law.q();
    } else {
        require(order >= 1, "verschiebung: order must be >= 1");
        std::uint64_t want = static_cast<std::uint64_t>(order) * p;
        require(want <= (1u << 20), "verschiebung: order too large");
        full = static_cast<std::uint32_t>(want);
    }
    TruncSeries mp = mult_by_m(law, static_cast<std::uint32_t>(p), full);
    std::uint32_t vlen = std::max<std::uint32_t>(full / static_cast<std::uint32_t>(p), 1);
    TruncSeries v(shape1(p, "X", vlen));
    for (std::uint32_t e = 0; e < full; ++e) {
        if (mp.at1(e).is_zero()) continue;
        require(e % p == 0, "verschiebung: p-fold sum has a coefficient at exponent " +
                                std::to_string(e) + " not divisible by p");
        std::uint32_t i = e / static_cast<std::uint32_t>(p);
        if (i < vlen) v.set1(i, mp.at1(e));
    }
    return {v, v};
}

TruncSeries formal_inverse(const GroupLaw& law, std::uint32_t order) {
    const std::uint64_t p = law.p();
    const std::uint32_t n = law.is_truncated() ? law.q() : order;
    require(n >= 2, "formal_inverse: order must be >= 2");
    SeriesShape uni = shape1(p, "X", n);
    TruncSeries x = TruncSeries::monomial(uni, 0, 1);
    TruncSeries iota = x.scaled(RatFn::constant(p, p - 1)); // start at -X
    TruncSeries f2 = law.series(n);
    for (std::uint32_t k = 2; k < n; ++k) {
        TruncSeries r = compose(f2, {x, iota});
        const RatFn& c = r.at1(k);
        if (!c.is_zero()) iota.set1(k, -c);
    }
    TruncSeries check = compose(f2, {x, iota});
    require(check.is_zero(), "formal_inverse: inversion did not converge");
    return iota;
}

HomCheckReport check_hom(const GroupLawHom& hom, std::uint32_t order) {
    HomCheckReport rep;
    check_same_prime(hom.source.p(), hom.target.p(), "check_hom");
    check_same_prime(hom.alpha.p(), hom.source.p(), "check_hom");
    require(hom.alpha.nvars() == 1, "check_hom: alpha must be univariate");
    require(hom.alpha.constant_term().is_zero(), "check_hom: alpha(0) != 0");
    require(hom.source.is_truncated() == hom.target.is_truncated(),
            "check_hom: mixed formal/truncated homomorphism");

    const std::uint64_t p = hom.source.p();
    const std::uint32_t n = hom.source.is_truncated() ? hom.source.q() : order;
    const std::uint32_t cap = hom.source.is_truncated() ? 0 : order;
    SeriesShape biv = shape2(p, "X", "Y", n, n, cap);

    TruncSeries fxy = hom.source.series_in(biv, 0, 1);
    TruncSeries alpha = hom.alpha.restricted(shape1(p, hom.alpha.shape().vars[0], n));
    TruncSeries ax = alpha.embedded(biv, {0});
    TruncSeries ay = alpha.embedded(biv, {1});
    TruncSeries g2 = hom.target.series(order);

    if (hom.target.is_truncated()) {
        // alpha^(target q) must vanish for the right side to be evaluable
        TruncSeries pw = TruncSeries::constant(biv, RatFn::constant(p, 1));
        for (std::uint32_t i = 0; i < hom.target.q(); ++i) pw = pw * ax;
        if (!pw.is_zero()) {
            rep.pass = false;
            rep.detail = "alpha is not nilpotent at the target truncation order";
            return rep;
        }
    }

    TruncSeries lhs = compose(alpha, {fxy});
    TruncSeries rhs = compose(g2, {ax, ay});
    if (auto w = lhs.first_difference(rhs)) {
        rep.pass = false;
        rep.witness = *w;
        rep.detail = "homomorphism equation fails";
    }
    return rep;
}

} // namespace hsd
