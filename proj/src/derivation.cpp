#include "hsd/derivation.hpp"

#include <map>
#include <mutex>

namespace hsd {

struct HSDerivation::Memo {
    std::mutex mu;
    std::map<Poly, TruncSeries> eval;
    std::map<Poly, TruncSeries> inv;
};

namespace {

void validate_gen(const TruncSeries& gen) {
    require(gen.nvars() == 1, "derivation: generator image must be univariate");
    require(gen.constant_term() == RatFn::variable(gen.p()),
            "derivation: generator image must have constant term t");
}

std::uint32_t pow_u32(std::uint64_t p, std::uint32_t m) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        require(q <= (1u << 26), "derivation: index bound p^m too large");
    }
    return static_cast<std::uint32_t>(q);
}

} // namespace

HSDerivation::HSDerivation(TruncSeries gen, std::uint32_t level, std::optional<GroupLaw> law)
    : gen_(std::move(gen)), level_(level), law_(std::move(law)),
      memo_(std::make_shared<Memo>()) {}

HSDerivation HSDerivation::from_gen_image(TruncSeries gen) {
    validate_gen(gen);
    return HSDerivation(std::move(gen), 0, std::nullopt);
}

HSDerivation HSDerivation::from_gen_image(TruncSeries gen, std::uint32_t m) {
    validate_gen(gen);
    require(m >= 1, "derivation: truncation level must be >= 1");
    require(gen.order(0) == pow_u32(gen.p(), m),
            "derivation: truncated generator image must have order p^m");
    return HSDerivation(std::move(gen), m, std::nullopt);
}

HSDerivation HSDerivation::canonical(const GroupLaw& law, std::uint32_t order) {
    const std::uint64_t p = law.p();
    if (!law.is_truncated()) require(order >= 2, "canonical: order must be >= 2");
    const std::uint32_t n = law.is_truncated() ? law.q() : order;
    TruncSeries gen(shape1(p, "X", n));
    // generator image F(t, X): column b of the law table gives the X^b term
    for (std::uint32_t b = 0; b < std::min(law.width(), n); ++b) {
        std::vector<std::uint64_t> cs(law.width(), 0);
        for (std::uint32_t a = 0; a < law.width(); ++a) cs[a] = law.coeff(a, b);
        Poly gb(p, std::move(cs));
        if (!gb.is_zero()) gen.set1(b, RatFn(std::move(gb)));
    }
    return HSDerivation(std::move(gen), law.level(), law);
}

HSDerivation HSDerivation::trivial(std::uint64_t p, std::uint32_t order) {
    require(is_prime_u64(p), "trivial: p must be prime");
    require(order >= 1, "trivial: order must be >= 1");
    TruncSeries gen(shape1(p, "X", order));
    gen.set1(0, RatFn::variable(p));
    return HSDerivation(std::move(gen), 0, std::nullopt);
}

HSDerivation HSDerivation::from_nilpotent_derivation(const RatFn& a) {
    const std::uint64_t p = a.p();
    require(p >= 2 && is_prime_u64(p), "from_nilpotent_derivation: invalid prime");
    require(p <= (1u << 20), "from_nilpotent_derivation: p too large for a dense "
                             "component table");
    TruncSeries gen(shape1(p, "X", static_cast<std::uint32_t>(p)));
    RatFn c = RatFn::variable(p); // D^0(t)
    std::uint64_t fact = 1;
    gen.set1(0, c);
    for (std::uint64_t k = 1; k < p; ++k) {
        c = a * c.derivative(); // D^k(t)
        fact = (fact * (k % p)) % p;
        if (!c.is_zero())
            gen.set1(static_cast<std::uint32_t>(k),
                     c * RatFn::constant(p, mod_inv(fact, p)));
    }
    require((a * c.derivative()).is_zero(),
            "from_nilpotent_derivation: D^p != 0, the derivation is not nilpotent");
    return HSDerivation(std::move(gen), 1,
                        GroupLaw::make(LawTag::Additive, p).truncated(1));
}

bool HSDerivation::is_trivial() const {
    return gen_.nonzero_count() == 1 && gen_.at1(0) == RatFn::variable(p());
}

TruncSeries HSDerivation::eval_at_gen(const Poly& u) const {
    {
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto it = memo_->eval.find(u);
        if (it != memo_->eval.end()) return it->second;
    }
    TruncSeries acc(gen_.shape());
    for (int j = u.degree(); j >= 0; --j) {
        if (!acc.is_zero()) acc = acc * gen_;
        std::uint64_t c = u.coeff(static_cast<std::size_t>(j));
        if (c) acc = acc + TruncSeries::constant(gen_.shape(), RatFn::constant(p(), c));
    }
    std::lock_guard<std::mutex> lk(memo_->mu);
    return memo_->eval.emplace(u, std::move(acc)).first->second;
}

TruncSeries HSDerivation::inv_at_gen(const Poly& v) const {
    {
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto it = memo_->inv.find(v);
        if (it != memo_->inv.end()) return it->second;
    }
    TruncSeries r = eval_at_gen(v).inverted();
    std::lock_guard<std::mutex> lk(memo_->mu);
    return memo_->inv.emplace(v, std::move(r)).first->second;
}

TruncSeries HSDerivation::apply_series(const RatFn& r) const {
    check_same_prime(r.p(), p(), "apply_series");
    TruncSeries un = eval_at_gen(r.num());
    if (r.den().is_one()) return un;
    return un * inv_at_gen(r.den());
}

RatFn HSDerivation::apply(const RatFn& r, std::uint32_t n) const {
    require(n < precision(), "apply: component index " + std::to_string(n) +
                                 " is at or above the precision " +
                                 std::to_string(precision()));
    return apply_series(r).at1(n);
}

std::uint64_t closed_form_coefficient(LawTag tag, std::uint64_t p, std::uint32_t n,
                                      std::uint32_t i, std::uint32_t k) {
    require(is_prime_u64(p), "closed_form_coefficient: p must be prime");
    switch (tag) {
    case LawTag::Additive:
        if (n > k || i != k - n) return 0;
        return binom_mod_p(k, n, p);
    case LawTag::Multiplicative:
        if (n > k || i > k || i + n < k) return 0;
        return multinom_mod_p(k - n, k - i, i + n - k, p);
    default:
        fail("closed_form_coefficient: closed form known for the additive and "
             "multiplicative laws only");
    }
}

namespace {

// both inputs already of one kind (both truncated to the same level, or both
// formal, checked to `order`)
IterativityReport check_iterative_matched(const HSDerivation& d, const GroupLaw& law,
                                          std::uint32_t order) {
    const std::uint64_t p = d.p();
    const bool trunc = d.is_truncated();
    const std::uint32_t n = trunc ? d.precision() : order;
    SeriesShape biv = shape2(p, "X", "Y", n, n, trunc ? 0 : n);
    const TruncSeries& g = d.gen_image();

    // left side on t: column j is the image of g_j
    std::vector<TruncSeries> cols(n);
    const auto nl = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long j = 0; j < nl; ++j) {
        auto ju = static_cast<std::uint32_t>(j);
        if (!g.at1(ju).is_zero()) cols[ju] = d.apply_series(g.at1(ju));
    }
    TruncSeries lhs(biv);
    for (std::uint32_t j = 0; j < n; ++j) {
        if (g.at1(j).is_zero()) continue;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (cols[j].at1(i).is_zero()) continue;
            if (!lhs.under_cap({i, j, 0})) continue;
            lhs.set2(i, j, cols[j].at1(i));
        }
    }

    // right side on t: sum_e g_e F(X,Y)^e by Horner
    TruncSeries fxy = law.series_in(biv, 0, 1);
    TruncSeries rhs(biv);
    for (std::uint32_t e = n; e-- > 0;) {
        if (!rhs.is_zero()) rhs = rhs * fxy;
        if (!g.at1(e).is_zero()) rhs = rhs + TruncSeries::constant(biv, g.at1(e));
    }

    IterativityReport rep;
    if (auto w = lhs.first_difference(rhs)) {
        rep.pass = false;
        rep.witness = {{(*w)[0], (*w)[1]}};
        rep.detail = "iterativity fails on t at (i, j) = (" + std::to_string((*w)[0]) +
                     ", " + std::to_string((*w)[1]) + ")";
    }
    return rep;
}

} // namespace

IterativityReport check_f_iterative(const HSDerivation& d, const GroupLaw& law,
                                    std::uint32_t order) {
    check_same_prime(d.p(), law.p(), "check_f_iterative");
    if (d.is_truncated() || law.is_truncated()) {
        std::uint32_t m = d.is_truncated() ? d.level() : law.level();
        if (d.is_truncated() && law.is_truncated()) m = std::min(d.level(), law.level());
        GroupLaw lm = law.is_truncated() && law.level() == m ? law : law.truncated(m);
        if (d.is_truncated() && d.level() == m) return check_iterative_matched(d, lm, 0);
        return check_iterative_matched(truncate_derivation(d, m), lm, 0);
    }
    require(order >= 2, "check_f_iterative: order must be >= 2");
    require(order <= d.precision(),
            "check_f_iterative: order exceeds the derivation precision");
    return check_iterative_matched(d, law, order);
}

HSDerivation star_product(const HSDerivation& a, const HSDerivation& b) {
    check_same_prime(a.p(), b.p(), "star_product");
    require(a.is_truncated() == b.is_truncated(),
            "star_product: cannot mix formal and truncated derivations");
    if (a.is_truncated() && a.level() != b.level()) {
        std::uint32_t m = std::min(a.level(), b.level());
        return star_product(truncate_derivation(a, m), truncate_derivation(b, m));
    }
    const std::uint32_t n = std::min(a.precision(), b.precision());
    const TruncSeries& gb = b.gen_image();

    std::vector<TruncSeries> cols(n);
    const auto nl = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long j = 0; j < nl; ++j) {
        auto ju = static_cast<std::uint32_t>(j);
        if (!gb.at1(ju).is_zero()) cols[ju] = a.apply_series(gb.at1(ju));
    }

    TruncSeries h(shape1(a.p(), "X", n));
    for (std::uint32_t j = 0; j < n; ++j) {
        if (gb.at1(j).is_zero()) continue;
        for (std::uint32_t i = 0; i + j < n; ++i) {
            const RatFn& c = cols[j].at1(i);
            if (c.is_zero()) continue;
            RatFn& slot = h.data()[i + j];
            slot = slot.is_zero() ? c : slot + c;
        }
    }
    std::optional<GroupLaw> law;
    if (a.law() && b.law() && *a.law() == *b.law()) law = a.law();
    return HSDerivation(std::move(h), a.level(), std::move(law));
}

HSDerivation star_power(const HSDerivation& d, std::uint32_t m) {
    if (m == 0) {
        HSDerivation triv = HSDerivation::trivial(d.p(), d.precision());
        if (!d.is_truncated()) return triv;
        return HSDerivation::from_gen_image(triv.gen_image(), d.level());
    }
    HSDerivation acc = d;
    for (std::uint32_t i = 1; i < m; ++i) acc = star_product(d, acc);
    return acc;
}

HSDerivation pth_comp_power(const HSDerivation& d) {
    require(!d.is_truncated(),
            "pth_comp_power: the p-fold star power of a truncated derivation "
            "collapses below the truncation order; use a formal derivation");
    const std::uint64_t p = d.p();
    const std::uint32_t n = d.precision();
    const TruncSeries& g = d.gen_image();

    // pairwise commutativity of the components, decided on t
    std::vector<TruncSeries> cols(n);
    const auto nl = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long j = 0; j < nl; ++j) {
        auto ju = static_cast<std::uint32_t>(j);
        cols[ju] = d.apply_series(g.at1(ju));
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < i; ++j)
            if (!(cols[j].at1(i) == cols[i].at1(j)))
                fail("pth_comp_power: components " + std::to_string(i) + " and " +
                     std::to_string(j) + " do not commute on t");

    HSDerivation sp = star_power(d, static_cast<std::uint32_t>(p));
    const TruncSeries& sg = sp.gen_image();
    for (std::uint32_t e = 1; e < n; ++e)
        if (e % p != 0 && !sg.at1(e).is_zero())
            fail("pth_comp_power: p-fold star power has a term at index " +
                 std::to_string(e) + " not supported on p-th powers");

    const std::uint32_t np = (n + static_cast<std::uint32_t>(p) - 1) /
                             static_cast<std::uint32_t>(p);
    TruncSeries h(shape1(p, "X", np));
    for (std::uint32_t i = 0; i < np; ++i) {
        std::uint64_t e = static_cast<std::uint64_t>(i) * p;
        if (e < n && !sg.at1(static_cast<std::uint32_t>(e)).is_zero())
            h.set1(i, sg.at1(static_cast<std::uint32_t>(e)));
    }
    return HSDerivation(std::move(h), 0, d.law());
}

RatFn compose_terms(const HSDerivation& d, std::uint32_t i, std::uint32_t j,
                    const RatFn& r) {
    return d.apply(d.apply(r, j), i);
}

HSDerivation truncate_derivation(const HSDerivation& d, std::uint32_t l) {
    require(l >= 1, "truncate_derivation: level must be >= 1");
    if (d.is_truncated())
        require(l <= d.level(), "truncate_derivation: cannot extend a truncated derivation");
    const std::uint32_t q = pow_u32(d.p(), l);
    require(q <= d.precision(),
            "truncate_derivation: derivation precision is below p^l");
    TruncSeries g =
        d.gen_image().restricted(shape1(d.p(), d.gen_image().shape().vars[0], q));
    std::optional<GroupLaw> law;
    if (d.law()) law = d.law()->truncated(l);
    return HSDerivation(std::move(g), l, std::move(law));
}

HSDerivation inflate(const HSDerivation& d, std::uint32_t j) {
    if (j == 0) return d;
    const std::uint32_t f = pow_u32(d.p(), j);
    std::uint64_t np = static_cast<std::uint64_t>(d.precision()) * f;
    require(np <= (1u << 26), "inflate: resulting precision too large");
    TruncSeries g = d.gen_image().stretched(f, static_cast<std::uint32_t>(np));
    return HSDerivation(std::move(g), d.is_truncated() ? d.level() + j : 0,
                        std::nullopt);
}

HSDerivation deflate(const HSDerivation& d, std::uint32_t j) {
    if (j == 0) return d;
    if (d.is_truncated())
        require(j < d.level(), "deflate: would remove the truncation entirely");
    const std::uint32_t f = pow_u32(d.p(), j);
    const TruncSeries& g = d.gen_image();
    for (std::uint32_t e = 1; e < d.precision(); ++e)
        if (!g.at1(e).is_zero() && e % f != 0)
            fail("deflate: generator image has a term at index " + std::to_string(e) +
                 " not divisible by p^" + std::to_string(j));
    const std::uint32_t np = (d.precision() + f - 1) / f;
    TruncSeries h(shape1(d.p(), g.shape().vars[0], np));
    for (std::uint32_t i = 0; i < np; ++i) {
        std::uint64_t e = static_cast<std::uint64_t>(i) * f;
        if (e < d.precision() && !g.at1(static_cast<std::uint32_t>(e)).is_zero())
            h.set1(i, g.at1(static_cast<std::uint32_t>(e)));
    }
    return HSDerivation(std::move(h), d.is_truncated() ? d.level() - j : 0,
                        std::nullopt);
}

HSDerivation pullback_along_hom(const HSDerivation& d, const GroupLawHom& hom) {
    check_same_prime(d.p(), hom.alpha.p(), "pullback_along_hom");
    require(hom.alpha.nvars() == 1, "pullback_along_hom: alpha must be univariate");
    require(hom.alpha.constant_term().is_zero(), "pullback_along_hom: alpha(0) != 0");
    const TruncSeries& g = d.gen_image();
    SeriesShape sh = shape1(d.p(), g.shape().vars[0], d.precision());
    TruncSeries alpha(sh);
    for (std::uint32_t e = 0; e < std::min(hom.alpha.order(0), d.precision()); ++e)
        if (!hom.alpha.at1(e).is_zero()) alpha.set1(e, hom.alpha.at1(e));
    TruncSeries h = compose(g, {alpha});
    std::optional<GroupLaw> law;
    if (!d.is_truncated() && !hom.source.is_truncated())
        law = hom.source;
    else if (d.is_truncated() &&
             (!hom.source.is_truncated() || hom.source.level() >= d.level()))
        law = hom.source.truncated(d.level());
    return HSDerivation(std::move(h), d.level(), std::move(law));
}

} // namespace hsd
