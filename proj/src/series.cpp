#include "hsd/series.hpp"

#include <cstdlib>

#include "hsd/kernels.hpp"

namespace hsd {

std::size_t SeriesShape::flat_size() const {
    std::size_t n = 1;
    for (auto o : orders) n *= o;
    return n;
}

SeriesShape shape1(std::uint64_t p, std::string v, std::uint32_t order) {
    return SeriesShape{p, {std::move(v)}, {order}, 0};
}

SeriesShape shape2(std::uint64_t p, std::string v0, std::string v1, std::uint32_t order0,
                   std::uint32_t order1, std::uint32_t cap) {
    return SeriesShape{p, {std::move(v0), std::move(v1)}, {order0, order1}, cap};
}

SeriesShape shape3(std::uint64_t p, std::string v0, std::string v1, std::string v2,
                   std::uint32_t order, std::uint32_t cap) {
    return SeriesShape{p, {std::move(v0), std::move(v1), std::move(v2)},
                       {order, order, order}, cap};
}

TruncSeries::TruncSeries(SeriesShape shape) : shape_(std::move(shape)) {
    require(shape_.nvars() >= 1 && shape_.nvars() <= 3,
            "TruncSeries: 1..3 variables supported");
    require(shape_.orders.size() == shape_.nvars(), "TruncSeries: shape arity mismatch");
    for (auto o : shape_.orders) require(o >= 1, "TruncSeries: orders must be >= 1");
    strides_.assign(shape_.nvars(), 1);
    for (std::size_t k = shape_.nvars(); k-- > 1;)
        strides_[k - 1] = strides_[k] * shape_.orders[k];
    c_.assign(shape_.flat_size(), RatFn(shape_.p));
}

TruncSeries::TruncSeries(SeriesShape shape, std::vector<RatFn> coeffs)
    : TruncSeries(std::move(shape)) {
    require(coeffs.size() <= c_.size(), "TruncSeries: too many coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        check_same_prime(coeffs[i].p(), shape_.p, "TruncSeries");
        c_[i] = std::move(coeffs[i]);
    }
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero() && !under_cap(decode(i))) fail("TruncSeries: coefficient above cap");
}

TruncSeries TruncSeries::constant(SeriesShape shape, const RatFn& value) {
    TruncSeries r(std::move(shape));
    check_same_prime(value.p(), r.p(), "TruncSeries::constant");
    r.c_[0] = value;
    return r;
}

TruncSeries TruncSeries::monomial(SeriesShape shape, std::size_t k, std::uint32_t e) {
    TruncSeries r(std::move(shape));
    std::array<std::uint32_t, 3> idx{0, 0, 0};
    idx[k] = e;
    r.set(idx, RatFn::constant(r.p(), 1));
    return r;
}

TruncSeries TruncSeries::from_coeffs(std::uint64_t p, std::string var,
                                     std::vector<RatFn> coeffs) {
    auto n = static_cast<std::uint32_t>(coeffs.size());
    require(n >= 1, "TruncSeries::from_coeffs: empty");
    return TruncSeries(shape1(p, std::move(var), n), std::move(coeffs));
}

std::size_t TruncSeries::encode(const std::array<std::uint32_t, 3>& e) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < shape_.nvars(); ++k) {
        require(e[k] < shape_.orders[k], "TruncSeries: exponent out of range");
        idx += strides_[k] * e[k];
    }
    return idx;
}

std::array<std::uint32_t, 3> TruncSeries::decode(std::size_t idx) const {
    std::array<std::uint32_t, 3> e{0, 0, 0};
    for (std::size_t k = 0; k < shape_.nvars(); ++k) {
        e[k] = static_cast<std::uint32_t>(idx / strides_[k]);
        idx %= strides_[k];
    }
    return e;
}

bool TruncSeries::under_cap(const std::array<std::uint32_t, 3>& e) const {
    if (!shape_.cap) return true;
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < shape_.nvars(); ++k) total += e[k];
    return total < shape_.cap;
}

const RatFn& TruncSeries::at(const std::array<std::uint32_t, 3>& e) const {
    return c_[encode(e)];
}

void TruncSeries::set(const std::array<std::uint32_t, 3>& e, RatFn v) {
    check_same_prime(v.p(), shape_.p, "TruncSeries::set");
    require(under_cap(e) || v.is_zero(), "TruncSeries::set: exponent above cap");
    c_[encode(e)] = std::move(v);
}

bool TruncSeries::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

std::size_t TruncSeries::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& x : c_)
        if (!x.is_zero()) ++n;
    return n;
}

void TruncSeries::check_shape_match(const TruncSeries& o, const char* where) const {
    if (!(shape_ == o.shape_)) fail(std::string(where) + ": shape mismatch");
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& x : r.c_)
        if (!x.is_zero()) x = -x;
    return r;
}

TruncSeries TruncSeries::scaled(const RatFn& s) const {
    check_same_prime(s.p(), p(), "TruncSeries::scaled");
    TruncSeries r(shape_);
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) r.c_[i] = c_[i] * s;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check_shape_match(b, "TruncSeries+");
    TruncSeries r(a.shape_);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            r.c_[i] = b.c_[i];
        else if (b.c_[i].is_zero())
            r.c_[i] = a.c_[i];
        else
            r.c_[i] = a.c_[i] + b.c_[i];
    }
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.check_shape_match(b, "TruncSeries-");
    TruncSeries r(a.shape_);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (b.c_[i].is_zero())
            r.c_[i] = a.c_[i];
        else if (a.c_[i].is_zero())
            r.c_[i] = -b.c_[i];
        else
            r.c_[i] = a.c_[i] - b.c_[i];
    }
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_shape_match(b, "TruncSeries*");
    std::size_t work = a.nonzero_count() * b.nonzero_count();
    if (work >= kernels::parallel_threshold) return kernels::mul_parallel(a, b);
    return kernels::mul_serial(a, b);
}

std::optional<std::array<std::uint32_t, 3>> TruncSeries::first_difference(
    const TruncSeries& o) const {
    check_shape_match(o, "TruncSeries::first_difference");
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return decode(i);
    return std::nullopt;
}

TruncSeries TruncSeries::restricted(const SeriesShape& target) const {
    require(target.p == shape_.p && target.vars == shape_.vars,
            "TruncSeries::restricted: variable mismatch");
    TruncSeries r(target);
    for (std::size_t i = 0; i < r.flat_size(); ++i) {
        auto e = r.decode(i);
        bool inside = r.under_cap(e);
        for (std::size_t k = 0; inside && k < shape_.nvars(); ++k)
            if (e[k] >= shape_.orders[k]) inside = false;
        if (inside && !under_cap(e)) inside = false;
        if (inside) r.c_[i] = at(e);
    }
    return r;
}

TruncSeries TruncSeries::embedded(const SeriesShape& target,
                                  const std::vector<std::size_t>& positions) const {
    require(positions.size() == shape_.nvars(), "TruncSeries::embedded: arity mismatch");
    TruncSeries r(target);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        auto e = decode(i);
        std::array<std::uint32_t, 3> te{0, 0, 0};
        for (std::size_t k = 0; k < shape_.nvars(); ++k) {
            require(positions[k] < target.nvars(), "TruncSeries::embedded: bad position");
            te[positions[k]] = e[k];
            require(e[k] < target.orders[positions[k]],
                    "TruncSeries::embedded: exponent exceeds target order");
        }
        require(r.under_cap(te), "TruncSeries::embedded: exponent above target cap");
        r.c_[r.encode(te)] = c_[i];
    }
    return r;
}

TruncSeries TruncSeries::stretched(std::uint32_t k, std::uint32_t new_order) const {
    require(nvars() == 1, "TruncSeries::stretched: univariate only");
    require(k >= 1, "TruncSeries::stretched: stretch factor must be >= 1");
    TruncSeries r(shape1(p(), shape_.vars[0], new_order));
    for (std::uint32_t e = 0; e < order(0); ++e) {
        if (at1(e).is_zero()) continue;
        std::uint64_t ne = static_cast<std::uint64_t>(e) * k;
        if (ne >= new_order) continue;
        r.set1(static_cast<std::uint32_t>(ne), at1(e));
    }
    return r;
}

TruncSeries TruncSeries::inverted() const {
    require(nvars() == 1, "TruncSeries::inverted: univariate only");
    const RatFn c0 = constant_term();
    require(!c0.is_zero(), "TruncSeries::inverted: constant term is not a unit");
    const RatFn c0inv = c0.inverse();
    TruncSeries r(shape_);
    r.set1(0, c0inv);
    for (std::uint32_t n = 1; n < order(0); ++n) {
        RatFn acc(p());
        for (std::uint32_t j = 1; j <= n; ++j) {
            if (at1(j).is_zero() || r.at1(n - j).is_zero()) continue;
            acc = acc + at1(j) * r.at1(n - j);
        }
        if (!acc.is_zero()) r.set1(n, -(c0inv * acc));
    }
    return r;
}

namespace {

// substitution must be a homomorphism; see header comment
void check_substitutable(const TruncSeries& f, const TruncSeries& s, std::size_t k) {
    require(s.constant_term().is_zero(),
            "compose: substituted series must have zero constant term");
    if (f.nvars() >= 2 && f.cap() == 0) {
        // quotient-ring regime: verify s^order == 0 in the target
        TruncSeries pw = TruncSeries::constant(s.shape(), RatFn::constant(s.p(), 1));
        std::uint32_t q = f.order(k);
        TruncSeries base = s;
        std::uint32_t e = q;
        while (e) {
            if (e & 1) pw = pw * base;
            e >>= 1;
            if (e) base = base * base;
        }
        require(pw.is_zero(), "compose: substituted series is not nilpotent at the "
                              "source truncation order");
    }
}

// Horner along the first variable of f; rest[e0] handled recursively.
TruncSeries compose_rec(const TruncSeries& f, const std::vector<TruncSeries>& subs,
                        std::size_t var_base) {
    const TruncSeries& s0 = subs[var_base];
    const SeriesShape& target = s0.shape();
    if (f.nvars() == 1) {
        TruncSeries acc(target);
        for (std::uint32_t e = f.order(0); e-- > 0;) {
            if (!acc.is_zero()) acc = acc * s0;
            const RatFn& c = f.at1(e);
            if (!c.is_zero()) acc = acc + TruncSeries::constant(target, c);
        }
        return acc;
    }
    // split off the first variable: rows are series in the remaining vars
    SeriesShape row_shape = f.shape();
    row_shape.vars.erase(row_shape.vars.begin());
    row_shape.orders.erase(row_shape.orders.begin());
    TruncSeries acc(target);
    for (std::uint32_t e0 = f.order(0); e0-- > 0;) {
        if (!acc.is_zero()) acc = acc * s0;
        TruncSeries row(row_shape);
        bool any = false;
        for (std::size_t i = 0; i < row.flat_size(); ++i) {
            auto re = row.decode(i);
            std::array<std::uint32_t, 3> fe{e0, re[0], re[1]};
            const RatFn& c = f.at(fe);
            if (!c.is_zero()) {
                row.data()[i] = c;
                any = true;
            }
        }
        if (any) acc = acc + compose_rec(row, subs, var_base + 1);
    }
    return acc;
}

std::uint64_t env_step_budget() {
    if (const char* s = std::getenv("HSD_STEP_BUDGET")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
        fail("HSD_STEP_BUDGET: not a positive integer");
    }
    return 64;
}

} // namespace

TruncSeries compose(const TruncSeries& f, const std::vector<TruncSeries>& subs) {
    require(subs.size() == f.nvars(), "compose: one substitution per variable required");
    for (std::size_t k = 1; k < subs.size(); ++k)
        require(subs[k].shape() == subs[0].shape(), "compose: substitution shape mismatch");
    check_same_prime(f.p(), subs[0].p(), "compose");
    for (std::size_t k = 0; k < subs.size(); ++k) check_substitutable(f, subs[k], k);
    return compose_rec(f, subs, 0);
}

TruncSeries eval_poly(const std::vector<TruncSeries>& coeffs, const TruncSeries& s) {
    require(!coeffs.empty(), "eval_poly: empty polynomial");
    TruncSeries acc(s.shape());
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        if (!acc.is_zero()) acc = acc * s;
        if (!coeffs[j].is_zero()) acc = acc + coeffs[j];
    }
    return acc;
}

TruncSeries poly_root(const std::vector<TruncSeries>& coeffs, const RatFn& r0) {
    require(coeffs.size() >= 2, "poly_root: polynomial must be nonconstant");
    const SeriesShape& shape = coeffs[0].shape();
    require(shape.nvars() == 1, "poly_root: univariate series only");
    std::vector<TruncSeries> deriv;
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        deriv.push_back(coeffs[j].scaled(RatFn::constant(shape.p, j % shape.p)));

    TruncSeries s = TruncSeries::constant(shape, r0);
    TruncSeries val = eval_poly(coeffs, s);
    require(val.constant_term().is_zero(), "poly_root: start value is not a root at order 0");
    require(!eval_poly(deriv, s).constant_term().is_zero(),
            "poly_root: multiple root at order 0 (inseparable input)");

    std::uint64_t budget = env_step_budget();
    for (std::uint64_t step = 0; !val.is_zero(); ++step) {
        require(step < budget, "poly_root: step budget exhausted before convergence");
        TruncSeries d = eval_poly(deriv, s);
        s = s - val * d.inverted();
        val = eval_poly(coeffs, s);
    }
    return s;
}

} // namespace hsd
