#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsd/ratfn.hpp"

namespace hsd {

// Shape of a truncated multivariate series: 1..3 named variables, a
// per-variable exponent bound (exponent < order kept), and an optional
// total-degree cap. cap > 0 is the formal-precision regime (work mod total
// degree cap, where substitution of zero-constant-term series is a ring
// homomorphism); cap == 0 with p-power orders is the exact quotient ring
// k[v]/(v^q) regime used for truncated variables. Univariate shapes always
// use cap == 0 (prefix truncation).
struct SeriesShape {
    std::uint64_t p = 0;
    std::vector<std::string> vars;
    std::vector<std::uint32_t> orders;
    std::uint32_t cap = 0;

    std::size_t nvars() const { return vars.size(); }
    std::size_t flat_size() const;
    bool operator==(const SeriesShape& o) const = default;
};

SeriesShape shape1(std::uint64_t p, std::string v, std::uint32_t order);
SeriesShape shape2(std::uint64_t p, std::string v0, std::string v1, std::uint32_t order0,
                   std::uint32_t order1, std::uint32_t cap);
SeriesShape shape3(std::uint64_t p, std::string v0, std::string v1, std::string v2,
                   std::uint32_t order, std::uint32_t cap);

// Dense truncated series with RatFn coefficients over F_p(t). Exponent tuples
// are stored row-major with the first variable outermost, so flat order is
// lexicographic order on tuples.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(SeriesShape shape);
    TruncSeries(SeriesShape shape, std::vector<RatFn> coeffs);

    static TruncSeries constant(SeriesShape shape, const RatFn& value);
    // the k-th variable to the given power
    static TruncSeries monomial(SeriesShape shape, std::size_t k, std::uint32_t e);
    static TruncSeries from_coeffs(std::uint64_t p, std::string var,
                                   std::vector<RatFn> coeffs); // univariate

    const SeriesShape& shape() const { return shape_; }
    std::uint64_t p() const { return shape_.p; }
    std::size_t nvars() const { return shape_.nvars(); }
    std::uint32_t order(std::size_t k) const { return shape_.orders[k]; }
    std::uint32_t cap() const { return shape_.cap; }
    std::size_t flat_size() const { return c_.size(); }

    const std::vector<RatFn>& data() const { return c_; }
    std::vector<RatFn>& data() { return c_; }

    std::size_t encode(const std::array<std::uint32_t, 3>& e) const;
    std::array<std::uint32_t, 3> decode(std::size_t idx) const;
    // true if the tuple is under the cap (per-variable bounds are implied by
    // encode/decode)
    bool under_cap(const std::array<std::uint32_t, 3>& e) const;

    const RatFn& at(const std::array<std::uint32_t, 3>& e) const;
    const RatFn& at1(std::uint32_t e) const { return at({e, 0, 0}); }
    const RatFn& at2(std::uint32_t e0, std::uint32_t e1) const { return at({e0, e1, 0}); }
    void set(const std::array<std::uint32_t, 3>& e, RatFn v);
    void set1(std::uint32_t e, RatFn v) { set({e, 0, 0}, std::move(v)); }
    void set2(std::uint32_t e0, std::uint32_t e1, RatFn v) { set({e0, e1, 0}, std::move(v)); }

    bool is_zero() const;
    std::size_t nonzero_count() const;
    RatFn constant_term() const { return c_.empty() ? RatFn() : c_[0]; }

    TruncSeries operator-() const;
    TruncSeries scaled(const RatFn& s) const;

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.shape_ == b.shape_ && a.c_ == b.c_;
    }

    // smallest (lex) exponent tuple where the two differ; shapes must match
    std::optional<std::array<std::uint32_t, 3>> first_difference(const TruncSeries& o) const;

    // restriction to a smaller shape over the same variables (prefix copy)
    TruncSeries restricted(const SeriesShape& target) const;
    // place this series into a larger variable set; positions[k] = index of my
    // k-th variable inside the target shape
    TruncSeries embedded(const SeriesShape& target, const std::vector<std::size_t>& positions) const;
    // univariate exponent stretch X -> X^k into the given order
    TruncSeries stretched(std::uint32_t k, std::uint32_t new_order) const;

    // multiplicative inverse of a univariate series with unit constant term
    TruncSeries inverted() const;

private:
    void check_shape_match(const TruncSeries& o, const char* where) const;

    SeriesShape shape_;
    std::vector<std::size_t> strides_;
    std::vector<RatFn> c_;
};

// Substitute subs[k] (all of one common target shape) for the k-th variable of
// f. Every substituted series must have zero constant term; substitution into
// a multivariate quotient-ring shape (cap == 0) additionally checks the
// nilpotency s^order == 0 that makes evaluation a ring homomorphism.
TruncSeries compose(const TruncSeries& f, const std::vector<TruncSeries>& subs);

// Horner evaluation of a polynomial with series coefficients at a series point.
TruncSeries eval_poly(const std::vector<TruncSeries>& coeffs, const TruncSeries& s);

// Unique series root of P(S) = 0 with S(0) = r0, by Newton iteration. Requires
// P(r0) = 0 and P'(r0) a unit at order zero (simple root); iteration count is
// capped by the HSD_STEP_BUDGET environment variable (default 64).
TruncSeries poly_root(const std::vector<TruncSeries>& coeffs, const RatFn& r0);

} // namespace hsd
