#pragma once

#include <optional>
#include <string>

#include "hsd/series.hpp"

namespace hsd {

enum class LawTag { Additive, Multiplicative, Mixed, Custom };

// One-dimensional (truncated) group law over F_p with polynomial body
// F(X,Y) = X + Y + sum c_ab X^a Y^b. The three built-in families are
// F_c = X + Y + cXY with c = 0 (additive), c = 1 (multiplicative), general c.
// A truncated law at level m lives in k[X,Y]/(X^q, Y^q), q = p^m.
class GroupLaw {
public:
    static GroupLaw make(LawTag tag, std::uint64_t p, std::uint64_t c = 0);
    // table[a * width + b] = coefficient of X^a Y^b; unit axioms validated
    static GroupLaw custom(std::uint64_t p, std::uint32_t width,
                           std::vector<std::uint64_t> table);

    std::uint64_t p() const { return p_; }
    LawTag tag() const { return tag_; }
    std::uint64_t mix_coeff() const { return c_; }
    bool is_truncated() const { return level_ > 0; }
    std::uint32_t level() const { return level_; } // m, 0 when formal
    std::uint32_t q() const;                       // p^m, truncated only

    std::uint64_t coeff(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t width() const { return width_; }

    // truncation F[m]: drop exponents >= p^m; truncating a truncated law
    // requires m <= level
    GroupLaw truncated(std::uint32_t m) const;
    // identity over F_p, kept so the plumbing matches the general-field theory
    GroupLaw frobenius_twist(std::uint32_t j) const;

    // the law body as a bivariate series: formal laws mod total degree
    // `order`, truncated laws in the exact rectangle q x q (order ignored)
    TruncSeries series(std::uint32_t order) const;
    // same body embedded into an arbitrary shape at variable positions (ax, ay)
    TruncSeries series_in(const SeriesShape& shape, std::size_t ax, std::size_t ay) const;

    std::string describe() const;

    friend bool operator==(const GroupLaw& a, const GroupLaw& b) = default;

private:
    GroupLaw() = default;

    std::uint64_t p_ = 0;
    LawTag tag_ = LawTag::Custom;
    std::uint64_t c_ = 0;
    std::uint32_t level_ = 0; // 0 = formal
    std::uint32_t width_ = 0;
    std::vector<std::uint64_t> table_;
};

struct LawCheckReport {
    bool pass = true;
    std::string axiom; // "left-unit", "right-unit", "associativity"
    std::optional<std::array<std::uint32_t, 3>> witness;
    std::string detail;
};

// Unit axioms and associativity, exactly in the truncated rectangle or mod
// total degree `order` for formal laws.
LawCheckReport check_group_law(const GroupLaw& law, std::uint32_t order);

GroupLaw truncate_law(const GroupLaw& law, std::uint32_t m);

// [k]_F(X): [1] = X, [k+1] = F(X, [k](X)); univariate to `order`
TruncSeries mult_by_m(const GroupLaw& law, std::uint32_t k, std::uint32_t order);

struct VerschiebungData {
    TruncSeries V; // [p]_F(X) = V(X^p)
    TruncSeries W; // = V over F_p (inverse-Frobenius twist is the identity)
};

// extraction of V (and W) from the p-fold sum; errors if [p]_F is not
// supported on p-th powers
VerschiebungData verschiebung(const GroupLaw& law, std::uint32_t order);

// iota with F(X, iota(X)) = 0, univariate to `order`
TruncSeries formal_inverse(const GroupLaw& law, std::uint32_t order);

struct GroupLawHom {
    GroupLaw source;
    GroupLaw target;
    TruncSeries alpha; // univariate, zero constant term
};

struct HomCheckReport {
    bool pass = true;
    std::optional<std::array<std::uint32_t, 3>> witness;
    std::string detail;
};

// alpha(F(X,Y)) == G(alpha(X), alpha(Y)), mod total degree `order` for formal
// laws or exactly in the source rectangle for truncated ones. Substituting
// into a truncated target additionally needs alpha^(target q) = 0; that
// nilpotency is checked and reported as a failure, not an error.
HomCheckReport check_hom(const GroupLawHom& hom, std::uint32_t order);

} // namespace hsd
