#pragma once

#include "hsd/structure.hpp"

namespace hsd {

// Minimal polynomial of t over the subfield F_p(x): for x = u/v in lowest
// terms, P(T) = u(T) - x v(T), returned as ascending coefficients in T; each
// coefficient is a rational function in the abstract generator, stored in the
// ordinary variable slot. P(t) = 0 exactly, and P'(t) != 0 because x is a
// p-basis. Errors when x is constant or a p-th power.
std::vector<RatFn> minimal_polynomial_over(const RatFn& x);

// The unique derivation D with D_X(x) = F(x, X) to the requested order:
// maps the coefficients of the minimal polynomial of t through D and finds
// D_X(t) as the series root with constant term t by Newton iteration. The
// output is checked against the law's iterativity identity before being
// returned; a failure there is an error.
HSDerivation extend_canonical(const RatFn& x, const GroupLaw& law, std::uint32_t order);

struct AuditLine {
    std::uint32_t index = 0;
    bool match = false;
    std::string text;
};

// per-index comparison of the output components with the input truncation,
// decided on t (components are determined by their value there)
struct AuditReport {
    bool pass = true;
    std::vector<AuditLine> lines;
};

struct IntegrationResult {
    HSDerivation output;                         // formal, precision = order
    std::optional<CanonicalElement> canonical_x; // absent on trivial inputs
    std::uint32_t deflated_pow = 0;              // j > 0 when d_1 = 0 forced a reindex by p^j
    std::vector<RatFn> minimal_poly;             // empty when no extension ran
    AuditReport audit;                           // agreement with the input at every index < p^m
    IterativityReport iterativity;               // output against the formal law at `order`
};

// Expand a truncated derivation to a formal one of precision `order`.
// The input must pass the truncated iterativity check (error otherwise).
// Additive path: build a canonical element (or take x_override, which is
// verified against the canonical equations first), extend it, audit. When
// d_1 = 0 the support lies on p^j-th powers; the input is deflated, expanded
// recursively, and reindexed back. A failed audit is returned in the report,
// not thrown, so callers can surface it; output iterativity is asserted.
// The output can be carried to any higher precision by calling
// extend_canonical again with the recorded canonical element.
IntegrationResult integrate_additive(const HSDerivation& d, std::uint32_t order,
                                     const std::optional<RatFn>& x_override = {});

// Multiplicative path: same scheme through solve_dx_eq_x and the y-search.
// Inputs with d_1 = 0 are rejected: the reindexing argument is established
// for the additive law only, and guessing is not integration.
IntegrationResult integrate_multiplicative(const HSDerivation& d, std::uint32_t order);

} // namespace hsd
