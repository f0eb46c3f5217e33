// Acceptance gate: one pass/fail line per top-level guarantee, each backed
// by the corresponding invariant suite run at its stated parameters. Exits
// nonzero when any line fails; details for a failing line are replayable
// with the CLI using the same suite, primes, order and samples.

#include "hsd/verify.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Criterion {
    int number;
    std::string description;
    hsd::SuiteConfig cfg;
};

hsd::SuiteConfig make_cfg(std::vector<std::string> suites,
                          std::vector<std::uint64_t> ps,
                          std::vector<std::uint32_t> ms = {},
                          std::uint32_t order = 0) {
    hsd::SuiteConfig cfg;
    cfg.suites = std::move(suites);
    cfg.ps = std::move(ps);
    cfg.ms = std::move(ms);
    cfg.order = order;
    return cfg;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1,
         "group-law axioms hold exactly for the additive, multiplicative and "
         "every mixed law, p in {2,3,5}, N=64",
         make_cfg({"laws"}, {2, 3, 5}, {}, 64)},
        {2,
         "canonical derivations are iterative for every built-in law at N=32 "
         "and a perturbed generator image fails with a witness",
         make_cfg({"canonical"}, {2, 3, 5}, {}, 32)},
        {3,
         "component values on t^k match the closed-form coefficients for "
         "k,n <= 12, p in {2,3,5}",
         make_cfg({"closedform"}, {2, 3, 5})},
        {4,
         "the p-fold star power is supported on p-th-power exponents and "
         "matches the compositional p-th power, N=p^3",
         make_cfg({"epe"}, {2, 3, 5})},
        {5,
         "m-fold star powers are evaluation at [m], and the compositional "
         "p-th power is evaluation at W",
         make_cfg({"composing", "pthpower"}, {2, 3})},
        {6,
         "component compositions land in the span of lower components on 50 "
         "seeded samples, and the multiplicative rule is exact for i+j < p^2",
         make_cfg({"approx", "multiter"}, {2, 3})},
        {7,
         "the constants field has degree p^m for canonical truncations, "
         "(p,m) in {2,3}x{1,2}",
         make_cfg({"degree"}, {2, 3}, {1, 2})},
        {8,
         "both canonical-element finders satisfy their defining equations on "
         "canonical and pulled-back inputs, (p,m) in {2,3}x{1,2}",
         make_cfg({"elements"}, {2, 3}, {1, 2})},
        {9,
         "truncated derivations integrate to iterative expansions whose "
         "truncation and per-index audit match the input exactly, N=32, "
         "including the degenerate first-component-zero branch",
         make_cfg({"roundtrip-additive", "roundtrip-multiplicative"}, {2, 3},
                  {1, 2}, 32)},
        {10,
         "integration is honestly non-unique: two admissible elements give "
         "expansions that first differ at coefficient index 2 (p=2)",
         make_cfg({"nonuniq"}, {2})},
    };

    bool all_pass = true;
    for (const auto& c : criteria) {
        hsd::SuiteReport rep;
        std::string error;
        try {
            rep = hsd::run_suite(c.cfg);
        } catch (const std::exception& e) {
            error = e.what();
        }
        bool pass = error.empty() && rep.pass;
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << ": "
                  << c.description << "\n";
        if (!error.empty()) std::cout << "     error: " << error << "\n";
        if (error.empty() && !pass)
            for (const auto& cs : rep.cases)
                if (!cs.pass)
                    std::cout << "     " << cs.suite << " " << cs.params << ": "
                              << cs.detail << "\n";
    }
    std::cout << (all_pass ? "acceptance: all criteria pass"
                           : "acceptance: FAILURES above")
              << "\n";
    return all_pass ? 0 : 1;
}
