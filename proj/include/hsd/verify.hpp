#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hsd {

// Batch verification: named invariant suites over (p, m, order) grids.
// Cases may run in parallel; the report order is fixed by construction, so
// identical configs give byte-identical default output.

struct SuiteConfig {
    std::vector<std::string> suites;  // empty selects every registered suite
    std::vector<std::uint64_t> ps;    // empty selects each suite's default grid
    std::vector<std::uint32_t> ms;    // empty selects each suite's default grid
    std::uint32_t order = 0;          // 0 selects each suite's default order
    std::size_t samples = 50;
    std::uint64_t seed = 1;
};

struct SuiteCase {
    std::string suite;
    std::string params;   // parameter tuple, e.g. "p=2 N=64 law=additive"
    bool pass = false;
    std::string detail;   // witness text; set on failure, sometimes on pass
    double seconds = 0.0;
};

struct SuiteReport {
    bool pass = false;
    std::vector<SuiteCase> cases;
};

// registered suite names, in report order
const std::vector<std::string>& suite_registry();

// Runs the selected suites. Unknown suite names error before anything runs.
SuiteReport run_suite(const SuiteConfig& cfg);

// Text report: one line per case, grouped by suite, plus a result line.
// Timings are opt-in so the default output is reproducible.
std::string render_report(const SuiteReport& rep, bool timings);

} // namespace hsd
