// Batch front end: invariant suites, law and series tables, canonical
// elements, and file-driven integration.
//
// Exit codes: 0 all checks pass, 1 mathematical failure or invalid input,
// 2 audit failure on integrate, 64 usage.

#include "CLI11.hpp"

#include "hsd/derivation.hpp"
#include "hsd/error.hpp"
#include "hsd/group_law.hpp"
#include "hsd/integrate.hpp"
#include "hsd/json_io.hpp"
#include "hsd/structure.hpp"
#include "hsd/text.hpp"
#include "hsd/verify.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hsd;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitAudit = 2;
constexpr int kExitUsage = 64;

struct GlobalOpts {
    std::vector<std::uint64_t> ps;
    std::vector<std::uint32_t> ms;
    std::uint32_t order = 0;
    std::uint64_t seed = 1;
    bool json = false;
};

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

// single-value accessors for subcommands that take one p or one m
std::optional<std::uint64_t> single_p(const GlobalOpts& g, std::string& err) {
    if (g.ps.empty()) {
        err = "--p is required here";
        return std::nullopt;
    }
    if (g.ps.size() > 1) {
        err = "provide a single --p here";
        return std::nullopt;
    }
    return g.ps[0];
}

std::optional<std::uint32_t> single_m(const GlobalOpts& g, std::string& err) {
    if (g.ms.empty()) return 0; // 0 = formal
    if (g.ms.size() > 1) {
        err = "provide a single --m here";
        return std::nullopt;
    }
    return g.ms[0];
}

GroupLaw law_by_name(const std::string& name, std::uint64_t p, std::uint64_t c) {
    if (name == "additive") return GroupLaw::make(LawTag::Additive, p);
    if (name == "multiplicative") return GroupLaw::make(LawTag::Multiplicative, p);
    if (name == "mixed") return GroupLaw::make(LawTag::Mixed, p, c);
    fail("unknown law name: " + name + " (expected additive, multiplicative or mixed)");
}

std::string coeff_text(const RatFn& c) {
    std::string s = to_string(c);
    bool composite = s.find('+') != std::string::npos ||
                     s.find('-') != std::string::npos || s.find('/') != std::string::npos;
    return composite ? "(" + s + ")" : s;
}

// one-line rendering of a univariate series
std::string series_inline(const TruncSeries& s) {
    require(s.nvars() == 1, "series_inline: univariate series expected");
    const std::string& v = s.shape().vars[0];
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t e = 0; e < s.order(0); ++e) {
        const RatFn& c = s.at1(e);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string ct = coeff_text(c);
        if (e == 0) {
            os << ct;
            continue;
        }
        if (ct != "1") os << ct << "*";
        os << v;
        if (e > 1) os << "^" << e;
    }
    if (first) os << "0";
    return os.str();
}

void print_coeff_table(std::ostream& out, const TruncSeries& s) {
    const std::string& v = s.shape().vars[0];
    for (std::uint32_t e = 0; e < s.order(0); ++e)
        out << "  " << v << "^" << e << "\t" << to_string(s.at1(e)) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    require(out.good(), "cannot open output file: " + path);
    out << j.dump(2) << "\n";
    require(out.good(), "failed writing output file: " + path);
}

int cmd_verify(const GlobalOpts& g, const std::vector<std::string>& suites,
               std::size_t samples, bool timings) {
    const auto& registry = suite_registry();
    for (const auto& s : suites)
        if (std::find(registry.begin(), registry.end(), s) == registry.end())
            return usage_error("unknown suite: " + s);
    SuiteConfig cfg;
    cfg.suites = suites;
    cfg.ps = g.ps;
    cfg.ms = g.ms;
    cfg.order = g.order;
    cfg.samples = samples;
    cfg.seed = g.seed;
    auto rep = run_suite(cfg);
    if (g.json)
        std::cout << report_to_json(rep, timings).dump(2) << "\n";
    else
        std::cout << render_report(rep, timings);
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_laws(const GlobalOpts& g, const std::string& law_name_opt, std::uint64_t c,
             bool c_given) {
    std::string err;
    auto m = single_m(g, err);
    if (!m) return usage_error(err);
    if (g.ps.empty()) return usage_error("--p is required here");
    std::uint32_t order = g.order ? g.order : 8;

    bool all_pass = true;
    Json jout = Json::array();
    for (auto p : g.ps) {
        std::vector<GroupLaw> laws;
        if (!law_name_opt.empty()) {
            laws.push_back(law_by_name(law_name_opt, p, c));
        } else {
            laws.push_back(GroupLaw::make(LawTag::Additive, p));
            laws.push_back(GroupLaw::make(LawTag::Multiplicative, p));
            if (c_given || p > 2)
                laws.push_back(GroupLaw::make(LawTag::Mixed, p, c_given ? c : 2));
        }
        for (auto& law : laws) {
            if (*m) law = law.truncated(*m);
            auto rep = check_group_law(law, order);
            all_pass = all_pass && rep.pass;
            auto vw = verschiebung(law, order);
            auto inv = formal_inverse(law, order);
            auto pm = mult_by_m(law, static_cast<std::uint32_t>(p), order);
            auto m2 = mult_by_m(law, 2, order);
            if (g.json) {
                Json jl;
                jl["law"] = law.describe();
                jl["p"] = p;
                jl["axioms_pass"] = rep.pass;
                if (!rep.pass) jl["axiom"] = rep.axiom;
                jl["mult_by_2"] = series_to_json(m2);
                jl["mult_by_p"] = series_to_json(pm);
                jl["V"] = series_to_json(vw.V);
                jl["W"] = series_to_json(vw.W);
                jl["inverse"] = series_to_json(inv);
                jout.push_back(std::move(jl));
                continue;
            }
            std::cout << "law " << law.describe() << ", p=" << p << ", order " << order
                      << "\n";
            std::cout << "  axioms: " << (rep.pass ? "pass" : "FAIL " + rep.axiom)
                      << "\n";
            std::cout << "  [2](X) = " << series_inline(m2) << "\n";
            if (p != 2)
                std::cout << "  [" << p << "](X) = " << series_inline(pm) << "\n";
            std::cout << "  V = " << series_inline(vw.V)
                      << ", W = " << series_inline(vw.W) << "\n";
            std::cout << "  inverse = " << series_inline(inv) << "\n";
        }
    }
    if (g.json) std::cout << jout.dump(2) << "\n";
    return all_pass ? kExitPass : kExitFail;
}

int cmd_series(const GlobalOpts& g, const std::string& law_name_opt, std::uint64_t c,
               const std::string& target, std::uint32_t k) {
    std::string err;
    auto p = single_p(g, err);
    if (!p) return usage_error(err);
    auto m = single_m(g, err);
    if (!m) return usage_error(err);
    std::uint32_t order = g.order ? g.order : 8;
    auto law = law_by_name(law_name_opt, *p, c);
    if (*m) law = law.truncated(*m);

    if (target == "canonical") {
        auto d = HSDerivation::canonical(law, order);
        if (*m) d = truncate_derivation(d, *m);
        if (g.json) {
            std::cout << derivation_to_json(d).dump(2) << "\n";
            return kExitPass;
        }
        std::cout << "canonical derivation for " << law.describe() << ", p=" << *p
                  << ", precision " << d.precision() << "\n";
        const auto& gen = d.gen_image();
        for (std::uint32_t e = 0; e < d.precision(); ++e)
            std::cout << "  d_" << e << "(t) = " << to_string(gen.at1(e)) << "\n";
        return kExitPass;
    }

    TruncSeries s = [&] {
        if (target == "mult_by_m") return mult_by_m(law, k, order);
        if (target == "verschiebung") return verschiebung(law, order).V;
        if (target == "inverse") return formal_inverse(law, order);
        fail("unknown target: " + target +
             " (expected canonical, mult_by_m, verschiebung or inverse)");
    }();
    if (g.json) {
        std::cout << series_to_json(s).dump(2) << "\n";
        return kExitPass;
    }
    if (target == "mult_by_m")
        std::cout << "[" << k << "](X) for " << law.describe() << ", p=" << *p << "\n";
    else if (target == "verschiebung") {
        auto vw = verschiebung(law, order);
        std::cout << "verschiebung for " << law.describe() << ", p=" << *p << "\n";
        std::cout << "  V = " << series_inline(vw.V) << "\n";
        std::cout << "  W = " << series_inline(vw.W) << "\n";
        return kExitPass;
    } else
        std::cout << "inverse for " << law.describe() << ", p=" << *p << "\n";
    print_coeff_table(std::cout, s);
    return kExitPass;
}

int cmd_canonical(const GlobalOpts& g, const std::string& input,
                  const std::string& flavor) {
    auto d = derivation_from_json(read_json_file(input));
    require(d.is_truncated(),
            "canonical: the input derivation must be truncated (give \"m\" in the file)");
    auto e = flavor == "multiplicative" ? canonical_element_multiplicative(d)
                                        : canonical_element_additive(d);
    auto rep = verify_canonical(d, e);
    if (g.json) {
        std::cout << canonical_to_json(e, rep).dump(2) << "\n";
    } else {
        std::cout << "x = " << to_string(e.x) << "\n";
        std::cout << "flavor = " << law_name(e.flavor) << ", level m = " << e.level
                  << "\n";
        for (const auto& line : rep.lines) std::cout << "  " << line << "\n";
    }
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_integrate(const GlobalOpts& g, const std::string& input,
                  const std::string& output, const std::string& flavor,
                  const std::string& x_text) {
    std::string err;
    auto m_opt = single_m(g, err);
    if (!m_opt) return usage_error(err);
    std::uint32_t order = g.order ? g.order : 16;

    auto d = derivation_from_json(read_json_file(input));
    if (!d.is_truncated()) {
        require(*m_opt > 0,
                "integrate: the input has no truncation level; provide --m");
        d = truncate_derivation(d, *m_opt);
    } else if (*m_opt > 0) {
        require(d.level() == *m_opt, "integrate: --m disagrees with the input file");
    }

    LawTag tag =
        flavor == "multiplicative" ? LawTag::Multiplicative : LawTag::Additive;
    std::optional<RatFn> x_override;
    if (!x_text.empty()) {
        require(tag == LawTag::Additive,
                "integrate: --x applies to the additive law only");
        x_override = parse_ratfn(x_text, d.p());
    }
    auto res = tag == LawTag::Additive ? integrate_additive(d, order, x_override)
                                       : integrate_multiplicative(d, order);

    Json j = integration_to_json(res, tag);
    if (!output.empty()) write_json_file(output, j);
    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "law = " << law_name(tag) << ", p=" << d.p()
                  << ", input level m = " << d.level() << ", output precision "
                  << res.output.precision() << "\n";
        if (res.canonical_x)
            std::cout << "canonical element x = " << to_string(res.canonical_x->x)
                      << "\n";
        if (res.deflated_pow)
            std::cout << "deflated by p^" << res.deflated_pow << "\n";
        if (!res.minimal_poly.empty()) {
            std::cout << "minimal polynomial P(T) = ";
            bool first = true;
            for (std::size_t i = 0; i < res.minimal_poly.size(); ++i) {
                if (res.minimal_poly[i].is_zero()) continue;
                if (!first) std::cout << " + ";
                first = false;
                std::string ct = to_string(res.minimal_poly[i], 'x');
                if (i == 0 || ct != "1") std::cout << "(" << ct << ")";
                if (i == 1) std::cout << "T";
                if (i > 1) std::cout << "T^" << i;
            }
            std::cout << "\n";
        }
        std::cout << "audit: " << (res.audit.pass ? "pass" : "FAIL") << "\n";
        for (const auto& line : res.audit.lines)
            std::cout << "  " << line.text << "\n";
        std::cout << "iterativity: " << (res.iterativity.pass ? "pass" : "FAIL")
                  << "\n";
        if (!output.empty()) std::cout << "wrote " << output << "\n";
    }
    if (!res.audit.pass) return kExitAudit;
    return res.iterativity.pass ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hasse-Schmidt derivation calculus over F_p(t)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--p", g.ps, "prime(s), comma separated")->delimiter(',');
    app.add_option("--m", g.ms, "truncation level(s), comma separated")->delimiter(',');
    app.add_option("--order", g.order, "output precision N");
    app.add_option("--seed", g.seed, "seed for randomized samples");
    app.add_flag("--json", g.json, "emit JSON instead of text");

    auto* verify = app.add_subcommand("verify", "run named invariant suites");
    std::vector<std::string> suites;
    std::size_t samples = 50;
    bool timings = false;
    verify->add_option("--suite", suites, "suite names (default: all)")->delimiter(',');
    verify->add_option("--samples", samples, "random samples per sampled case");
    verify->add_flag("--timings", timings, "append per-case wall times");

    auto* laws = app.add_subcommand("laws", "check a law and print its tables");
    std::string laws_law;
    std::uint64_t laws_c = 1;
    laws->add_option("--law", laws_law, "additive, multiplicative or mixed");
    auto* laws_c_opt = laws->add_option("--c", laws_c, "mixing coefficient for mixed");

    auto* series = app.add_subcommand("series", "print one series table");
    std::string series_law = "multiplicative";
    std::uint64_t series_c = 1;
    std::string target;
    std::uint32_t series_k = 2;
    series->add_option("--law", series_law, "additive, multiplicative or mixed");
    series->add_option("--c", series_c, "mixing coefficient for mixed");
    series->add_option("--target", target, "canonical, mult_by_m, verschiebung or inverse")
        ->required();
    series->add_option("--k", series_k, "multiplier for mult_by_m");

    auto* canonical = app.add_subcommand("canonical", "canonical element of a "
                                                      "truncated derivation");
    std::string can_input, can_flavor = "additive";
    canonical->add_option("--input", can_input, "derivation JSON file")->required();
    canonical->add_option("--law", can_flavor, "additive or multiplicative");

    auto* integrate = app.add_subcommand("integrate", "expand a truncated derivation "
                                                      "to the given precision");
    std::string int_input, int_output, int_flavor = "additive", int_x;
    integrate->add_option("--law", int_flavor, "additive or multiplicative");
    integrate->add_option("--input", int_input, "derivation JSON file")->required();
    integrate->add_option("--output", int_output, "result JSON file");
    integrate->add_option("--x", int_x, "canonical element override (additive only)");

    for (auto* sub : {verify, laws, series, canonical, integrate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(g, suites, samples, timings);
        if (laws->parsed()) return cmd_laws(g, laws_law, laws_c, laws_c_opt->count() > 0);
        if (series->parsed()) return cmd_series(g, series_law, series_c, target, series_k);
        if (canonical->parsed()) return cmd_canonical(g, can_input, can_flavor);
        if (integrate->parsed()) return cmd_integrate(g, int_input, int_output,
                                                      int_flavor, int_x);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
