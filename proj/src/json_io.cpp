#include "hsd/json_io.hpp"

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

std::uint64_t read_u64(const Json& j, const char* field, std::uint64_t lo,
                       std::uint64_t hi) {
    require(j.contains(field), std::string("field \"") + field + "\" is required");
    const Json& v = j.at(field);
    require(v.is_number_unsigned(), std::string("field \"") + field +
                                        "\" must be an unsigned integer");
    const auto n = v.get<std::uint64_t>();
    require(n >= lo && n <= hi, std::string("field \"") + field + "\" is out of range");
    return n;
}

} // namespace

Json series_to_json(const TruncSeries& s) {
    if (s.nvars() == 1) {
        Json arr = Json::array();
        for (std::uint32_t i = 0; i < s.order(0); ++i) arr.push_back(to_string(s.at1(i)));
        return arr;
    }
    require(s.nvars() == 2, "series serialization handles one or two variables");
    Json arr = Json::array();
    const RatFn zero = RatFn::zero(s.p());
    for (std::uint32_t a = 0; a < s.order(0); ++a) {
        Json row = Json::array();
        for (std::uint32_t b = 0; b < s.order(1); ++b)
            row.push_back(to_string(s.under_cap({a, b, 0}) ? s.at2(a, b) : zero));
        arr.push_back(std::move(row));
    }
    return arr;
}

Json derivation_to_json(const HSDerivation& d) {
    Json out;
    out["p"] = d.p();
    if (d.is_truncated())
        out["m"] = d.level();
    else
        out["precision"] = d.precision();
    out["gen_image"] = series_to_json(d.gen_image());
    return out;
}

HSDerivation derivation_from_json(const Json& j) {
    require(j.is_object(), "a derivation file must hold a JSON object");
    const std::uint64_t p = read_u64(j, "p", 2, std::uint64_t{1} << 20);
    require(is_prime_u64(p), "field \"p\" must be prime");
    const bool has_m = j.contains("m");
    const bool has_prec = j.contains("precision");
    require(has_m != has_prec,
            "exactly one of \"m\" (truncated) or \"precision\" (formal) is required");
    std::uint32_t m = 0;
    std::uint32_t precision = 0;
    if (has_m) {
        m = static_cast<std::uint32_t>(read_u64(j, "m", 1, 26));
        precision = static_cast<std::uint32_t>(pow_u64(p, m));
    } else {
        precision = static_cast<std::uint32_t>(
            read_u64(j, "precision", 2, std::uint64_t{1} << 20));
    }
    require(j.contains("gen_image") && j.at("gen_image").is_array(),
            "field \"gen_image\" must be an array of rational-function strings");
    const Json& arr = j.at("gen_image");
    require(arr.size() <= precision,
            "gen_image has more entries than the stated precision");
    TruncSeries gen(shape1(p, "X", precision));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        require(arr[i].is_string(), "gen_image entries must be strings");
        gen.set1(static_cast<std::uint32_t>(i),
                 parse_ratfn(arr[i].get<std::string>(), p));
    }
    return has_m ? HSDerivation::from_gen_image(std::move(gen), m)
                 : HSDerivation::from_gen_image(std::move(gen));
}

std::string law_name(LawTag tag) {
    switch (tag) {
        case LawTag::Additive: return "additive";
        case LawTag::Multiplicative: return "multiplicative";
        case LawTag::Mixed: return "mixed";
        case LawTag::Custom: return "custom";
    }
    fail("unknown law tag");
}

Json canonical_to_json(const CanonicalElement& e, const CanonicalCheckReport& rep) {
    Json out;
    out["x"] = to_string(e.x);
    out["flavor"] = law_name(e.flavor);
    out["level"] = e.level;
    out["pass"] = rep.pass;
    out["verification"] = rep.lines;
    return out;
}

Json integration_to_json(const IntegrationResult& r, LawTag tag) {
    Json out;
    out["law"] = law_name(tag);
    out["output"] = derivation_to_json(r.output);
    if (r.canonical_x) {
        out["canonical_x"] = Json{{"x", to_string(r.canonical_x->x)},
                                  {"flavor", law_name(r.canonical_x->flavor)},
                                  {"level", r.canonical_x->level}};
    }
    if (r.deflated_pow > 0) out["deflated_pow"] = r.deflated_pow;
    if (!r.minimal_poly.empty()) {
        Json mp = Json::array();
        for (const RatFn& c : r.minimal_poly) mp.push_back(to_string(c, 'x'));
        out["minimal_poly"] = std::move(mp);
    }
    Json audit_lines = Json::array();
    for (const AuditLine& line : r.audit.lines) audit_lines.push_back(line.text);
    out["audit"] = Json{{"pass", r.audit.pass}, {"lines", std::move(audit_lines)}};
    Json iter = Json{{"pass", r.iterativity.pass}};
    if (!r.iterativity.detail.empty()) iter["detail"] = r.iterativity.detail;
    if (r.iterativity.witness)
        iter["witness"] = Json{(*r.iterativity.witness)[0], (*r.iterativity.witness)[1]};
    out["iterativity"] = std::move(iter);
    return out;
}

Json report_to_json(const SuiteReport& rep, bool timings) {
    Json out;
    out["pass"] = rep.pass;
    Json cases = Json::array();
    for (const SuiteCase& c : rep.cases) {
        Json jc{{"suite", c.suite}, {"params", c.params}, {"pass", c.pass}};
        if (!c.detail.empty()) jc["detail"] = c.detail;
        if (timings) jc["seconds"] = c.seconds;
        cases.push_back(std::move(jc));
    }
    out["cases"] = std::move(cases);
    return out;
}

} // namespace hsd
