#include "hsd/text.hpp"

#include <cctype>

namespace hsd {

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    std::uint64_t p;
    char var;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    [[noreturn]] void bad(const std::string& what) {
        fail("parse error at position " + std::to_string(i) + ": " + what + " in \"" + s +
             "\"");
    }

    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    std::uint64_t integer() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            bad("expected integer");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
            require(v < (1ULL << 62), "parse error: integer literal too large");
            ++i;
        }
        return v;
    }

    RatFn expr() {
        RatFn acc = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    RatFn term() {
        RatFn acc = factor();
        for (;;) {
            if (eat('*'))
                acc = acc * factor();
            else if (eat('/'))
                acc = acc / factor();
            else
                return acc;
        }
    }

    RatFn factor() {
        RatFn b = base();
        if (eat('^')) {
            std::uint64_t e = integer();
            return b.pow(e);
        }
        return b;
    }

    RatFn base() {
        char c = peek();
        if (c == '(') {
            ++i;
            RatFn r = expr();
            if (!eat(')')) bad("expected ')'");
            return r;
        }
        if (c == var) {
            ++i;
            return RatFn::variable(p);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFn::constant(p, integer());
        bad("expected term");
    }
};

std::string monomial_str(std::uint64_t c, std::size_t e, char var) {
    std::string s;
    if (e == 0) return std::to_string(c);
    if (c != 1) s += std::to_string(c) + "*";
    s += var;
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

bool needs_parens(const Poly& f) { // more than one monomial
    std::size_t n = 0;
    for (auto c : f.coeffs())
        if (c) ++n;
    return n > 1;
}

} // namespace

RatFn parse_ratfn(const std::string& text, std::uint64_t p, char var) {
    require(p >= 2 && is_prime_u64(p), "parse_ratfn: modulus must be a prime >= 2");
    Parser ps{text, 0, p, var};
    RatFn r = ps.expr();
    ps.skip_ws();
    if (ps.i != text.size()) ps.bad("trailing input");
    return r;
}

std::string to_string(const Poly& f, char var) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        std::uint64_t c = f.coeff(i);
        if (!c) continue;
        if (!s.empty()) s += "+";
        s += monomial_str(c, i, var);
    }
    return s;
}

std::string to_string(const RatFn& r, char var) {
    std::string num = to_string(r.num(), var);
    if (r.is_polynomial()) return num;
    if (needs_parens(r.num())) num = "(" + num + ")";
    std::string den = to_string(r.den(), var);
    if (needs_parens(r.den())) den = "(" + den + ")";
    return num + "/" + den;
}

} // namespace hsd
