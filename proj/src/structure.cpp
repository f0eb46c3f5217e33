#include "hsd/structure.hpp"

#include <sstream>
#include <utility>

#include "hsd/error.hpp"
#include "hsd/text.hpp"

namespace hsd {

namespace {

std::uint64_t pow_q(std::uint64_t p, std::uint64_t m) {
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        require(q <= (std::uint64_t{1} << 20) / p,
                "p^m is too large for constants-field linear algebra");
        q *= p;
    }
    return q;
}

RatFn t_power(std::uint64_t p, std::uint64_t e) {
    std::vector<std::uint64_t> c(e + 1, 0);
    c[e] = 1;
    return RatFn(Poly(p, std::move(c)));
}

// r = d_n^(times)(r), iterating one component as an operator
RatFn iterate_component(const HSDerivation& d, std::uint32_t n, std::uint64_t times,
                        RatFn r) {
    for (std::uint64_t k = 0; k < times; ++k) r = d.apply(r, n);
    return r;
}

Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix out(a[0].size(), std::vector<RatFn>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
    return out;
}

// reduced row echelon form rows with zero rows dropped: a basis of the row
// space, pivots normalized to 1
Matrix row_space_basis(Matrix a) {
    const std::size_t rows = a.size();
    if (rows == 0) return {};
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        const RatFn inv = a[r][c].inverse();
        for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const RatFn f = a[i][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] - f * a[r][k];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

Poly poly_from_index(std::uint64_t p, std::uint64_t v) {
    std::vector<std::uint64_t> c;
    while (v) {
        c.push_back(v % p);
        v /= p;
    }
    return Poly(p, std::move(c));
}

} // namespace

std::vector<RatFn> decompose(const RatFn& r, std::uint32_t m) {
    const std::uint64_t p = r.p();
    require(p >= 2, "decompose needs an element of F_p(t), not a default value");
    const std::uint64_t q = pow_q(p, m);
    if (q == 1) return {r};
    const Poly w = r.num() * r.den().pow(q - 1);
    // denominator trick: r = w(t) / v(t)^q and v(t)^q = v(t^q) over F_p, so
    // splitting w by residues mod q gives coordinates with denominator v(s)
    std::vector<Poly> pieces = w.residue_split(q);
    std::vector<RatFn> coords;
    coords.reserve(q);
    for (std::uint64_t j = 0; j < q; ++j) coords.emplace_back(pieces[j], r.den());
    return coords;
}

RatFn reassemble(const std::vector<RatFn>& coords, std::uint32_t m) {
    require(!coords.empty(), "reassemble needs at least one coordinate");
    const std::uint64_t p = coords[0].p();
    const std::uint64_t q = pow_q(p, m);
    require(coords.size() == q, "coordinate count must equal p^m");
    RatFn acc = RatFn::zero(p);
    for (std::uint64_t j = 0; j < q; ++j) {
        if (coords[j].is_zero()) continue;
        acc = acc + coords[j].substitute_power(q) * t_power(p, j);
    }
    return acc;
}

Matrix linear_map_matrix(const HSDerivation& d, std::uint32_t n, std::uint32_t m) {
    const std::uint64_t p = d.p();
    require(m >= 1, "the level must be at least 1");
    const std::uint64_t q = pow_q(p, m);
    require(n < q, "the component index must lie below p^m");
    require(q <= d.precision(), "derivation precision is below p^m");
    Matrix mat(q, std::vector<RatFn>(q, RatFn::zero(p)));
    for (std::uint64_t j = 0; j < q; ++j) {
        const std::vector<RatFn> col = decompose(d.apply(t_power(p, j), n), m);
        for (std::uint64_t i = 0; i < q; ++i) mat[i][j] = col[i];
    }
    // C-linearity holds whenever components 1..q-1 kill t^q (Leibniz), so a
    // failure on a basis product flags an input that is not truncated here
    for (std::uint64_t j = 0; j < q; ++j) {
        const RatFn lhs = d.apply(t_power(p, q + j), n);
        const RatFn rhs = t_power(p, q) * d.apply(t_power(p, j), n);
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "component " << n << " is not F_p(t^" << q << ")-linear on t^"
               << (q + j) << "; the input is not a level-" << m << " truncated derivation";
            fail(os.str());
        }
    }
    return mat;
}

ConstantsDegreeReport constants_degree(const HSDerivation& d, std::uint32_t m) {
    const std::uint64_t p = d.p();
    require(m >= 1, "the level must be at least 1");
    const std::uint64_t q = pow_q(p, m);
    require(q <= d.precision(), "derivation precision is below p^m");
    ConstantsDegreeReport rep;
    rep.q = q;
    rep.d1_nonzero = !d.apply(RatFn::variable(p), 1).is_zero();
    Matrix stacked;
    stacked.reserve((q - 1) * q);
    for (std::uint32_t n = 1; n < q; ++n) {
        Matrix mn = linear_map_matrix(d, n, m);
        for (auto& row : mn) stacked.push_back(std::move(row));
    }
    const std::vector<std::vector<RatFn>> ker = kernel_basis(stacked, p);
    rep.kernel_dim = ker.size();
    // the joint kernel is an intermediate field, so its dimension divides q
    require(rep.kernel_dim > 0 && q % rep.kernel_dim == 0,
            "joint-kernel dimension does not divide p^m");
    rep.degree = q / rep.kernel_dim;
    if (rep.kernel_dim == 1) {
        bool only_c = !ker[0][0].is_zero();
        for (std::uint64_t i = 1; i < q; ++i) only_c = only_c && ker[0][i].is_zero();
        rep.kernel_is_c = only_c;
    }
    return rep;
}

ImIsKerReport imisker_check(const HSDerivation& d) {
    const std::uint64_t p = d.p();
    const Matrix a = linear_map_matrix(d, 1, 1);
    require(!mat_is_zero(a), "d_1 = 0; the image/kernel statement needs a nonzero derivation");
    require(mat_is_zero(mat_pow(a, p, p)),
            "the p-th compositional power of d_1 is nonzero; the image/kernel statement "
            "applies to nilpotent derivations only");
    ImIsKerReport rep;
    rep.im_basis = row_space_basis(transpose(a));
    rep.im_dim = rep.im_basis.size();
    rep.ker_basis = kernel_basis(mat_pow(a, p - 1, p), p);
    rep.ker_dim = rep.ker_basis.size();
    // im(d_1) sits inside ker(d_1^(p-1)) because d_1^(p) = 0, so equality is
    // a dimension count
    rep.pass = rep.im_dim == rep.ker_dim;
    std::ostringstream os;
    os << "image dimension " << rep.im_dim << ", kernel dimension " << rep.ker_dim
       << (rep.pass ? " (equal)" : " (mismatch)");
    rep.detail = os.str();
    return rep;
}

RatFn solve_dx_eq_x(const HSDerivation& d) {
    const std::uint64_t p = d.p();
    const Matrix a = linear_map_matrix(d, 1, 1);
    require(!mat_is_zero(a), "d_1 = 0; no nonzero fixed point exists");
    const Matrix ap = mat_pow(a, p, p);
    bool fixed = true;
    for (std::size_t i = 0; i < ap.size() && fixed; ++i)
        for (std::size_t j = 0; j < ap[i].size() && fixed; ++j)
            fixed = ap[i][j] == a[i][j];
    require(fixed, "the p-th compositional power of d_1 differs from d_1; "
                   "the fixed-point construction does not apply");
    Matrix shifted = a;
    const RatFn one = RatFn::constant(p, 1);
    for (std::size_t i = 0; i < shifted.size(); ++i)
        shifted[i][i] = shifted[i][i] - one;
    const auto ker = kernel_basis(shifted, p);
    require(!ker.empty(),
            "no eigenvector for eigenvalue 1; d_1 with d_1^(p) = d_1 must have one");
    const RatFn x = reassemble(ker[0], 1);
    require(d.apply(x, 1) == x, "eigenvector reassembly broke the fixed-point equation");
    return x;
}

CanonicalElement canonical_element_additive(const HSDerivation& d) {
    require(d.is_truncated(), "canonical elements are built from truncated derivations");
    const std::uint64_t p = d.p();
    const std::uint32_t m = d.level();
    const RatFn t = RatFn::variable(p);
    require(!d.apply(t, 1).is_zero(),
            "d_1 = 0; deflate the derivation before asking for a canonical element");

    // base case: with i maximal such that d_1^(i)(t) != 0, the quotient
    // d_1^(i-1)(t) / d_1^(i)(t) is sent to 1 by d_1
    std::vector<RatFn> chain{t};
    for (;;) {
        RatFn next = d.apply(chain.back(), 1);
        if (next.is_zero()) break;
        chain.push_back(std::move(next));
        require(chain.size() <= p,
                "d_1 is not p-nilpotent; the input is not additively iterative");
    }
    RatFn x = chain[chain.size() - 2] / chain.back();

    // induction: make the p-power components vanish one level at a time by
    // subtracting a constant-field correction y with d_(p^i)(y) = d_(p^i)(x);
    // y is a p^i-th power, so lower components are untouched
    Matrix d1mat;
    for (std::uint32_t i = 1; i < m; ++i) {
        const std::uint64_t e = pow_q(p, i);
        const RatFn b = d.apply(x, static_cast<std::uint32_t>(e));
        if (b.is_zero()) continue;
        const std::vector<RatFn> coords = decompose(b, i);
        for (std::uint64_t j = 1; j < coords.size(); ++j) {
            require(coords[j].is_zero(),
                    "d_(p^i)(x) left the constants field F_p(t^(p^i)); the input is not "
                    "additively iterative");
        }
        // b = bhat^(p^i), and d_(p^i) of a p^i-th power is the p^i-th power
        // of d_1, so it is enough to solve d_1(yhat) = bhat
        const RatFn bhat = coords[0];
        if (d1mat.empty()) d1mat = linear_map_matrix(d, 1, 1);
        const LinSolveResult sol = linsolve(d1mat, decompose(bhat, 1));
        require(sol.consistent,
                "the p-power correction equation has no solution; the input is not "
                "additively iterative");
        const RatFn yhat = reassemble(sol.solution, 1);
        x = x - yhat.substitute_power(e);
    }

    CanonicalElement out{x, LawTag::Additive, m};
    const CanonicalCheckReport rep = verify_canonical(d, out);
    require(rep.pass, "the constructed element fails its defining equations; the input "
                      "is not an additively iterative truncated derivation");
    return out;
}

CanonicalElement canonical_element_multiplicative(const HSDerivation& d,
                                                  std::uint32_t degree_bound) {
    require(d.is_truncated(), "canonical elements are built from truncated derivations");
    const std::uint64_t p = d.p();
    const std::uint32_t m = d.level();
    RatFn x = solve_dx_eq_x(d); // enforces d_1 != 0 and d_1^(p) = d_1

    // each step keeps d_1(x) = x while clearing the next p-power component;
    // some y below the bound must produce a nonzero candidate, and the
    // candidates enumerate F_p[t] by degree, then coefficients
    const std::uint64_t limit = pow_q(p, degree_bound + 1);
    for (std::uint32_t i = 0; i + 1 < m; ++i) {
        const std::uint64_t e = pow_q(p, i + 1);
        bool found = false;
        for (std::uint64_t v = 1; v < limit && !found; ++v) {
            const RatFn y(poly_from_index(p, v));
            const RatFn z = y.pow(e) * x;
            const RatFn cand =
                z - iterate_component(d, static_cast<std::uint32_t>(e), p - 1, z);
            if (!cand.is_zero()) {
                x = cand;
                found = true;
            }
        }
        if (!found) {
            std::ostringstream os;
            os << "every y of degree at most " << degree_bound
               << " gave a zero candidate at step " << (i + 1)
               << "; raise the degree bound";
            fail(os.str());
        }
    }

    CanonicalElement out{x - RatFn::constant(p, 1), LawTag::Multiplicative, m};
    const CanonicalCheckReport rep = verify_canonical(d, out);
    require(rep.pass, "the constructed element fails its defining equations; the input "
                      "is not a multiplicatively iterative truncated derivation");
    return out;
}

CanonicalCheckReport verify_canonical(const HSDerivation& d, const CanonicalElement& e) {
    const std::uint64_t p = d.p();
    require(e.level >= 1, "canonical elements live at level >= 1");
    const std::uint64_t q = pow_q(p, e.level);
    require(q <= d.precision(), "derivation precision is below the element level");
    CanonicalCheckReport rep;
    const RatFn one = RatFn::constant(p, 1);
    const RatFn zero = RatFn::zero(p);
    for (std::uint32_t n = 1; n < q; ++n) {
        const RatFn got = d.apply(e.x, n);
        const RatFn want =
            n == 1 ? (e.flavor == LawTag::Additive ? one : e.x + one) : zero;
        bool ok = got == want;
        if (n == 1 && e.flavor != LawTag::Additive) ok = ok && !want.is_zero();
        std::ostringstream os;
        os << "d_" << n << "(x) = " << to_string(got) << ", expected " << to_string(want)
           << (ok ? "  ok" : "  FAIL");
        rep.lines.push_back(os.str());
        rep.pass = rep.pass && ok;
    }
    return rep;
}

IdentityCheckReport general_identity_check(const HSDerivation& d, std::size_t samples,
                                           std::uint64_t seed) {
    const std::uint64_t p = d.p();
    std::mt19937_64 rng(seed);
    IdentityCheckReport rep;
    const RatFn t = RatFn::variable(p);
    // compositional powers of the derivation d_1 are again derivations, so
    // the power identity can be decided exactly on t
    const bool fixed_power = iterate_component(d, 1, p, t) == d.apply(t, 1);

    for (std::size_t s = 0; s < samples && rep.pass; ++s) {
        const RatFn a = random_ratfn(rng, p, 3);
        std::vector<RatFn> pw(p);
        pw[0] = a;
        for (std::uint64_t k = 1; k < p; ++k) pw[k] = d.apply(pw[k - 1], 1);

        // (1) the scalar sums over l collapse to -1 exactly at i = p-1
        RatFn acc = pw[p - 1];
        for (std::uint64_t l = 1; l < p; ++l)
            for (std::uint64_t i = 1; i < p; ++i)
                acc = acc + RatFn::constant(p, mod_pow(l, p - 1 - i, p)) * pw[i];
        ++rep.checks;
        if (!acc.is_zero()) {
            rep.pass = false;
            rep.detail = "the vanishing-sum identity fails on a = " + to_string(a);
            break;
        }

        // (2) the weighted sum is an eigenvector for eigenvalue l
        if (fixed_power) {
            for (std::uint64_t l = 1; l < p && rep.pass; ++l) {
                RatFn sum = RatFn::zero(p);
                for (std::uint64_t i = 1; i < p; ++i)
                    sum = sum + RatFn::constant(p, mod_pow(l, p - 1 - i, p)) * pw[i];
                ++rep.checks;
                if (!(d.apply(sum, 1) == RatFn::constant(p, l) * sum)) {
                    rep.pass = false;
                    rep.detail = "the eigenvector identity fails for l = " +
                                 std::to_string(l) + " on a = " + to_string(a);
                }
            }
        }
        if (!rep.pass) break;

        // (3) expansion of d_(p^i) powers on products x * y^(p^i)
        const RatFn x = random_ratfn(rng, p, 3);
        const RatFn y = random_ratfn(rng, p, 3);
        for (std::uint64_t e = 1; e < d.precision() && rep.pass; e *= p) {
            const auto en = static_cast<std::uint32_t>(e);
            std::vector<RatFn> px(p + 1), py(p + 1);
            px[0] = x;
            py[0] = y;
            for (std::uint64_t k = 1; k <= p; ++k) {
                px[k] = d.apply(px[k - 1], en);
                py[k] = d.apply(py[k - 1], 1);
            }
            RatFn z = x * y.pow(e);
            for (std::uint64_t j = 1; j <= p && rep.pass; ++j) {
                z = d.apply(z, en);
                RatFn rhs = RatFn::zero(p);
                for (std::uint64_t l = 0; l <= j; ++l) {
                    const std::uint64_t c = binom_mod_p(j, l, p);
                    if (c == 0) continue;
                    rhs = rhs + RatFn::constant(p, c) * px[j - l] * py[l].pow(e);
                }
                ++rep.checks;
                if (!(z == rhs)) {
                    rep.pass = false;
                    rep.detail = "the product expansion fails at e = " + std::to_string(e) +
                                 ", j = " + std::to_string(j);
                }
            }
        }
    }
    return rep;
}

bool independence_check(const HSDerivation& d, std::uint64_t q) {
    const std::uint64_t p = d.p();
    Matrix m(p, std::vector<RatFn>(p, RatFn::zero(p)));
    for (std::uint64_t j = 0; j < p; ++j) {
        RatFn r = t_power(p, j);
        for (std::uint64_t i = 0; i < p; ++i) {
            m[i][j] = r.pow(q);
            if (i + 1 < p) r = d.apply(r, 1);
        }
    }
    return mat_rank(m) == p;
}

bool is_pbasis(const RatFn& x) { return !x.derivative().is_zero(); }

RatFn random_ratfn(std::mt19937_64& rng, std::uint64_t p, int max_degree) {
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    const auto draw = [&](bool nonzero) {
        for (;;) {
            std::vector<std::uint64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& v : c) v = coeff(rng);
            Poly f(p, std::move(c));
            if (!nonzero || !f.is_zero()) return f;
        }
    };
    const Poly num = draw(false);
    const Poly den = draw(true);
    return RatFn(num, den);
}

} // namespace hsd
