#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sk/linalg.hpp"
#include "sk/unirational.hpp"
#include "sk/rng.hpp"

using namespace sk;

namespace {

const VarId X{1, 1};

UniRational make(std::vector<Rational> num, std::vector<std::pair<LinFactor, int>> den) {
    return UniRational(X, UniPoly(std::move(num)), std::move(den));
}

// Independent oracle: recover the partial fraction coefficients by clearing
// denominators and solving the dense linear system in the monomial basis.
PartialFractions dense_solver_oracle(const UniRational& f) {
    UniPoly den = UniPoly::constant(1);
    for (const auto& [fac, e] : f.den()) den = den * UniPoly({fac.a, fac.b}).pow(e);
    const int poly_deg = std::max(f.num().degree() - den.degree(), -1);
    // unknowns: poly coefficients (poly_deg+1), then one residue per
    // (factor, power <= multiplicity)
    struct Slot {
        LinFactor fac;
        int power;
    };
    std::vector<Slot> slots;
    for (const auto& [fac, e] : f.den()) {
        for (int p = 1; p <= e; ++p) slots.push_back({fac, p});
    }
    const int unknowns = (poly_deg + 1) + static_cast<int>(slots.size());
    const int rows = std::max(f.num().degree(), den.degree()) + 1;
    QMatrix a(rows, unknowns);
    std::vector<Rational> b(static_cast<std::size_t>(rows), Rational(0));
    for (int i = 0; i <= f.num().degree(); ++i) b[static_cast<std::size_t>(i)] = f.num().coeff(i);
    int col = 0;
    for (int j = 0; j <= poly_deg; ++j, ++col) {
        UniPoly contrib = UniPoly::monomial(j) * den;
        for (int i = 0; i <= contrib.degree(); ++i) a.at(i, col) = contrib.coeff(i);
    }
    for (const auto& s : slots) {
        UniPoly contrib = UniPoly::constant(1);
        for (const auto& [fac, e] : f.den()) {
            int pw = (fac == s.fac) ? e - s.power : e;
            contrib = contrib * UniPoly({fac.a, fac.b}).pow(pw);
        }
        for (int i = 0; i <= contrib.degree(); ++i) a.at(i, col) = contrib.coeff(i);
        ++col;
    }
    auto sol = solve_linear(std::move(a), std::move(b));
    REQUIRE(sol.has_value());
    PartialFractions out;
    std::vector<Rational> pc;
    for (int j = 0; j <= poly_deg; ++j) pc.push_back((*sol)[static_cast<std::size_t>(j)]);
    out.poly = UniPoly(pc);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Rational c = (*sol)[static_cast<std::size_t>(poly_deg + 1) + i];
        if (c != 0) out.terms.push_back({slots[i].fac, slots[i].power, c});
    }
    return out;
}

bool same_decomposition(const PartialFractions& lhs, const PartialFractions& rhs) {
    if (!(lhs.poly == rhs.poly)) return false;
    auto key = [](const PartialFractions::Term& t) { return std::make_tuple(t.factor.a, t.factor.b, t.power); };
    std::map<std::tuple<Rational, Rational, int>, Rational> l, r;
    for (const auto& t : lhs.terms) l[key(t)] = t.coeff;
    for (const auto& t : rhs.terms) r[key(t)] = t.coeff;
    return l == r;
}

}  // namespace

TEST_CASE("textbook two-factor decomposition") {
    // 1/((x-1)(x-2)) = -1/(x-1) + 1/(x-2)
    auto f = make({1}, {{LinFactor{-1, 1}, 1}, {LinFactor{-2, 1}, 1}});
    auto pf = partial_fraction(f);
    CHECK(pf.poly.is_zero());
    REQUIRE(pf.terms.size() == 2);
    // factors are stored normalized: (1,-1) for 1-x and (2,-1) for 2-x, so
    // -1/(x-1) reads as +1/(1-x) and 1/(x-2) as -1/(2-x)
    for (const auto& t : pf.terms) {
        if (t.factor.a == 1) CHECK(t.coeff == 1);
        if (t.factor.a == 2) CHECK(t.coeff == -1);
    }
    CHECK(recombine(X, pf) == f);
}

TEST_CASE("polynomial part via division") {
    // x^3/(x-1) = x^2 + x + 1 + 1/(x-1)
    auto f = make({0, 0, 0, 1}, {{LinFactor{-1, 1}, 1}});
    auto pf = partial_fraction(f);
    CHECK(pf.poly == UniPoly({1, 1, 1}));
    REQUIRE(pf.terms.size() == 1);
    // 1/(x-1) = -1/(1-x) against the normalized factor (1,-1)
    CHECK(pf.terms[0].factor == LinFactor{1, -1});
    CHECK(pf.terms[0].coeff == -1);
    CHECK(recombine(X, pf) == f);
}

TEST_CASE("repeated factor against the dense-solver oracle") {
    // x / (x^2 (x+1))
    auto f = make({0, 1}, {{LinFactor{0, 1}, 2}, {LinFactor{1, 1}, 1}});
    auto pf = partial_fraction(f);
    auto oracle = dense_solver_oracle(f);
    CHECK(same_decomposition(pf, oracle));
    CHECK(recombine(X, pf) == f);
}

TEST_CASE("randomized decomposition round trips") {
    Rng rng(99);
    int done = 0;
    while (done < 200) {
        int nfac = rng.int_in(1, 4);
        std::vector<std::pair<LinFactor, int>> den;
        std::map<std::pair<Rational, Rational>, bool> seen;
        for (int i = 0; i < nfac; ++i) {
            Rational a = rng.rational(4, 2);
            Rational b = rng.nonzero_rational(4, 2);
            auto [lf, s] = normalize_linear(a, b);
            (void)s;
            if (seen.count({lf.a, lf.b})) continue;
            seen[{lf.a, lf.b}] = true;
            den.emplace_back(lf, rng.int_in(1, 3));
        }
        if (den.empty()) continue;
        int deg = rng.int_in(0, 6);
        std::vector<Rational> num(static_cast<std::size_t>(deg) + 1);
        for (auto& c : num) c = rng.rational();
        UniRational f = make(num, den);
        if (f.is_zero()) continue;
        auto pf = partial_fraction(f);
        CHECK(recombine(X, pf) == f);
        CHECK(same_decomposition(pf, dense_solver_oracle(f)));
        ++done;
    }
}

TEST_CASE("derivative and evaluation") {
    // d/dx 1/(x - c) = -1/(x - c)^2
    auto f = make({1}, {{LinFactor{-3, 1}, 1}});
    auto d = f.derivative();
    CHECK(d == make({-1}, {{LinFactor{-3, 1}, 2}}));
    CHECK(f.eval(4) == 1);
    CHECK_THROWS_AS(f.eval(3), DomainError);
}

TEST_CASE("numerator roots cancel against the denominator") {
    // (x^2 - 1)/(x - 1) = x + 1
    auto f = make({-1, 0, 1}, {{LinFactor{-1, 1}, 1}});
    CHECK(f.is_polynomial());
    CHECK(f.num() == UniPoly({1, 1}));
}

TEST_CASE("mobius substitution preserves values") {
    Rng rng(5);
    auto f = make({1, 2, 0, 3}, {{LinFactor{1, 2}, 2}, {LinFactor{-1, 1}, 1}});
    // x = (b0 + d0 y)/(a0 + c0 y)
    const Rational a0 = 2, b0 = 1, c0 = 1, d0 = 3;
    auto g = f.mobius_substitute(X, a0, b0, c0, d0);
    for (int t = 0; t < 10; ++t) {
        Rational y = rng.rational(8, 5);
        Rational denom = a0 + c0 * y;
        if (denom == 0) continue;
        Rational x = (b0 + d0 * y) / denom;
        bool skip = false;
        for (const auto& [fac, e] : f.den()) {
            (void)e;
            if (fac.eval(x) == 0) skip = true;
        }
        if (skip) continue;
        CHECK(g.eval(y) == f.eval(x));
    }
}

TEST_CASE("double integral closed form satisfies its defining equation") {
    // A = (a+bx)^{m+1}/prod F^d * II[Y prod F^{d-1} / (a+bx)^{m+3}] obeys
    //   d^2/dx^2 [ A prod F^d / (a+bx)^{m+1} ] = Y prod F^{d-1} / (a+bx)^{m+3}.
    const int m = 4;
    const Rational a = 1, b = 2;
    std::vector<std::pair<LinFactor, int>> ofac{{LinFactor{1, 1}, 2}};
    UniPoly upsilon({3, -1, 2});  // degree 2 <= m
    UniRational prof = profile_from_upsilon(X, upsilon, a, b, m, ofac, Rational(2), Rational(-5));
    UniPoly fprod = UniPoly({1, 1}).pow(2);
    UniRational lhs = prof * UniRational::polynomial(X, fprod);
    lhs = lhs * UniRational(X, UniPoly::constant(1), {{LinFactor{a, b}, m + 1}});
    UniRational rhs = UniRational(X, upsilon * UniPoly({1, 1}), {{LinFactor{a, b}, m + 3}});
    CHECK(lhs.derivative().derivative() == rhs);
}

TEST_CASE("double integral rejects logarithmic cases") {
    // degree m+1 numerator leaves a 1/(a+bx)^2 term under the integral
    CHECK_THROWS_AS(profile_from_upsilon(X, UniPoly::monomial(4), 1, 1, 3, {}, 0, 0), DomainError);
}

TEST_CASE("untwisted closed form is a plain double antiderivative") {
    UniPoly upsilon({6});
    UniRational prof = profile_from_upsilon(X, upsilon, 1, 0, 3, {}, Rational(1), Rational(2));
    // II 6 = 3x^2, plus the affine part
    CHECK(prof == UniRational::polynomial(X, UniPoly({1, 2, 3})));
}
