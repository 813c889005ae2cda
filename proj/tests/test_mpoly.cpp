#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sk/linalg.hpp"
#include "sk/mpoly.hpp"
#include "sk/rng.hpp"
#include "support.hpp"

using namespace sk;
using sk::testing::vars1;
using sk::testing::xv;

TEST_CASE("difference of squares") {
    MPoly x = xv(1, 1);
    MPoly lhs = (x + MPoly::constant(1)) * (x - MPoly::constant(1));
    CHECK(lhs == x * x - MPoly::constant(1));
}

TEST_CASE("additive identity and binomial square") {
    MPoly p = xv(1, 1) * xv(1, 2) + MPoly::constant(Rational(3, 7));
    CHECK(p + MPoly{} == p);
    MPoly s = xv(1, 1) + xv(1, 2);
    MPoly expect = xv(1, 1) * xv(1, 1) + (2 * (xv(1, 1) * xv(1, 2))).scaled(1) + xv(1, 2) * xv(1, 2);
    CHECK(s * s == expect);
}

TEST_CASE("pow rejects negative exponents") { CHECK_THROWS_AS(xv(1, 1).pow(-1), DomainError); }

TEST_CASE("elementary symmetric basics") {
    auto v3 = vars1(3);
    MPoly s2 = elementary_symmetric(2, v3);
    MPoly expect = xv(1, 1) * xv(1, 2) + xv(1, 1) * xv(1, 3) + xv(1, 2) * xv(1, 3);
    CHECK(s2 == expect);
    CHECK(elementary_symmetric(0, v3) == MPoly::constant(1));
    CHECK(elementary_symmetric(4, v3).is_zero());
    CHECK_THROWS_AS(elementary_symmetric(-1, v3), DomainError);
}

TEST_CASE("complete homogeneous basics") {
    auto v2 = vars1(2);
    CHECK(complete_homogeneous(1, v2) == xv(1, 1) + xv(1, 2));
    MPoly expect = xv(1, 1) * xv(1, 1) + xv(1, 1) * xv(1, 2) + xv(1, 2) * xv(1, 2);
    CHECK(complete_homogeneous(2, v2) == expect);
    CHECK(complete_homogeneous(0, vars1(1)) == MPoly::constant(1));
    CHECK_THROWS_AS(complete_homogeneous(-2, v2), DomainError);
}

TEST_CASE("partial derivatives") {
    MPoly p = xv(1, 1) * xv(1, 1) * xv(1, 2);
    CHECK(p.derivative(VarId{1, 1}) == (2 * (xv(1, 1) * xv(1, 2))));
    CHECK(MPoly::constant(5).derivative(VarId{1, 2}).is_zero());
}

TEST_CASE("evaluation") {
    std::map<VarId, Rational> pt{{VarId{1, 1}, Rational(1, 2)}, {VarId{1, 2}, Rational(1, 3)}};
    CHECK((xv(1, 1) + xv(1, 2)).eval(pt) == Rational(5, 6));
    std::map<VarId, Rational> pt2{{VarId{1, 1}, 2}, {VarId{1, 2}, 3}};
    CHECK(elementary_symmetric(2, vars1(2)).eval(pt2) == 6);
    CHECK_THROWS_AS((xv(1, 1) + xv(2, 1)).eval(pt), DomainError);
}

TEST_CASE("evaluation is multiplicative at random points") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        MPoly p, q;
        for (int t = 0; t < 4; ++t) {
            p += (xv(1, 1).pow(rng.int_in(0, 3)) * xv(1, 2).pow(rng.int_in(0, 2))).scaled(rng.rational());
            q += (xv(1, 1).pow(rng.int_in(0, 2)) * xv(1, 2).pow(rng.int_in(0, 3))).scaled(rng.rational());
        }
        std::map<VarId, Rational> pt{{VarId{1, 1}, rng.rational()}, {VarId{1, 2}, rng.rational()}};
        CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
    }
}

TEST_CASE("Newton relation p2 across variable counts") {
    for (int n = 2; n <= 6; ++n) {
        auto v = vars1(n);
        MPoly p2;
        for (const auto& var : v) p2 += MPoly::var(var) * MPoly::var(var);
        MPoly s1 = elementary_symmetric(1, v), s2 = elementary_symmetric(2, v);
        MPoly h1 = complete_homogeneous(1, v), h2 = complete_homogeneous(2, v);
        CHECK(p2 == s1 * s1 - s2.scaled(2));
        CHECK(p2 == h1 * h1 - s2.scaled(2));
        CHECK(h2 == s1 * s1 - s2);  // h2 = e1^2 - e2
    }
}

TEST_CASE("derivative agrees with a centered difference in floating point") {
    Rng rng(11);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        MPoly p;
        for (int t = 0; t < 5; ++t) {
            p += (xv(1, 1).pow(rng.int_in(0, 4)) * xv(1, 2).pow(rng.int_in(0, 3))).scaled(rng.rational());
        }
        const VarId v{1, 1};
        std::map<VarId, double> pt{{VarId{1, 1}, 0.37}, {VarId{1, 2}, -0.61}};
        auto ptp = pt, ptm = pt;
        ptp[v] += h;
        ptm[v] -= h;
        double fd = (p.eval_double(ptp) - p.eval_double(ptm)) / (2 * h);
        double sym = p.derivative(v).eval_double(pt);
        CHECK(std::abs(fd - sym) <= 1e-8 * (1 + std::abs(sym)));
    }
}

TEST_CASE("exact division") {
    MPoly a = (xv(1, 1) - xv(1, 2)) * (xv(1, 1) + MPoly::constant(2)) * xv(2, 1);
    auto q = a.divide_exact(xv(1, 1) - xv(1, 2));
    REQUIRE(q.has_value());
    CHECK(*q == (xv(1, 1) + MPoly::constant(2)) * xv(2, 1));
    CHECK_FALSE(a.divide_exact(xv(1, 1) + xv(1, 2)).has_value());
}

TEST_CASE("substitution and renaming") {
    MPoly p = xv(1, 1) * xv(1, 1) + xv(1, 2);
    MPoly sub = p.substitute(VarId{1, 1}, xv(1, 2) + MPoly::constant(1));
    MPoly expect = (xv(1, 2) + MPoly::constant(1)) * (xv(1, 2) + MPoly::constant(1)) + xv(1, 2);
    CHECK(sub == expect);
    std::map<VarId, VarId> swap{{VarId{1, 1}, VarId{1, 2}}, {VarId{1, 2}, VarId{1, 1}}};
    CHECK(elementary_symmetric(2, vars1(3)).rename(swap) == elementary_symmetric(2, vars1(3)));
}

TEST_CASE("exact rank and solving") {
    QMatrix a(3, 3);
    // rows: (1,2,3), (2,4,6), (0,1,1) -> rank 2
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(0, 2) = 3;
    a.at(1, 0) = 2;
    a.at(1, 1) = 4;
    a.at(1, 2) = 6;
    a.at(2, 1) = 1;
    a.at(2, 2) = 1;
    CHECK(rank_ffge(a) == 2);
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    // (1,2,3)x = 0 and (0,1,1)x = 0
    CHECK(ns[0][0] + 2 * ns[0][1] + 3 * ns[0][2] == 0);
    CHECK(ns[0][1] + ns[0][2] == 0);

    QMatrix b(2, 2);
    b.at(0, 0) = Rational(1, 2);
    b.at(0, 1) = 1;
    b.at(1, 0) = 1;
    b.at(1, 1) = -1;
    auto x = solve_linear(b, {Rational(2), Rational(1)});
    REQUIRE(x.has_value());
    CHECK(Rational(1, 2) * (*x)[0] + (*x)[1] == 2);
    CHECK((*x)[0] - (*x)[1] == 1);

    QMatrix c(2, 1);
    c.at(0, 0) = 1;
    c.at(1, 0) = 1;
    CHECK_FALSE(solve_linear(c, {Rational(1), Rational(2)}).has_value());
}
