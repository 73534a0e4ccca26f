#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtorsion/expr.hpp"
#include "gtorsion/rational.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace gtorsion;

// =====================================================================
// exact rationals
// =====================================================================

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(3, 4) * Rational(2, 9)) == Rational(1, 6));
    CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
    CHECK(Rational(7, 3).pow_int(2) == Rational(49, 9));
    CHECK(Rational(2).pow_int(-3) == Rational(1, 8));
    CHECK(Rational(5, 2).str() == "5/2");
    CHECK(Rational(-4).str() == "-4");
    CHECK(Rational::from_decimal("2.5") == Rational(5, 2));
    CHECK(Rational::from_decimal("0.125") == Rational(1, 8));
    CHECK(Rational::from_decimal("17") == Rational(17));
}

TEST_CASE("rational division by zero throws") {
    CHECK_THROWS_AS(Rational(1, 0), RationalError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), RationalError);
    CHECK_THROWS_AS(Rational(0).pow_int(-1), RationalError);
}

// =====================================================================
// parsing and printing
// =====================================================================

TEST_CASE("parse handles the core grammar") {
    CHECK(print(parse("x")) == "x");
    CHECK(print(parse("s1(t)")) == "s1(t)");
    CHECK(print(parse("n3''(t)")) == "n3''(t)");
    CHECK(print(parse("sin(x)")) == "sin(x)");
    CHECK(print(parse("2/3")) == "2/3");
    CHECK(print(parse("x^2")) == "x^2");
    CHECK(print(parse("x^-2")) == "1/x^2");
    CHECK(print(parse("x/(y*z)")) == "x/(y*z)");
    CHECK(print(parse("6*c'(t)^2/(s1(t)*s2(t))")) == "6*c'(t)^2/(s1(t)*s2(t))");
    CHECK(print(parse("x^(1/2)")) == "x^(1/2)");
    CHECK(print(parse("-x")) == "-x");
    CHECK(print(parse("-(x+y)")) == "-x-y");
    CHECK(print(parse("2.5*x")) == "(5/2)*x");
}

TEST_CASE("parse canonicalizes") {
    CHECK(struct_eq(parse("x + x"), parse("2*x")));
    CHECK(struct_eq(parse("x*x"), parse("x^2")));
    CHECK(struct_eq(parse("x - x"), parse("0")));
    CHECK(struct_eq(parse("y*x"), parse("x*y")));
    CHECK(struct_eq(parse("(x+1)*(x-1)"), parse("x^2 - 1")));
    CHECK(struct_eq(parse("-1/2 * n3'(t)"), parse("-(n3'(t)/2)")));
    CHECK(struct_eq(parse("x^2 * x^3"), parse("x^5")));
    CHECK(struct_eq(parse("x^(1/2) * x^(1/2)"), parse("x")));
    CHECK(struct_eq(parse("6/4"), parse("3/2")));
    CHECK(struct_eq(parse("sqrt(9/4)"), parse("3/2")));
    CHECK(struct_eq(parse("abs(-3)"), parse("3")));
    CHECK(struct_eq(parse("2*(x + y) - 2*x"), parse("2*y")));
}

TEST_CASE("parse reports positions on errors") {
    CHECK_THROWS_AS(parse("x +"), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x^y"), ParseError);       // exponent must fold to a rational
    CHECK_THROWS_AS(parse("sin'(x)"), ParseError);   // quotes only on opaque functions
    CHECK_THROWS_AS(parse("x'"), ParseError);        // quotes need an argument list
    CHECK_THROWS_AS(parse("x $ y"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("x +\n* y");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 1);
    }
}

// =====================================================================
// random expressions: round trips, simplify semantics, idempotence
// =====================================================================

namespace {

// Random expression generator over symbols x,y, opaque functions f,g of t,
// and the elementary set; depth-bounded.
Expr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
    std::uniform_int_distribution<int> small(-4, 4);
    switch (pick(rng)) {
        case 0:
            return constant(small(rng));
        case 1: {
            long long d = 1 + (rng() % 4);
            return constant(Rational(small(rng), d));
        }
        case 2:
            return symbol(rng() % 2 ? "x" : "y");
        case 3: {
            int order = static_cast<int>(rng() % 3);
            return apply(rng() % 2 ? "f" : "g", order, symbol("t"));
        }
        case 4:
            return neg(random_expr(rng, depth - 1));
        case 5: {
            Elem which[] = {Elem::Sin, Elem::Cos, Elem::Exp, Elem::Abs};
            return func(which[rng() % 4], random_expr(rng, depth - 1));
        }
        case 6: {
            long long exps[] = {-2, -1, 2, 3};
            return pow(random_expr(rng, depth - 1), Rational(exps[rng() % 4]));
        }
        case 7:
            return pow(random_expr(rng, depth - 1), Rational(1, 2));
        case 8:
            return sum({random_expr(rng, depth - 1), random_expr(rng, depth - 1),
                        random_expr(rng, depth - 1)});
        default:
            return product({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    }
}

}  // namespace

TEST_CASE("simplify preserves semantics and is idempotent on 150 random expressions") {
    std::mt19937_64 rng(2024);
    int checked_semantics = 0;
    for (int i = 0; i < 150; ++i) {
        Expr e = random_expr(rng, 4);
        Expr s;
        try {
            s = simplify(e);
        } catch (const ExprError&) {
            continue;  // e.g. random 0^-2; constructing such inputs is the caller's bug
        }
        Expr s2 = simplify(s);
        CHECK_MESSAGE(struct_eq(s, s2), "not idempotent: ", print(e), " -> ", print(s), " -> ",
                      print(s2));
        EquivResult r = equivalent(e, s, 10, 1e-9, 99 + i);
        CHECK_MESSAGE(r.verdict != Verdict::Different, "simplify changed value of ", print(e),
                      " -> ", print(s), " at ", r.witness.describe());
        if (r.verdict == Verdict::Equal) ++checked_semantics;
    }
    // most random expressions must actually be probe-checkable
    CHECK(checked_semantics > 100);
}

TEST_CASE("print/parse round trip is a fixed point on 150 random expressions") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 150; ++i) {
        Expr e = random_expr(rng, 4);
        Expr s;
        try {
            s = simplify(e);
        } catch (const ExprError&) {
            continue;
        }
        std::string text = print(s);
        Expr back = parse(text);
        CHECK_MESSAGE(struct_eq(s, back), "round trip broke: '", text, "' reparsed as '",
                      print(back), "'");
    }
}

// =====================================================================
// differentiation vs central finite differences
// =====================================================================

namespace {

// Closed forms for the opaque functions so evaluation threads through
// their arguments (point bindings would freeze them).
Bindings closed_funcs() {
    Bindings b;
    b.set_closed("f", "u", parse("sin(u) + u^2"));
    b.set_closed("g", "u", parse("exp(u/2) + u"));
    return b;
}

}  // namespace

TEST_CASE("differentiate matches central differences at 10 points") {
    const char* cases[] = {
        "x^3 + 2*x",
        "sin(x)*cos(x)",
        "exp(x)/x",
        "sqrt(x^2 + 1)",
        "ln(x + 2)",
        "abs(x)*x",
        "f(x)",
        "g(x^2)",
        "f'(x) * x",
        "f(g(x))",
        "(x + sin(x))^3",
        "x^(1/2) + x^(-1/2)",
    };
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> draw(0.5, 2.0);
    const double h = 1e-5;
    for (const char* src : cases) {
        CAPTURE(src);
        Expr e = parse(src);
        Expr d = simplify(differentiate(e, "x"));
        for (int p = 0; p < 10; ++p) {
            double x0 = draw(rng);
            Bindings b = closed_funcs();
            b.set("x", x0);
            Bindings bp = closed_funcs(), bm = closed_funcs();
            bp.set("x", x0 + h);
            bm.set("x", x0 - h);
            double fd = (evaluate(e, bp) - evaluate(e, bm)) / (2 * h);
            double an = evaluate(d, b);
            CHECK(std::fabs(fd - an) <= 1e-6 * (1.0 + std::fabs(fd) + std::fabs(an)));
        }
    }
}

TEST_CASE("differentiate bumps derivative order on opaque functions") {
    Expr e = parse("s1(t)");
    Expr d = simplify(differentiate(e, "t"));
    CHECK(print(d) == "s1'(t)");
    Expr d2 = simplify(differentiate(d, "t"));
    CHECK(print(d2) == "s1''(t)");
    // chain rule through a composite argument
    Expr c = parse("f(t^2)");
    Expr dc = simplify(differentiate(c, "t"));
    CHECK(print(dc) == "2*t*f'(t^2)");
}

TEST_CASE("differentiate treats unrelated symbols as constants") {
    Expr e = parse("x^2 * y + f(y)");
    CHECK(is_zero(simplify(differentiate(e, "z"))));
    CHECK(print(simplify(differentiate(e, "x"))) == "2*x*y");
}

// =====================================================================
// evaluation
// =====================================================================

TEST_CASE("evaluate supports point and closed-form function bindings") {
    Expr e = parse("s(t)^2 + s'(t)");
    Bindings point;
    point.set("t", 9.0).set_func("s", 0, 3.0).set_func("s", 1, 0.25);
    CHECK(evaluate(e, point) == doctest::Approx(9.25));

    Bindings closed;
    closed.set("t", 2.0).set_closed("s", "u", parse("u^3"));
    // s(2)^2 + s'(2) = 64 + 12
    CHECK(evaluate(e, closed) == doctest::Approx(76.0));
}

TEST_CASE("evaluate reports unbound names and domain errors with a path") {
    Bindings b;
    b.set("x", -1.0);
    CHECK_THROWS_AS(evaluate(parse("x + y"), b), EvalError);
    CHECK_THROWS_AS(evaluate(parse("ln(x)"), b), EvalError);
    CHECK_THROWS_AS(evaluate(parse("sqrt(x)"), b), EvalError);
    CHECK_THROWS_AS(evaluate(parse("x^(1/2)"), b), EvalError);
    CHECK_THROWS_AS(evaluate(parse("1/(x+1)"), b), EvalError);
    try {
        evaluate(parse("2 * ln(x)"), b);
        CHECK(false);
    } catch (const EvalError& err) {
        CHECK(std::string(err.what()).find("ln") != std::string::npos);
    }
}

// =====================================================================
// probabilistic equivalence
// =====================================================================

TEST_CASE("equivalent separates equal, different, and inconclusive") {
    Expr a = parse("(x + y)^2");
    Expr b = parse("x^2 + 2*x*y + y^2");
    CHECK(equivalent(a, b, 16, 1e-9).verdict == Verdict::Equal);

    Expr c = parse("x^2 + 2*x*y + y^2 + x/1000000");
    EquivResult r = equivalent(a, c, 16, 1e-9);
    CHECK(r.verdict == Verdict::Different);
    CHECK(!r.witness.describe().empty());

    // ln(-1 - x^2) errors at every probe point (argument always negative)
    Expr bad = parse("ln(0 - 1 - x^2)");
    CHECK(equivalent(bad, bad, 8, 1e-9).verdict == Verdict::Inconclusive);
}

TEST_CASE("equivalent is deterministic for a fixed seed") {
    Expr a = parse("sin(x)^2 + cos(x)^2");
    Expr b = parse("1");
    EquivResult r1 = equivalent(a, b, 16, 1e-9, 1234);
    EquivResult r2 = equivalent(a, b, 16, 1e-9, 1234);
    CHECK(r1.verdict == Verdict::Equal);
    CHECK(r1.max_dev == r2.max_dev);
}

TEST_CASE("trig identity holds under probing") {
    Expr lhs = parse("sin(2*x)");
    Expr rhs = parse("2*sin(x)*cos(x)");
    CHECK(probe_equal(lhs, rhs, 16, 1e-9));
}
