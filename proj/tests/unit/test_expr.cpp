#include "ddeq/expr.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace ddeq;
using namespace testing_support;

namespace {

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> items = {
        "x", "x^2", "x^3", "-x", "-x^2", "(-x)^2", "2*x", "x/2", "1/x", "x^2/2 + 1/4",
        "(x+1)^2", "(x-1)^3", "x*x*x", "x - 1 - 2", "x - (1 - 2)", "x/2/3", "x/(2/3)", "2^3^2", "(2^3)^2", "x^-2",
        "x^(1/2)", "x^0.5", "0.25*x", "1e-3*x", "1.5e2", "3.14159", "pi", "e", "2*pi*x", "e^x",
        "e^(2*x)", "exp(x)", "exp(-x)", "exp(-2*x)*cos(3*x)", "sin(x)", "cos(x)", "tan(x)", "sinh(x)", "cosh(x)", "ln(x)",
        "ln(x^2 + 1)", "sin(2*pi*x)", "cos(x)^2 + sin(x)^2", "sin(cos(tan(x)))", "exp(sin(x))*ln(cosh(x))", "1/(1 + x^2)",
        "(x + 1)/(x - 1)", "-(x + 1)", "--x", "x*-2", "3 - -x", "((x))", "x^2 - 2*x + 1", "x^10 - x^9/9",
        "sinh(x)/cosh(x)", "pi^2*x", "2^(1/2)*x", "e^-x", "cos(14.99535255555277*x)*exp(-5.537356565974643*x)",
        "0.1 + 0.2*x", "x - 0.5", "(x - 0.5)^2 + 2*(x - 1)",
    };
    return items;
}

double central_difference(const Expr& e, double x, double h = 1e-6) {
    return (evaluate(e, x + h) - evaluate(e, x - h)) / (2 * h);
}

} // namespace

TEST_CASE("parse builds the expected trees") {
    Expr e = parse("x^2");
    CHECK(e.kind() == Expr::Kind::binary);
    CHECK(e.op() == BinOp::pow);
    CHECK(e.lhs().kind() == Expr::Kind::variable);
    CHECK(e.rhs().is_constant_node(2));

    Expr sum = parse("x - 1 - 2");  // left associative
    CHECK(sum.op() == BinOp::sub);
    CHECK(sum.rhs().is_constant_node(2));

    Expr neg = parse("-x^2");  // ^ binds tighter than unary minus
    CHECK(neg.kind() == Expr::Kind::negate);

    CHECK(parse("0.25").value() == Rational(1, 4));
    CHECK(parse("e^x") == parse("exp(x)"));
    CHECK(parse("x \xE2\x88\x92 1") == parse("x - 1"));  // U+2212 minus sign
    CHECK(parse("  x   +1 ") == parse("x+1"));
}

TEST_CASE("parse errors carry offset and expectations") {
    try {
        parse("sin(2*pi*x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::syntax);
        CHECK(e.offset() == 10);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "')'") != e.expected().end());
        CHECK(std::string(e.what()).find("end of input") != std::string::npos);
    }
    try {
        parse("foo(x)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::unknown_identifier);
        CHECK(e.offset() == 0);
    }
    try {
        parse("x^x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::non_constant_exponent);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x +"), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x)"), ParseError);
    CHECK_THROWS_AS(parse("sin x"), ParseError);

    std::string deep;
    for (int i = 0; i < 100; ++i) deep += "(";
    deep += "x";
    for (int i = 0; i < 100; ++i) deep += ")+x";
    try {
        parse(deep);
        FAIL("expected a depth error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::too_deep);
    }
    ParseOptions tight;
    tight.max_depth = 3;
    CHECK_THROWS_AS(parse("sin(cos(tan(exp(x))))", tight), ParseError);
}

TEST_CASE("render round trip over the corpus") {
    REQUIRE(corpus().size() >= 50);
    for (const auto& s : corpus()) {
        CAPTURE(s);
        Expr e = parse(s);
        std::string text = render(e);
        CAPTURE(text);
        CHECK(parse(text) == e);
        CHECK(render(parse(text)) == text);
    }
}

TEST_CASE("differentiate examples") {
    CHECK(render(differentiate(parse("exp(x)"))) == "exp(x)");
    CHECK(render(differentiate(parse("x^2"))) == "2*x");
    CHECK(render(differentiate(parse("sin(2*x)"))) == "2*cos(2*x)");
    CHECK(differentiate(parse("7")).is_constant_node(0));
    CHECK(differentiate(parse("x")).is_constant_node(1));
}

TEST_CASE("symbolic derivatives agree with central differences") {
    struct Case {
        std::string text;
        double lo, hi;
    };
    const std::vector<Case> cases = {
        {"exp(x)", -2, 2},          {"ln(x)", 0.5, 3},        {"sin(x)", -3, 3},
        {"cos(x)", -3, 3},          {"tan(x)", -1.2, 1.2},    {"sinh(x)", -2, 2},
        {"cosh(x)", -2, 2},         {"exp(-2*x)*cos(3*x)", -1, 1}, {"x^(1/2)", 0.5, 4},
        {"2^(1/2)*x^3", -2, 2},             {"(x + 1)/(x^2 + 1)", -2, 2},  {"ln(cosh(x))*sin(x^2)", -1.5, 1.5},
        {"x^3^0.5 + pi*x", 0.5, 2},    {"tan(x)^3 / (2 + sin(x))", -1, 1},
    };
    for (const auto& c : cases) {
        Expr e = parse(c.text);
        Expr d = differentiate(e);
        for (int i = 0; i < 20; ++i) {
            double x = random_double(c.lo, c.hi);
            double fd = central_difference(e, x);
            double sym = evaluate(d, x);
            CAPTURE(c.text);
            CAPTURE(x);
            CHECK(std::abs(fd - sym) <= std::max(1e-6, 1e-6 * std::abs(sym)));
        }
    }
}

TEST_CASE("evaluate examples and errors") {
    CHECK(evaluate(parse("x^2"), 0.5) == 0.25);
    CHECK(evaluate(parse("exp(x)"), -0.5) == doctest::Approx(0.6065306597126334).epsilon(1e-15));
    CHECK(evaluate(parse("pi"), 0) == M_PI);
    CHECK(evaluate(parse("e"), 0) == M_E);
    try {
        evaluate(parse("1/x"), 0.0);
        FAIL("expected an evaluation error");
    } catch (const EvalError& e) {
        CHECK(std::string(e.what()).find("division by zero") != std::string::npos);
        CHECK(e.subtree() == "1/x");
    }
    CHECK_THROWS_AS(evaluate(parse("ln(x)"), -1.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("ln(x)"), 0.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("x^0.5"), -1.0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("exp(x)"), 1000.0), EvalError);
}

TEST_CASE("to_polynomial examples") {
    CHECK(*to_polynomial(parse("(x+1)^2")) == Poly{1, 2, 1});
    CHECK_FALSE(to_polynomial(parse("exp(x)")).has_value());
    CHECK(*to_polynomial(parse("x^2/2 + 1/4")) == Poly{Rational(1, 4), 0, Rational(1, 2)});
    CHECK_FALSE(to_polynomial(parse("pi*x")).has_value());
    CHECK_FALSE(to_polynomial(parse("1/x")).has_value());
    CHECK_FALSE(to_polynomial(parse("x^0.5")).has_value());
    CHECK_FALSE(to_polynomial(parse("x/0")).has_value());
    CHECK(*to_polynomial(parse("0.5*x - x/4")) == Poly{0, Rational(1, 4)});
    CHECK(*to_polynomial(from_polynomial(Poly{Rational(-3, 7), 0, 5, 1})) == Poly{Rational(-3, 7), 0, 5, 1});
}

TEST_CASE("random polynomial expressions evaluate like their exact form") {
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = random_poly(trial % 8);
        Poly r = random_poly(2);
        // Build an unexpanded expression (p * r) + p and compare with the exact route.
        Expr e = from_polynomial(p) * from_polynomial(r) + from_polynomial(p);
        auto exact = to_polynomial(e);
        REQUIRE(exact.has_value());
        CHECK(*exact == p * r + p);
        for (int i = 0; i < 100; ++i) {
            double x = random_double(-2, 2);
            double a = evaluate(e, x);
            double b = to_double((*exact)(exact_rational(x)));
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("derivative tower of x^n gives falling factorials") {
    for (unsigned n = 0; n <= 8; ++n) {
        DerivativeTower tower(parse("x^" + std::to_string(n)));
        for (unsigned i = 0; i <= n; ++i) {
            Rational falling = 1;
            for (unsigned j = 0; j < i; ++j) falling *= n - j;
            auto p = to_polynomial(tower.at(i));
            REQUIRE(p.has_value());
            CHECK(*p == Poly::monomial(n - i, falling));
        }
        CHECK(to_polynomial(tower.at(n + 1))->is_zero());
    }
}

TEST_CASE("derivative tower is shared and safe for concurrent readers") {
    DerivativeTower tower(parse("exp(-2*x)*cos(3*x)"));
    DerivativeTower copy = tower;
    std::vector<std::thread> threads;
    std::vector<std::string> rendered(8);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] { rendered[static_cast<size_t>(t)] = render(tower.at(6)); });
    for (auto& th : threads) th.join();
    for (const auto& r : rendered) CHECK(r == rendered[0]);
    CHECK(copy.computed() >= 7);
    CHECK(copy.at(1) == differentiate(copy.at(0)));
}

TEST_CASE("substitute and shifted") {
    Expr e = parse("x^2 + x");
    CHECK(*to_polynomial(shifted(e, Rational(1))) == Poly{2, 3, 1});
    CHECK(evaluate(shifted(parse("exp(x)"), Rational(-1, 2)), 1.0) == doctest::Approx(std::exp(0.5)));
    CHECK(*to_polynomial(substitute(e, parse("2*x"))) == Poly{0, 2, 4});
}

TEST_CASE("simplify folds constants and collects like terms") {
    CHECK(render(simplify(parse("x + x"))) == "2*x");
    CHECK(render(simplify(parse("0*x + 1*x"))) == "x");
    CHECK(render(simplify(parse("2*3 + x - x"))) == "6");
    CHECK(render(simplify(parse("x*x"))) == "x^2");
    CHECK(render(simplify(parse("exp(0)"))) == "1");
    CHECK(render(simplify(parse("ln(exp(x))"))) == "x");
}
