#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sbc/expr.hpp"

using namespace sbc::expr;

namespace {

double ev(const std::string& s, double x = 0.0, double y = 0.0, double t = 0.0) {
    return eval(parse(s), Bindings{x, y, t});
}

std::size_t error_offset(const std::string& s) {
    try {
        parse(s);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("expected a parse error for '" << s << "'");
    return 0;
}

const std::vector<std::string> kCorpus{
    "x",
    "-x",
    "x^2 + y",
    "2^3^2",
    "(2^3)^2",
    "-x^2",
    "(-x)^2",
    "x - y - t",
    "x - (y - t)",
    "x / y / t",
    "x / (y / t)",
    "x * y + t",
    "x * (y + t)",
    "-(x + y)",
    "- -x",
    "x^-y",
    "x^(-y)^2",
    "2*pi*t",
    "e^x",
    "sin(pi/2)",
    "cos(2*pi*t)",
    "(1+2*cos(2*pi/3*t))^2/12",
    "(1 + 2*sin(2*pi/3*t) - 4*sin(4*pi/3*t))/6",
    "atan2(y, x)",
    "pow(x, 3) - x*x*x",
    "min(x, max(y, t))",
    "sqrt(x^2 + y^2)",
    "abs(x - y)",
    "exp(-((x-0.25)/0.4)^2)",
    "ln(1 + x^2)",
    "log10(100*y)",
    "tanh(9*y - 9*x) + 1",
    "(5/4 + cos(27*y/5)) / (6*(1 + (3*x - 1)^2))",
    "sinh(x)*cosh(y) - tan(t)",
    "asin(x/2) + acos(y/2) + atan(t)",
    "1e-3 * x",
    "1.5e+2 - y",
    "0.1 + 0.2",
    "3.141592653589793",
    "x*-y",
    "x - -y",
    "x + +y",
    "-2^2",
    "2^-2",
    "((x))",
    "4*cos(2*pi*t)*sin(2*pi*t)/(5 + cos(2*pi*t))",
    "x^2^0.5",
    "(x + y) * (x - y) / (1 + t^2)",
    "-sin(x)^2 - cos(x)^2",
    "1/(1 + exp(-x))",
};

}  // namespace

TEST_CASE("evaluation examples") {
    CHECK(ev("x^2 + y", 2, 3) == 7.0);
    CHECK(ev("sin(pi/2)") == 1.0);
    CHECK(error_offset("x +") == 3);
    CHECK(ev("(1+2*cos(2*pi/3*t))^2/12", 0, 0, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(ev("2^3^2") == 512.0);
    CHECK(ev("-x^2", 2) == -4.0);
}

TEST_CASE("precedence and associativity") {
    CHECK(ev("1 - 2 - 3") == -4.0);
    CHECK(ev("8 / 4 / 2") == 1.0);
    CHECK(ev("2 + 3 * 4") == 14.0);
    CHECK(ev("2 * 3 ^ 2") == 18.0);
    CHECK(ev("-2^2") == -4.0);
    CHECK(ev("2^-1") == 0.5);
    CHECK(ev("(-2)^2") == 4.0);
    CHECK(ev("x*-y", 2, 3) == -6.0);
}

TEST_CASE("functions and constants") {
    CHECK(ev("atan2(1, 1)") == doctest::Approx(std::numbers::pi / 4));
    CHECK(ev("pow(2, 10)") == 1024.0);
    CHECK(ev("min(3, 4) + max(3, 4)") == 7.0);
    CHECK(ev("ln(e)") == doctest::Approx(1.0));
    CHECK(ev("log10(1000)") == doctest::Approx(3.0));
    CHECK(ev("abs(-3) + sqrt(16)") == 7.0);
    CHECK(ev("sinh(0) + cosh(0) + tanh(0)") == 1.0);
}

TEST_CASE("parse errors carry offsets") {
    CHECK(error_offset("foo(x)") == 0);
    CHECK(error_offset("x + z") == 4);
    CHECK(error_offset("sin(x, y)") >= 5);
    CHECK(error_offset("atan2(x)") >= 7);
    CHECK(error_offset("(x + 1") == 6);
    CHECK(error_offset("x 1") == 2);
    CHECK(error_offset("") == 0);
    CHECK_THROWS_AS(parse("1e999"), ParseError);
    CHECK_THROWS_AS(parse("x $ y"), ParseError);
}

TEST_CASE("missing bindings") {
    CHECK_THROWS_AS(eval(parse("x + y"), Bindings{1.0, std::nullopt, std::nullopt}), std::invalid_argument);
    CHECK_NOTHROW(eval(parse("x"), Bindings{1.0, std::nullopt, std::nullopt}));
    CHECK(eval(parse("pi"), Bindings{}) == std::numbers::pi);
}

TEST_CASE("domain errors give non-finite values") {
    CHECK(std::isinf(ev("1/x", 0.0)));
    CHECK(std::isnan(ev("sqrt(x)", -1.0)));
    CHECK(std::isnan(ev("ln(x)", -1.0)));
}

TEST_CASE("free variables") {
    const Expr e = parse("x + t");
    CHECK(e.uses(X));
    CHECK_FALSE(e.uses(Y));
    CHECK(e.uses(T));
    CHECK(parse("pi*e").free_vars() == 0u);
}

TEST_CASE("print-parse round trip on the corpus") {
    REQUIRE(kCorpus.size() == 50);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (const std::string& src : kCorpus) {
        const Expr a = parse(src);
        const std::string printed = to_string(a);
        const Expr b = parse(printed);
        CHECK_MESSAGE(a == b, src << " -> " << printed);
        CHECK(to_string(b) == printed);
        for (int k = 0; k < 3; ++k) {
            const Bindings bind{u(rng), u(rng), u(rng)};
            const double va = eval(a, bind), vb = eval(b, bind);
            CHECK(((std::isnan(va) && std::isnan(vb)) || va == vb));
        }
    }
}

TEST_CASE("structural equality distinguishes trees") {
    CHECK(parse("x - (y - t)") != parse("x - y - t"));
    CHECK(parse("2^3^2") != parse("(2^3)^2"));
    CHECK(parse("x+1") == parse(" x + 1 "));
}

TEST_CASE("literals round trip exactly") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 1e-300, 123456789.123456789}) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        const Expr e = parse(to_string(parse(buf)));
        CHECK(eval(e, Bindings{}) == v);
    }
}

TEST_CASE("forward-mode derivatives agree with finite differences") {
    const std::vector<std::string> exprs{"sin(3*t)*exp(t)", "(1+2*cos(2*pi/3*t))^2/12", "x^t", "atan2(t, 1+t^2)",
                                         "sqrt(1+t^2)/(2+t)", "pow(t, 3) + min(t, 0.4) + max(t, 0.6)",
                                         "ln(2+t)*log10(3+t)", "tanh(t)*sinh(t)/cosh(t)", "asin(t/2)+acos(t/3)",
                                         "abs(t - 0.3)^3"};
    for (const std::string& s : exprs) {
        const Expr e = parse(s);
        for (double t : {0.15, 0.45, 0.8}) {
            const Dual d = eval_dual(e, 1.3, 0.7, t, T);
            const double h = 1e-6;
            const double fd = (eval(e, {1.3, 0.7, t + h}) - eval(e, {1.3, 0.7, t - h})) / (2 * h);
            CHECK(d.v == doctest::Approx(eval(e, {1.3, 0.7, t})).epsilon(1e-15));
            CHECK_MESSAGE(std::abs(d.d - fd) <= 1e-7 * std::max(1.0, std::abs(fd)), s << " at t=" << t);
        }
    }
    const Dual dx = eval_dual(parse("x^2*y"), 3.0, 2.0, 0.0, X);
    CHECK(dx.d == doctest::Approx(12.0));
}
