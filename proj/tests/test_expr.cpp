#include "doctest.h"

#include "sharing/evaluate.hpp"
#include "sharing/laurent.hpp"
#include "support/generators.hpp"

using namespace sharing;
using namespace sharing::testing;

namespace {

std::complex<double> eval(const Expr &e, std::complex<double> z) { return Program(e)(z); }

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("parse builds the grammar-forced trees") {
    Expr e = parse("1/z + exp(z)");
    REQUIRE(e.kind() == ExprKind::Add);
    CHECK(e.lhs().kind() == ExprKind::Divide);
    CHECK(e.lhs().lhs().is_rational(1));
    CHECK(e.lhs().rhs().kind() == ExprKind::Variable);
    CHECK(e.rhs().kind() == ExprKind::Exp);

    Expr s = parse("sin(z)^3");
    REQUIRE(s.kind() == ExprKind::IntegerPower);
    CHECK(s.exponent() == 3);
    CHECK(s.lhs().kind() == ExprKind::Sin);

    CHECK(parse("pi").kind() == ExprKind::Pi);
    CHECK(parse("i").kind() == ExprKind::ImaginaryUnit);
    CHECK(parse("-z").kind() == ExprKind::Negate);
    CHECK(parse("z^(-2)").exponent() == -2);
    CHECK(parse("2^3").is_rational(8));
}

TEST_CASE("parse errors carry offsets") {
    try {
        parse("exp(z");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.offset == 5);
    }
    CHECK_THROWS_AS(parse("z^(1/2)"), ParseError);
    CHECK_THROWS_AS(parse("0.5*z"), ParseError);
    CHECK_THROWS_AS(parse("log(z)"), ParseError);
    CHECK_THROWS_AS(parse("z +"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("z)"), ParseError);
}

TEST_CASE("language restrictions") {
    Expr z = Expr::variable();
    CHECK_THROWS_AS(exp(Expr::integer(1) / z), ExprError);
    CHECK_THROWS_AS(sin(pow(z, -1)), ExprError);
    CHECK_THROWS_AS(z / Expr(), ExprError);
    // parse reports the same conditions with a position
    CHECK_THROWS_AS(parse("exp(1/z)"), ParseError);
    CHECK_THROWS_AS(parse("z/0"), ParseError);
    CHECK_NOTHROW(parse("exp(z/2)"));
    CHECK_NOTHROW(parse("exp(sin(z)^2 + z/3)"));
    CHECK_THROWS_AS(reciprocal_of(Expr()), ExprError);
}

TEST_CASE("printing") {
    CHECK(to_string(parse("1/z + exp(z)")) == "1/z + exp(z)");
    CHECK(to_string(parse("z - (z - 1)")) == "z - (z - 1)");
    CHECK(to_string(parse("(z+1)^2")) == "(z + 1)^2");
    CHECK(to_string(parse("z^(-3)")) == "z^(-3)");
    CHECK(to_string(parse("-z^2")) == "-z^2");
}

TEST_CASE("differentiate") {
    std::complex<double> p(0.5, 1.0 / 3);
    // Reference values from sympy.
    CHECK(close(eval(differentiate(parse("z^2*exp(z)")), p), {1.2349025689730944284, 2.172347481368055566}));
    CHECK(close(eval(differentiate(parse("sin(z)/z")), p), {-0.16796450888157622178, -0.10403153742296892289}));
    CHECK(close(eval(differentiate(parse("exp(sin(z))")), p), {1.5492191628235063043, 0.19325933952316509622}));
    CHECK(close(eval(differentiate(parse("1/(1+z^2)")), p), {-0.85333173203227622443, -0.015824057046350159505}));
    CHECK(close(eval(differentiate(parse("cos(z)^3")), p), {-1.5341422658948420817, -0.28582898695308283745}));

    CHECK(close(eval(differentiate(parse("1/z + exp(z)")), p), eval(parse("-1/z^2 + exp(z)"), p)));
    CHECK(close(eval(differentiate(parse("exp(z^2)")), p), eval(parse("2*z*exp(z^2)"), p)));
    CHECK(to_string(differentiate(parse("sin(z)"))) == "cos(z)");
}

TEST_CASE("reciprocal and mobius") {
    Expr z = Expr::variable();
    CHECK(to_string(reciprocal_of(z)) == "1/z");
    CHECK(to_string(reciprocal_of(parse("sin(z)"))) == "1/sin(z)");
    Expr rr = reciprocal_of(reciprocal_of(z));
    SymConst zero(0);
    CHECK(same_order(local_order(rr, zero), local_order(z, zero)));

    Expr e = parse("z + z^2*exp(z)");
    std::complex<double> p(0.3, -0.7);
    CHECK(close(eval(apply_mobius(Mobius::inversion(), e), p), 1.0 / eval(e, p)));
    CHECK(close(eval(apply_mobius(Mobius::identity(), e), p), eval(e, p)));
    CHECK(close(eval(apply_mobius(Mobius::translation(Expr::integer(1)), z), p), p + 1.0));
    CHECK_THROWS_AS(Mobius(Expr::integer(1), Expr::integer(2), Expr::integer(2), Expr::integer(4)), ExprError);
    CHECK_THROWS_AS(Mobius(z, Expr::integer(0), Expr::integer(0), Expr::integer(1)), ExprError);
    CHECK(Mobius::inversion().to_string() == "w -> ((0)*w + (1))/((1)*w + (0))");
}

TEST_CASE("constant_value") {
    CHECK(*constant_value(parse("2*pi - pi")) == SymConst::pi());
    CHECK(*constant_value(parse("sin(3*pi)")) == SymConst(0));
    CHECK_FALSE(constant_value(parse("z")));
    CHECK_THROWS_AS(constant_value(parse("1/(sin(pi/4) - cos(pi/4))")), ExprError);
}

TEST_CASE("print/parse round trip keeps local orders") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Expr e = random_meromorphic(rng, 3);
        Expr back = parse(to_string(e));
        CHECK(to_string(back) == to_string(e));
        for (int k = 0; k < 20; ++k) {
            SymConst p = random_point(rng);
            LocalOrder a = local_order(e, p), b = local_order(back, p);
            if (a.decisive()) CHECK_MESSAGE(same_order(a, b), to_string(e), " at ", p.to_string());
        }
    }
}

TEST_CASE("differentiate is linear") {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        Expr a = random_meromorphic(rng, 2), b = random_meromorphic(rng, 2);
        Expr lhs = differentiate(a + b), rhs = differentiate(a) + differentiate(b);
        SymConst p = special_point(rng);
        LocalOrder x = local_order(lhs, p), y = local_order(rhs, p);
        if (x.decisive() && y.decisive()) CHECK_MESSAGE(same_order(x, y), to_string(a), " + ", to_string(b));
    }
}

TEST_CASE("mobius composition") {
    Rng rng(13);
    auto coeff = [&] { return Expr::constant(GaussRational(mpq_class(pick(rng, -4, 4), pick(rng, 1, 3)))); };
    int done = 0;
    while (done < 20) {
        Expr a1 = coeff(), b1 = coeff(), c1 = coeff(), d1 = coeff();
        Expr a2 = coeff(), b2 = coeff(), c2 = coeff(), d2 = coeff();
        Mobius m1 = Mobius::identity(), m2 = Mobius::identity();
        try {
            m1 = Mobius(a1, b1, c1, d1);
            m2 = Mobius(a2, b2, c2, d2);
        } catch (const ExprError &) {
            continue;
        }
        Expr e = random_entire(rng, 2);
        Expr twice, composed;
        try {
            twice = apply_mobius(m2, apply_mobius(m1, e));
            composed = apply_mobius(m2.compose(m1), e);
        } catch (const ExprError &) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            SymConst p = special_point(rng);
            LocalOrder x = local_order(twice, p), y = local_order(composed, p);
            if (x.decisive() && y.decisive()) CHECK_MESSAGE(same_order(x, y), to_string(e), " at ", p.to_string());
        }
        ++done;
    }
}
