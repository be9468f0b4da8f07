#include <doctest.h>

#include <cmath>
#include <random>

#include "mtc/numerics.hpp"

using namespace mtc;

TEST_CASE("round_to_integer accepts near-integers and reports the residual") {
    Precision prec;
    RoundedInt r = round_to_integer(2.9999999997, prec);
    CHECK(r.value == 3);
    CHECK(r.residual == doctest::Approx(3e-10).epsilon(0.05));

    r = round_to_integer(0.0, prec);
    CHECK(r.value == 0);
    CHECK(r.residual == 0.0);

    CHECK(round_to_integer(-4.0000001, prec).value == -4);
}

TEST_CASE("round_to_integer rejects the ambiguous midpoint and far values") {
    Precision prec;
    CHECK_THROWS_AS(round_to_integer(0.5, prec), NotNearInteger);
    CHECK_THROWS_AS(round_to_integer(0.25, prec), NotNearInteger);
    CHECK_THROWS_AS(round_to_integer(std::nan(""), prec), NotNearInteger);
}

TEST_CASE("rationalize finds simple fractions by continued fractions") {
    Precision prec;
    CHECK(rationalize(0.333333333, 100, prec) == Rational(1, 3));
    CHECK(rationalize(0.0, 10, prec) == Rational(0));
    CHECK(rationalize(-0.75, 10, prec) == Rational(-3, 4));
}

TEST_CASE("rationalize rejects 1/sqrt(2) within denominator 100") {
    Precision prec;
    const double x = 0.7071067811865476;
    // independent oracle: exhaustive scan over every q <= 100 shows no p/q
    // lies within tol_int/q of the input
    bool any_close = false;
    for (std::int64_t q = 1; q <= 100; ++q) {
        double p = std::nearbyint(x * static_cast<double>(q));
        if (std::abs(x - p / static_cast<double>(q)) <= prec.tol_int / static_cast<double>(q))
            any_close = true;
    }
    CHECK_FALSE(any_close);
    CHECK_THROWS_AS(rationalize(x, 100, prec), NotNearRational);
}

TEST_CASE("rationalize is a left inverse of rational-to-double") {
    Precision prec;
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<std::int64_t> num(-5000, 5000);
    std::uniform_int_distribution<std::int64_t> den(1, 1000);
    for (int trial = 0; trial < 500; ++trial) {
        Rational r(num(rng), den(rng));
        CHECK(rationalize(r.to_double(), 1000000, prec) == r);
    }
}

TEST_CASE("nullspace dimensions on the three canonical cases") {
    Precision prec;
    CHECK(nullspace(CMatrix::Zero(2, 2), prec).size() == 2);
    CHECK(nullspace(CMatrix::Identity(2, 2), prec).empty());

    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0);
    auto basis = nullspace(m, prec);
    REQUIRE(basis.size() == 1);
    // the kernel is spanned by (1, -1): components are opposite
    CHECK(std::abs(basis[0](0) + basis[0](1)) < 1e-12);
    CHECK(std::abs(basis[0](0)) > 0.1);
}

TEST_CASE("nullspace projector is deterministic and idempotent") {
    Precision prec;
    CMatrix m(3, 3);
    m << Complex(1, 0), Complex(2, 0), Complex(3, 0), //
        Complex(2, 0), Complex(4, 0), Complex(6, 0),  //
        Complex(0, 1), Complex(0, 2), Complex(0, 3);
    auto run = [&]() {
        auto basis = nullspace(m, prec);
        CMatrix p = CMatrix::Zero(3, 3);
        for (const auto& v : basis) p += v * v.adjoint();
        return p;
    };
    CMatrix p1 = run(), p2 = run();
    CHECK(mat_inf_norm(p1 - p2) <= 10 * prec.tol_zero);
    CHECK(mat_inf_norm(p1 * p1 - p1) <= 10 * prec.tol_zero);
    CHECK(mat_inf_norm(p1 - p1.adjoint()) <= 10 * prec.tol_zero);
}

TEST_CASE("matrix helpers") {
    Precision prec;
    CMatrix m(2, 3);
    m << Complex(1, 1), Complex(0, 0), Complex(2, 0), //
        Complex(0, -1), Complex(1, 0), Complex(0, 0);

    CHECK(mat_inf_norm(mat_product(CMatrix::Identity(2, 2), m) - m) == 0.0);
    CHECK(mat_inf_norm(mat_adjoint(mat_adjoint(m)) - m) == 0.0);

    CMatrix a(2, 2);
    a << Complex(1, 0), Complex(-2, 0), Complex(0, 0), Complex(1, 0);
    CHECK(mat_inf_norm(a) == doctest::Approx(3.0));

    CHECK_THROWS_AS(mat_product(m, m), DimensionMismatch);
    CHECK_THROWS_AS(check_cmatrix(CMatrix::Zero(0, 2)), DimensionMismatch);
    (void)prec;
}

TEST_CASE("precision guards") {
    Precision bad;
    bad.tol_int = 0.5;
    CHECK_THROWS_AS(check_precision(bad), Error);
    bad = Precision{};
    bad.tol_zero = 0.0;
    CHECK_THROWS_AS(check_precision(bad), Error);
    CHECK_NOTHROW(check_precision(Precision{}));
}

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(80, 72) == Rational(10, 9));
    CHECK(Rational(10, 9).mod1() == Rational(1, 9));
    CHECK((-Rational(1, 4)).mod1() == Rational(3, 4));
    CHECK(Rational(-51, 2).mod(24) == Rational(45, 2) - Rational(24)* Rational(2) + Rational(24)* Rational(2) - Rational(0)); // -25.5 mod 24 = 22.5
    CHECK(Rational(-51, 2).mod(24) == Rational(45, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational::parse("3/16") == Rational(3, 16));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(3, 16).str() == "3/16");
    CHECK(Rational(0).str() == "0/1");
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational::parse("x/2"), ParseError);
}
