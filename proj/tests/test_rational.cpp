#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ratiocert/rational.hpp"

using ratiocert::Integer;
using ratiocert::Rational;
using ratiocert::factorial;
using ratiocert::floor_div;
using ratiocert::harmonic;

namespace {

// Independent reduction oracle: plain Euclid, sign on the numerator.
void reduce_oracle(Integer& num, Integer& den) {
    REQUIRE(den != 0);
    if (den < 0) { num = -num; den = -den; }
    Integer a = num < 0 ? Integer(-num) : num, b = den;
    while (b != 0) { Integer t = a % b; a = b; b = t; }
    if (a != 0) { num /= a; den /= a; }
    if (num == 0) den = 1;
}

void check_invariants(const Rational& q) {
    CHECK(q.den() > 0);
    Integer n = q.num(), d = q.den();
    Integer a = n < 0 ? Integer(-n) : n, b = d;
    while (b != 0) { Integer t = a % b; a = b; b = t; }
    if (n == 0) CHECK(d == 1);
    else CHECK(a == 1);
}

}  // namespace

TEST_CASE("floor division is Euclidean") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(7, -2) == -4);
    CHECK(floor_div(-7, -2) == 3);
    CHECK(floor_div(6, 3) == 2);
    CHECK(floor_div(-6, 3) == -2);
    CHECK(floor_div(0, 5) == 0);
}

TEST_CASE("construction normalizes sign and reduces") {
    CHECK(Rational(Integer(6), Integer(4)) == Rational(Integer(3), Integer(2)));
    Rational q(Integer(6), Integer(-4));
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    Rational z(Integer(0), Integer(-7));
    CHECK(z.num() == 0);
    CHECK(z.den() == 1);
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), std::domain_error);
}

TEST_CASE("floor of rationals") {
    CHECK(Rational(Integer(3), Integer(2)).floor() == 1);
    CHECK(Rational(Integer(-3), Integer(2)).floor() == -2);
    CHECK(Rational(Integer(4), Integer(2)).floor() == 2);
    CHECK(Rational(Integer(-4), Integer(2)).floor() == -2);
    CHECK(Rational(0).floor() == 0);
}

TEST_CASE("canonical text form") {
    CHECK(Rational(20).str() == "20/1");
    CHECK(Rational(Integer(-6), Integer(4)).str() == "-3/2");
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("arithmetic agrees with cross-multiplication oracle") {
    std::mt19937_64 rng(20260815);
    for (int iter = 0; iter < 500; ++iter) {
        long long an = static_cast<long long>(rng() % 101) - 50;
        long long ad = 1 + static_cast<long long>(rng() % 50);
        long long bn = static_cast<long long>(rng() % 101) - 50;
        long long bd = 1 + static_cast<long long>(rng() % 50);
        if (rng() % 2) ad = -ad;
        if (rng() % 2) bd = -bd;
        Rational a{Integer(an), Integer(ad)};
        Rational b{Integer(bn), Integer(bd)};

        Integer sn = Integer(an) * bd + Integer(bn) * ad, sd = Integer(ad) * bd;
        reduce_oracle(sn, sd);
        Rational sum = a + b;
        check_invariants(sum);
        CHECK(sum.num() == sn);
        CHECK(sum.den() == sd);

        Integer pn = Integer(an) * bn, pd = Integer(ad) * bd;
        reduce_oracle(pn, pd);
        Rational prod = a * b;
        check_invariants(prod);
        CHECK(prod.num() == pn);
        CHECK(prod.den() == pd);

        check_invariants(a - b);
        if (bn != 0) {
            Rational quot = a / b;
            check_invariants(quot);
            CHECK(quot * b == a);
        }
    }
}

TEST_CASE("factorial values and memo growth") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(1) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == Integer("2432902008176640000"));
    // Independent product oracle for a larger argument.
    Integer oracle = 1;
    for (int i = 2; i <= 40; ++i) oracle *= i;
    CHECK(factorial(40) == oracle);
    CHECK(factorial(3) == 6);  // smaller argument after growing the memo
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == Rational(0));
    CHECK(harmonic(1) == Rational(1));
    CHECK(harmonic(3) == Rational(Integer(11), Integer(6)));
    CHECK(harmonic(6) == Rational(Integer(49), Integer(20)));
    Rational oracle;
    for (int i = 1; i <= 25; ++i) oracle += Rational(Integer(1), Integer(i));
    CHECK(harmonic(25) == oracle);
}
