#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "ratiocert/linear_system.hpp"
#include "test_support.hpp"

using namespace ratiocert;

namespace {

LinearFormSystem central_binomial() { return make_system(1, {{2}}, {{1}, {1}}); }
LinearFormSystem swapped_binomial() { return make_system(1, {{1}, {1}}, {{2}}); }

bool has_code(const ValidationResult& res, IssueCode code) {
    return std::any_of(res.issues.begin(), res.issues.end(),
                       [code](const ValidationIssue& i) { return i.code == code; });
}

}  // namespace

TEST_CASE("validation accepts the hypotheses and rejects each violation") {
    CHECK(validate_system(1, {{2}}, {{1}, {1}}).ok());
    CHECK(validate_system(2, {{1, 1}}, {{1, 0}, {0, 1}}).ok());

    CHECK(has_code(validate_system(1, {{0}, {2}}, {{1}, {1}}), IssueCode::zero_form));
    CHECK(has_code(validate_system(1, {{1}, {1}}, {{1}, {1}}), IssueCode::duplicate_form));
    CHECK(has_code(validate_system(2, {{2, 0}}, {{1, 0}, {1, 0}}), IssueCode::unused_variable));
    CHECK(has_code(validate_system(1, {{3}}, {{1}, {1}}), IssueCode::unbalanced));
    CHECK(has_code(validate_system(1, {{2}}, {{-1}, {3}}), IssueCode::negative_entry));
    CHECK(has_code(validate_system(0, {}, {}), IssueCode::malformed));
    CHECK(has_code(validate_system(2, {{1, 1}, {1}}, {{1, 1}, {1, 1}}), IssueCode::malformed));
    CHECK(has_code(validate_system(1, {}, {{1}}), IssueCode::malformed));
}

TEST_CASE("validation collects every violation, not just the first") {
    // Zero C row, zero D row, duplicate pair, and both columns unbalanced.
    auto res = validate_system(2, {{0, 0}, {1, 2}}, {{1, 2}, {0, 0}, {1, 0}});
    REQUIRE_FALSE(res.ok());
    CHECK(has_code(res, IssueCode::zero_form));
    CHECK(has_code(res, IssueCode::duplicate_form));
    CHECK(has_code(res, IssueCode::unbalanced));
    CHECK(res.issues.size() >= 4);
    CHECK_FALSE(res.system.has_value());
    CHECK_THROWS_AS(make_system(2, {{0, 0}, {1, 2}}, {{1, 2}, {0, 0}, {1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("repeated rows within one family are legal") {
    CHECK(validate_system(1, {{1}, {1}}, {{2}}).ok());
}

TEST_CASE("factorial ratio matches direct evaluation") {
    auto sys = central_binomial();
    // (2m)! / (m! m!) computed from scratch.
    for (long long m = 0; m <= 8; ++m) {
        Integer num = 1, den = 1;
        for (long long i = 2; i <= 2 * m; ++i) num *= i;
        for (long long i = 2; i <= m; ++i) den *= i;
        den *= den;
        CHECK(factorial_ratio(sys, {m}) == Rational(num, den));
    }
    CHECK(factorial_ratio(sys, {3}) == Rational(20));

    auto swapped = swap_system(sys);
    CHECK(factorial_ratio(swapped, {2}) == Rational(Integer(1), Integer(6)));
}

TEST_CASE("swapping inverts the ratio") {
    std::mt19937_64 rng(41);
    for (const auto& sys : testsupport::sample_systems(25, 7001)) {
        auto swapped = swap_system(sys);
        CHECK(swapped.J() == sys.K());
        CHECK(swapped.K() == sys.J());
        std::vector<long long> m(sys.r());
        for (auto& v : m) v = testsupport::rand_below(rng, 6);
        CHECK(factorial_ratio(sys, m) * factorial_ratio(swapped, m) == Rational(1));
    }
}

TEST_CASE("phi at benchmark points") {
    RationalPoint half{Rational(Integer(1), Integer(2))};
    CHECK(phi(central_binomial(), half) == 1);
    CHECK(phi(swapped_binomial(), half) == -1);
}

TEST_CASE("phi vanishes at the origin") {
    for (const auto& sys : testsupport::sample_systems(20, 7002)) {
        RationalPoint zero(sys.r(), Rational(0));
        CHECK(phi(sys, zero) == 0);
    }
}

TEST_CASE("phi is periodic mod Z^r") {
    std::mt19937_64 rng(42);
    for (const auto& sys : testsupport::sample_systems(20, 7003)) {
        for (int iter = 0; iter < 10; ++iter) {
            RationalPoint x = testsupport::rand_unit_point(rng, sys.r());
            RationalPoint shifted = x;
            for (auto& c : shifted)
                c += Rational(testsupport::rand_below(rng, 7) - 3);
            CHECK(phi(sys, shifted) == phi(sys, x));
        }
    }
}

TEST_CASE("integrality scan finds the graded-lex-least witness") {
    auto rep = integrality_scan(central_binomial(), 6);
    CHECK(rep.all_integral);
    CHECK(rep.checked == 7);
    CHECK(rep.witnesses.empty());

    auto bad = integrality_scan(swapped_binomial(), 6);
    REQUIRE_FALSE(bad.all_integral);
    REQUIRE(bad.witnesses.size() == 1);
    CHECK(bad.witnesses[0].m == std::vector<long long>{1});
    CHECK(bad.witnesses[0].value == Rational(Integer(1), Integer(2)));

    auto all = integrality_scan(swapped_binomial(), 6, true);
    CHECK(all.witnesses.size() == 6);  // every m >= 1 fails for this system
    CHECK(all.checked == 7);
}

TEST_CASE("graded box enumeration order") {
    std::vector<std::vector<long long>> seen;
    for_each_graded_box(2, 1, [&](const std::vector<long long>& m) { seen.push_back(m); });
    std::vector<std::vector<long long>> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(seen == expect);
}

TEST_CASE("column max precheck") {
    CHECK(column_max_precheck(central_binomial()).all_ok);
    auto pc = column_max_precheck(swapped_binomial());
    CHECK_FALSE(pc.all_ok);
    REQUIRE(pc.column_ok.size() == 1);
    CHECK_FALSE(pc.column_ok[0]);
}
