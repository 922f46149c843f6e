#include <doctest.h>

#include <random>

#include "iex/scalar.hpp"

using namespace iex;

namespace {

const Field Q = Field::rationals();
const Field Q5 = Field::quadratic(5);

Scalar golden() { return Scalar(Q5, Rational(1, 2), Rational(1, 2)); }  // (1+sqrt5)/2

// Independent sign oracle: decide sign of a + b*sqrt(d) by bisecting a
// rational enclosure of sqrt(d) until it separates from -a/b.
int sign_by_bisection(const Scalar& x) {
    const Rational& a = x.rat_part();
    const Rational& b = x.quad_part();
    if (b == 0) return a.sign();
    const Rational target = -a / b;
    Rational lo(0), hi(x.field().d());
    for (int it = 0; it < 20000; ++it) {
        if (hi < target) return -b.sign();   // sqrt(d) < -a/b
        if (lo > target) return b.sign();    // sqrt(d) > -a/b
        const Rational mid = (lo + hi) / 2;
        if (mid * mid < Rational(x.field().d()))
            lo = mid;
        else
            hi = mid;
    }
    return 0;  // unreachable for irrational sqrt(d) vs rational target
}

}  // namespace

TEST_CASE("field arithmetic on rationals") {
    const Scalar third(Q, Rational(1, 3)), sixth(Q, Rational(1, 6));
    CHECK((third + sixth).as_rational() == Rational(1, 2));
    const Scalar x(Q, Rational(3, 5));
    CHECK((x / x).as_rational() == 1);
    CHECK_THROWS_AS(x / x.zero(), PreconditionError);
    // (x + y) - y == x, (x * y) / y == x
    const Scalar y(Q, Rational(7, 11));
    CHECK((x + y) - y == x);
    CHECK((x * y) / y == x);
}

TEST_CASE("golden ratio identity") {
    const Scalar phi = golden();
    const Scalar psi = phi - phi.one();  // (-1+sqrt5)/2
    CHECK(phi * psi == phi.one());
    CHECK((phi * psi).str() == "1");
}

TEST_CASE("comparisons") {
    CHECK(Scalar(Q, Rational(2, 5)).compare(Scalar(Q, Rational(3, 5))) < 0);
    // sqrt5 - 2 < 1/4 because (9/4)^2 = 81/16 > 5
    const Scalar lhs(Q5, Rational(-2), Rational(1));
    CHECK(lhs.compare(Scalar(Q5, Rational(1, 4))) < 0);
    CHECK(lhs.compare(lhs) == 0);
}

TEST_CASE("order embedding matches cross multiplication") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const long p1 = static_cast<long>(rng() % 200) - 100;
        const long q1 = static_cast<long>(rng() % 99) + 1;
        const long p2 = static_cast<long>(rng() % 200) - 100;
        const long q2 = static_cast<long>(rng() % 99) + 1;
        const Scalar a(Q, Rational(p1, q1)), b(Q, Rational(p2, q2));
        const long cross = p1 * q2 - p2 * q1;
        const int want = cross == 0 ? 0 : (cross < 0 ? -1 : 1);
        CHECK(a.compare(b) == want);
    }
}

TEST_CASE("quadratic sign agrees with bisection oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const long pa = static_cast<long>(rng() % 41) - 20;
        const long pb = static_cast<long>(rng() % 41) - 20;
        const long qa = static_cast<long>(rng() % 9) + 1;
        const long qb = static_cast<long>(rng() % 9) + 1;
        const Scalar x(Q5, Rational(pa, qa), Rational(pb, qb));
        CHECK(x.sign() == sign_by_bisection(x));
    }
}

TEST_CASE("mixing fields is an error") {
    const Scalar a(Q, Rational(1, 2));
    const Scalar b(Q5, Rational(1, 2));
    CHECK_THROWS_AS(a + b, FieldMismatchError);
    CHECK_THROWS_AS(a.compare(b), FieldMismatchError);
}

TEST_CASE("field construction guards") {
    CHECK_THROWS_AS(Field::quadratic(1), PreconditionError);
    CHECK_THROWS_AS(Field::quadratic(12), PreconditionError);  // 4 | 12
    CHECK(Field::quadratic(10).d() == 10);
    CHECK(Field::from_name("Q(sqrt 5)") == Q5);
    CHECK(Field::from_name("Q") == Q);
    CHECK_THROWS_AS(Field::from_name("R"), ParseError);
}

TEST_CASE("textual form round-trips") {
    for (const char* s : {"0", "7", "-3", "2/3", "-11/4"}) {
        CHECK(Scalar::parse(s, Q).str() == s);
    }
    for (const char* s : {"1/2+1/2*sqrt(5)", "1/2-3/4*sqrt(5)", "-2+1*sqrt(5)", "0+7/2*sqrt(5)"}) {
        const Scalar x = Scalar::parse(s, Q5);
        CHECK(Scalar::parse(x.str(), Q5) == x);
    }
    // canonicalization is idempotent and lowest-terms
    CHECK(Scalar::parse("2/4", Q).str() == "1/2");
    CHECK(Scalar::parse("-4/-8", Q).str() == "1/2");
    CHECK_THROWS_AS(Scalar::parse("1/0", Q), ParseError);
    CHECK_THROWS_AS(Scalar::parse("", Q), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1+1*sqrt(7)", Q5), FieldMismatchError);
    CHECK_THROWS_AS(Scalar::parse("1+1*sqrt(5)", Q), FieldMismatchError);
}
