#include <doctest.h>

#include <random>

#include "iex/iet.hpp"

using namespace iex;

namespace {

const Field Q = Field::rationals();
const Field Q5 = Field::quadratic(5);

IntervalExchange make_q(std::vector<long> nums, std::vector<int> pi) {
    std::vector<Scalar> lambda;
    for (long v : nums) lambda.emplace_back(Q, Rational(v));
    return IntervalExchange(Q, lambda, Permutation(pi));
}

IntervalExchange golden_iet() {
    // lambda = (phi, 1), pi = (2,1)
    std::vector<Scalar> lambda{Scalar(Q5, Rational(1, 2), Rational(1, 2)),
                               Scalar(Q5, Rational(1))};
    return IntervalExchange(Q5, lambda, Permutation({2, 1}));
}

Scalar q_of(long num, long den = 1) { return Scalar(Q, Rational(num, den)); }

}  // namespace

TEST_CASE("permutation basics") {
    const Permutation p({3, 1, 2});
    CHECK(p(1) == 3);
    CHECK(p.inv(3) == 1);
    CHECK(p.inverse() == Permutation({2, 3, 1}));
    CHECK(p.is_irreducible());
    CHECK_FALSE(Permutation({1, 2}).is_irreducible());
    CHECK_FALSE(Permutation({2, 1, 3}).is_irreducible());
    CHECK_THROWS_AS(Permutation({1, 1}), PreconditionError);
}

TEST_CASE("evaluation") {
    const IntervalExchange t = make_q({3, 2}, {2, 1});
    CHECK(t.apply(q_of(1)) == q_of(3));
    CHECK(t.apply(q_of(4)) == q_of(1));
    CHECK_THROWS_AS(t.apply(q_of(5)), PreconditionError);
    CHECK_THROWS_AS(t.apply(q_of(-1)), PreconditionError);

    const IntervalExchange r = make_q({1, 1, 1}, {3, 2, 1});
    CHECK(r.apply(q_of(0)) == q_of(2));
}

TEST_CASE("inverse") {
    const IntervalExchange t = make_q({3, 2}, {2, 1});
    const IntervalExchange ti = t.invert();
    CHECK(ti.lengths()[0] == q_of(2));
    CHECK(ti.lengths()[1] == q_of(3));
    CHECK(ti.permutation() == Permutation({2, 1}));
    CHECK(ti.invert() == t);

    const IntervalExchange u = make_q({1, 1, 1}, {2, 3, 1});
    CHECK(u.invert().permutation() == Permutation({3, 1, 2}));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Scalar x(Q, Rational(rng() % 50, 10));
        if (x >= t.total()) continue;
        CHECK(ti.apply(t.apply(x)) == x);
    }
}

TEST_CASE("discontinuities") {
    CHECK(make_q({3, 2}, {2, 1}).discontinuities() == std::vector<Scalar>{q_of(3)});
    const auto d = make_q({1, 2, 3}, {3, 2, 1}).discontinuities();
    CHECK(d == std::vector<Scalar>{q_of(1), q_of(3)});
    CHECK(make_q({1, 1}, {2, 1}).discontinuities() == std::vector<Scalar>{q_of(1)});
}

TEST_CASE("idoc check") {
    // period-2 rational rotation: backward orbit of the breakpoint collides
    const IntervalExchange t = make_q({1, 1}, {2, 1});
    const IdocResult bad = t.idoc_check(4);
    CHECK_FALSE(bad.pass);
    CHECK(bad.i1 == bad.i2);
    CHECK(bad.j1 != bad.j2);

    const IdocResult good = golden_iet().idoc_check(50);
    CHECK(good.pass);
    CHECK(good.depth == 50);

    CHECK_THROWS_AS(t.idoc_check(0), PreconditionError);
}

TEST_CASE("first return examples") {
    const IntervalExchange t = make_q({3, 2}, {2, 1});

    ReturnMap r = t.first_return(q_of(3));
    CHECK(r.atom_lengths == std::vector<Scalar>{q_of(1), q_of(2)});
    CHECK(r.return_times == std::vector<BigInt>{BigInt(1), BigInt(2)});
    CHECK(r.induced(Q).permutation() == Permutation({2, 1}));

    r = t.first_return(q_of(5));
    CHECK(r.return_times == std::vector<BigInt>{BigInt(1), BigInt(1)});
    CHECK(r.induced(Q) == t);

    r = t.first_return(q_of(2));
    CHECK(r.atom_lengths == std::vector<Scalar>{q_of(1), q_of(1)});
    CHECK(r.return_times == std::vector<BigInt>{BigInt(3), BigInt(2)});

    CHECK_THROWS_AS(t.first_return(q_of(0)), PreconditionError);
    CHECK_THROWS_AS(t.first_return(q_of(6)), PreconditionError);
}

TEST_CASE("first return reproduces subtractive euclid at m=2") {
    const IntervalExchange t = make_q({7, 3}, {2, 1});
    const ReturnMap r = t.first_return(q_of(7));
    CHECK(r.atom_lengths == std::vector<Scalar>{q_of(4), q_of(3)});
    const IntervalExchange u = make_q({2, 9}, {2, 1});
    const ReturnMap r2 = u.first_return(q_of(9));
    CHECK(r2.atom_lengths == std::vector<Scalar>{q_of(2), q_of(7)});
}

TEST_CASE("double return equals composed induced map") {
    const IntervalExchange t = make_q({3, 2}, {2, 1});
    const Scalar L = q_of(3);
    const IntervalExchange r = t.first_return(L).induced(Q);
    const IntervalExchange rr = compose(r, r);
    // direct second-return at sample points
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const Scalar x(Q, Rational(rng() % 300, 100));
        if (x >= L) continue;
        Scalar y = x;
        int returns = 0;
        for (int step = 0; step < 100 && returns < 2; ++step) {
            y = t.apply(y);
            if (y < L) ++returns;
        }
        REQUIRE(returns == 2);
        CHECK(rr.apply(x) == y);
    }
}

TEST_CASE("bijectivity off breakpoints") {
    std::mt19937_64 rng(23);
    for (int inst = 0; inst < 10; ++inst) {
        std::vector<Scalar> lambda;
        const std::size_t m = 2 + rng() % 4;
        for (std::size_t i = 0; i < m; ++i)
            lambda.emplace_back(Q, Rational(1 + rng() % 20, 1 + rng() % 10));
        std::vector<int> img(m);
        for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<int>(i) + 1;
        do {
            for (std::size_t i = m; i > 1; --i) std::swap(img[i - 1], img[rng() % i]);
        } while (!Permutation(img).is_irreducible());
        const IntervalExchange t(Q, lambda, Permutation(img));
        const IntervalExchange ti = t.invert();
        for (int k = 0; k < 100; ++k) {
            Scalar x(Q, Rational(rng() % 1000, 1000));
            x = x * t.total();
            CHECK(ti.apply(t.apply(x)) == x);
        }
        // partition preservation: image pieces tile [0, |lambda|) exactly
        std::vector<std::pair<Scalar, Scalar>> images;
        for (std::size_t i = 0; i < m; ++i)
            images.emplace_back(t.breakpoint(i) + t.piece_offset(i),
                                t.breakpoint(i + 1) + t.piece_offset(i));
        std::sort(images.begin(), images.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Scalar walk = t.breakpoint(0);
        for (const auto& [lo, hi] : images) {
            CHECK(lo == walk);
            walk = hi;
        }
        CHECK(walk == t.total());
    }
}

TEST_CASE("composition merges parallel pieces") {
    const IntervalExchange t = make_q({1, 1}, {2, 1});
    const IntervalExchange t2 = compose(t, t);  // identity map
    CHECK(t2.intervals() == 1);
    CHECK(t2.apply(q_of(1, 2)) == q_of(1, 2));
}
