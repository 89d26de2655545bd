#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isingq/qseries.hpp"

using namespace isingq;

namespace {
series random_series(std::mt19937& rng, int cap) {
    series s(cap);
    for (int t = 0; t < 12; ++t) {
        long d = static_cast<long>(rng() % (cap + 1));
        long z = static_cast<long>(rng() % 5) - 2;
        long u = static_cast<long>(rng() % 7) - 3;
        long num = static_cast<long>(rng() % 9) - 4;
        s.add_term(d, {z, u}, rat(num, 1 + static_cast<long>(rng() % 3)));
    }
    return s;
}
}  // namespace

TEST_CASE("ring laws on random series") {
    std::mt19937 rng(42);
    for (int it = 0; it < 25; ++it) {
        series a = random_series(rng, 8), b = random_series(rng, 8), c = random_series(rng, 8);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("geometric inverse telescopes") {
    // (1 - Q) * Sum Q^k == 1
    series s = series::one(10);
    s.geometric_inverse(1, {0, 0}, rat(1));
    series t = s;
    t.mul_one_plus(1, {0, 0}, rat(-1));
    CHECK(t == series::one(10));
    // coefficient of Q^k in 1/(1 - y^{-2} Q) is y^{-2k}
    series g = series::one(6);
    g.geometric_inverse(1, {0, -4}, rat(1));
    for (long k = 0; k <= 6; ++k) {
        CHECK(g.coeff(k, {0, -4 * k}) == 1);
        CHECK(g.coeff(k).size() == 1);
    }
    CHECK_THROWS_AS(series::one(3).geometric_inverse(0, {0, 0}, rat(1)), domain_error);
}

TEST_CASE("multiplication truncates at the cap") {
    series qd = series::monomial(5, 5, {0, 0}, rat(1));
    series q1 = series::monomial(5, 1, {0, 0}, rat(1));
    series prod = qd * q1;
    for (long d = 0; d <= 5; ++d) CHECK(prod.coeff(d).empty());
}

TEST_CASE("theta coefficients") {
    series th = theta(7);
    CHECK(th.coeff(0, {0, 0}) == 1);
    CHECK(th.coeff(0, {-1, 0}) == 1);  // m in {0, -1}
    CHECK(th.coeff(0).size() == 2);
    CHECK(th.coeff(1, {1, 0}) == 1);
    CHECK(th.coeff(1, {-2, 0}) == 1);  // m in {1, -2}
    CHECK(th.coeff(2).empty());
    CHECK(th.coeff(3, {2, 0}) == 1);
    CHECK(th.coeff(3, {-3, 0}) == 1);
    CHECK(th.coeff(6, {3, 0}) == 1);
}

TEST_CASE("jacobi triple product") {
    CHECK(!theta(18).first_mismatch(jtp_product(18)));
    // fault sensitivity: dropping the z^{-1} family breaks it at Q^0
    series broken = series::one(6);
    for (long i = 1; i <= 6; ++i) {
        broken.mul_one_plus(i, {0, 0}, rat(-1));
        broken.mul_one_plus(i, {1, 0}, rat(1));
    }
    auto mm = theta(6).first_mismatch(broken);
    REQUIRE(mm.has_value());
    CHECK(mm->qdeg == 0);
}

TEST_CASE("blocking product counts partitions by distinct sizes") {
    series b = blocking_product(8);
    // Q^7: a_{7,1} = 2, a_{7,2} = 11, a_{7,3} = 2
    CHECK(b.coeff(7, {0, 2}) == 2);
    CHECK(b.coeff(7, {0, 4}) == 11);
    CHECK(b.coeff(7, {0, 6}) == 2);
    CHECK(b.coeff(7).size() == 3);
    // y = 2: overpartitions of 4 (14 of them); y = 3: 27 two-coloured ones
    auto at2 = b.eval_y(rat(2));
    auto at3 = b.eval_y(rat(3));
    CHECK(at2[4] == 14);
    CHECK(at3[4] == 27);
    // y = 1 collapses to plain partition counts
    auto at1 = b.eval_y(rat(1));
    series pg = partition_gf(8);
    for (long d = 0; d <= 8; ++d) CHECK(at1[static_cast<size_t>(d)] == pg.coeff(d, {0, 0}));
}

TEST_CASE("first mismatch reporting") {
    series a = theta(5), b = theta(5);
    b.add_term(3, {2, 0}, rat(1));  // corrupt one coefficient
    auto mm = a.first_mismatch(b);
    REQUIRE(mm.has_value());
    CHECK(mm->qdeg == 3);
    CHECK(mm->key.z == 2);
    CHECK(mm->lhs == 1);
    CHECK(mm->rhs == 2);
}

TEST_CASE("z exponents outside the provable bound are rejected") {
    series s(3);
    CHECK_THROWS_AS(s.add_term(1, {5, 0}, rat(1)), domain_error);
}
