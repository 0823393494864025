#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankcrank/qseries.hpp"

using namespace rankcrank;

TEST_CASE("partition numbers") {
    QSeries p = partition_series(50);
    const long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(p.coeff(n) == expected[n]);
    CHECK(p.coeff(20) == 627);
    CHECK(p.coeff(50) == 204226);
}

TEST_CASE("pentagonal sparsity of eta") {
    QSeries e = eta_power(1, 30);
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == -1);
    CHECK(e.coeff(2) == -1);
    CHECK(e.coeff(3) == 0);
    CHECK(e.coeff(5) == 1);
    CHECK(e.coeff(7) == 1);
    CHECK(e.coeff(12) == -1);
    CHECK(e.coeff(15) == -1);
    int nonzero = 0;
    for (int n = 0; n <= 30; ++n)
        if (e.coeff(n) != 0) ++nonzero;
    CHECK(nonzero == 9);
}

TEST_CASE("eta powers multiply additively") {
    int order = 25;
    for (int r : {-3, -1, 2, 5}) {
        for (int s : {-2, 1, 4}) {
            QSeries lhs = qs_mul(eta_power(r, order), eta_power(s, order));
            CHECK(qs_first_mismatch(lhs, eta_power(r + s, order)) == std::nullopt);
        }
    }
    CHECK(eta_power(24, 10).coeff(1) == -24);
}

TEST_CASE("inverse reproduces one") {
    QSeries p = partition_series(40);
    QSeries e = eta_power(1, 40);
    CHECK(qs_first_mismatch(qs_mul(p, e), qs_one(40)) == std::nullopt);
    CHECK(qs_first_mismatch(qs_inv(e), p) == std::nullopt);
    CHECK_THROWS_AS(qs_inv(qs_monomial(10, 1, Q(1))), zero_constant_term);
}

TEST_CASE("ring identities on random-ish inputs") {
    QSeries a = qs_add(partition_series(20), qs_monomial(20, 3, Q(5, 7)));
    QSeries b = eta_power(2, 20);
    QSeries c = qs_inv(eta_power(2, 20));
    CHECK(qs_first_mismatch(qs_mul(a, b), qs_mul(b, a)) == std::nullopt);
    CHECK(qs_first_mismatch(qs_mul(a, qs_add(b, c)),
                            qs_add(qs_mul(a, b), qs_mul(a, c))) == std::nullopt);
    CHECK(qs_first_mismatch(qs_pow(a, 3), qs_mul(a, qs_mul(a, a))) == std::nullopt);
}

TEST_CASE("euler operator") {
    QSeries a = partition_series(15);
    QSeries d = delta_q(a);
    for (int n = 0; n <= 15; ++n) CHECK(d.coeff(n) == Q(n) * a.coeff(n));
    // Leibniz
    QSeries b = eta_power(3, 15);
    QSeries lhs = delta_q(qs_mul(a, b));
    QSeries rhs = qs_add(qs_mul(delta_q(a), b), qs_mul(a, delta_q(b)));
    CHECK(qs_first_mismatch(lhs, rhs) == std::nullopt);
}

TEST_CASE("shift and truncate") {
    QSeries a = partition_series(10);
    QSeries s = qs_shift(a, 2);
    CHECK(s.coeff(0) == 0);
    CHECK(s.coeff(2) == 1);
    CHECK(s.coeff(10) == a.coeff(8));
    QSeries t = qs_truncate(a, 5);
    CHECK(t.order() == 5);
    CHECK(t.coeff(5) == 7);
}

TEST_CASE("json round trip") {
    QSeries a = qs_scale(Q(3, 4), partition_series(8));
    CHECK(qs_from_json(qs_to_json(a)) == a);
}
