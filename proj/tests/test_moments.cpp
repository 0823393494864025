#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankcrank/moments.hpp"
#include "rankcrank/partitions.hpp"

using namespace rankcrank;

TEST_CASE("rank moments from the bivariate table") {
    QSeries n2 = rank_moment_series(2, 12);
    for (int n = 0; n <= 12; ++n) {
        Q direct(0);
        for (const auto& [m, c] : rank_table(n).counts) direct += Q(Z(m) * m * c);
        CHECK(n2.coeff(n) == direct);
    }
    // odd moments vanish by symmetry
    CHECK(qs_is_zero(rank_moment_series(1, 12)));
    CHECK(qs_is_zero(rank_moment_series(3, 12)));
}

TEST_CASE("crank recurrence matches direct differentiation") {
    for (int a = 2; a <= 8; a += 2)
        CHECK(crank_moment_series_rec(a, 25) == crank_moment_series_direct(a, 25));
}

TEST_CASE("second crank moments") {
    QSeries m2 = crank_moment_series_rec(2, 10);
    const long want[] = {0, 2, 8, 18, 40, 70, 132};
    for (int n = 1; n <= 6; ++n) CHECK(m2.coeff(n) == want[n]);
    // M_2(n) = 2 n p(n)
    QSeries p = partition_series(10);
    for (int n = 0; n <= 10; ++n) CHECK(m2.coeff(n) == Q(2 * n) * p.coeff(n));
}

TEST_CASE("cache reproduces the standalone builders") {
    SeriesCache cache(20);
    CHECK(cache.P() == partition_series(20));
    CHECK(cache.eta(2) == eta_power(2, 20));
    CHECK(cache.phi(3) == phi_series(3, 20));
    CHECK(cache.rank_moment(4) == rank_moment_series(4, 20));
    CHECK(cache.crank_moment(4) == crank_moment_series_rec(4, 20));
    CHECK(cache.rank_moment_delta(2, 1) == delta_q(rank_moment_series(2, 20)));
    CHECK(cache.crank_moment_delta(2, 2) == delta_q(delta_q(crank_moment_series_rec(2, 20))));
}

TEST_CASE("derivative towers certify their series") {
    int order = 20;
    PhiEvaluator ev(order);
    QSeries P = partition_series(order);
    for (int m = 1; m <= 3; ++m) {
        Tower t = deltaq_P_tower(m, order);
        CHECK(t.series == qs_mul(P, ev.eval(t.phi)));
        QSeries direct = P;
        for (int i = 0; i < m; ++i) direct = delta_q(direct);
        CHECK(t.series == direct);
    }
    for (auto [n, m] : {std::pair{1, 0}, {1, 2}, {2, 1}, {3, 0}}) {
        Tower t = deltaq_crank_tower(n, m, order);
        CHECK(t.series == qs_mul(P, ev.eval(t.phi)));
        CHECK(pp_in_W(t.phi, n + m));
        QSeries direct = crank_moment_series_rec(2 * n, order);
        for (int i = 0; i < m; ++i) direct = delta_q(direct);
        CHECK(t.series == direct);
    }
}

TEST_CASE("family enumeration") {
    for (int k = 1; k <= 5; ++k) {
        auto fam = crank_family(k);
        CHECK((int)fam.size() == k * (k + 1) / 2);
        for (auto [j, m] : fam) {
            CHECK(j >= 1);
            CHECK(m >= 0);
            CHECK(j + m <= k);
        }
    }
    auto names = crank_family_names(3);
    REQUIRE(names.size() == 6);
    CHECK(names[0] == "C2");
    CHECK(names[1] == "dC2");
    CHECK(names[2] == "d2C2");
    CHECK(names[3] == "C4");
    CHECK(names[4] == "dC4");
    CHECK(names[5] == "C6");
}

TEST_CASE("rank side combinations") {
    SeriesCache cache(25);
    CHECK(qs_is_zero(cache.T(1)));
    // T_2 equals -2 C_2 - 6 delta C_2 + 8 C_4 on the crank side
    QSeries lhs = cache.T(2);
    QSeries rhs = qs_add(qs_add(qs_scale(Q(-2), cache.crank_moment(2)),
                                qs_scale(Q(-6), cache.crank_moment_delta(2, 1))),
                         qs_scale(Q(8), cache.crank_moment(4)));
    CHECK(lhs == rhs);
    CHECK(T_series(2, cache) == lhs);
}
