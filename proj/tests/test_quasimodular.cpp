#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankcrank/quasimodular.hpp"

using namespace rankcrank;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Q(-1, 2));
    CHECK(bernoulli(2) == Q(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == Q(-1, 30));
    CHECK(bernoulli(6) == Q(1, 42));
    CHECK(bernoulli(12) == Q(-691, 2730));
}

TEST_CASE("divisor power sums") {
    QSeries p1 = phi_series(1, 10);
    CHECK(p1.coeff(0) == 0);
    CHECK(p1.coeff(1) == 1);
    CHECK(p1.coeff(6) == 12);
    CHECK(p1.coeff(10) == 18);
    CHECK(phi_series(3, 6).coeff(6) == 252);
    CHECK(phi_series(5, 4).coeff(4) == 1057);
}

TEST_CASE("eisenstein normalizations") {
    QSeries e2 = eisenstein(2, 6);
    CHECK(e2.coeff(0) == 1);
    CHECK(e2.coeff(1) == -24);
    CHECK(eisenstein(4, 6).coeff(1) == 240);
    CHECK(eisenstein(6, 6).coeff(1) == -504);
    CHECK(eisenstein(8, 6).coeff(1) == 480);
}

TEST_CASE("phi polynomial algebra and degrees") {
    PhiPoly a = PhiPoly::monomial(1, 0, 0, Q(2));
    PhiPoly b = PhiPoly::monomial(0, 1, 0, Q(3));
    PhiPoly p = pp_mul(a, b);
    CHECK(p.coeff(1, 1, 0) == 6);
    CHECK(pp_monomial_degree({1, 1, 0}) == 3);
    CHECK(pp_monomial_degree({0, 0, 2}) == 6);
    CHECK(pp_degree(p) == 3);
    CHECK(pp_in_W(p, 3));
    CHECK_FALSE(pp_in_W(p, 2));
    CHECK(pp_sub(pp_add(a, b), b) == a);
    CHECK(pp_scale(Q(1, 2), a).coeff(1, 0, 0) == 1);
}

TEST_CASE("euler operator closes on the generators") {
    PhiEvaluator ev(24);
    PhiPoly p = PhiPoly::monomial(2, 0, 1, Q(1));
    p.add_term({0, 1, 0}, Q(-5));
    CHECK(ev.eval(delta_q_phi(p)) == delta_q(ev.eval(p)));
    for (const IdentityReport& rep : verify_phi_closure(24)) CHECK(rep.pass);
}

TEST_CASE("derivative identities for the eisenstein generators") {
    for (const IdentityReport& rep : verify_eisenstein_derivatives(24)) CHECK(rep.pass);
}

TEST_CASE("graded dimensions") {
    CHECK(dim_M(6) == 2);
    CHECK(dim_M(7) == 1);
    CHECK(dim_V(6) == 7);
    CHECK(dim_W(6) == 22);
    CHECK(dim_W(7) == 30);
    CHECK(verify_dimension_table().pass);
}

TEST_CASE("monomial basis ordering") {
    auto b2 = monomial_basis_W(2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == PhiPoly::Key{1, 0, 0});
    CHECK(b2[1] == PhiPoly::Key{2, 0, 0});
    CHECK(b2[2] == PhiPoly::Key{0, 1, 0});
    auto b3 = monomial_basis_W(3);
    REQUIRE(b3.size() == 6);
    CHECK(b3[3] == PhiPoly::Key{3, 0, 0});
    CHECK(b3[4] == PhiPoly::Key{1, 1, 0});
    CHECK(b3[5] == PhiPoly::Key{0, 0, 1});
}

TEST_CASE("higher divisor sums reduce to the generators") {
    PhiPoly p7 = reduce_phi(7, 30);
    CHECK(p7.coeff(0, 1, 0) == 1);
    CHECK(p7.coeff(0, 2, 0) == 120);
    CHECK(p7.terms().size() == 2);
    PhiEvaluator ev(30);
    CHECK(ev.eval(phi_reduced(9, 30)) == phi_series(9, 30));
    CHECK(ev.eval(phi_reduced(11, 30)) == phi_series(11, 30));
    CHECK(phi_reduced(5, 30) == PhiPoly::monomial(0, 0, 1, Q(1)));
}

TEST_CASE("series factor into the partition series times a monomial span") {
    int order = 30;
    PhiEvaluator ev(order);
    QSeries P = partition_series(order);
    PhiPoly p = PhiPoly::monomial(1, 1, 0, Q(3));
    p.add_term({2, 0, 0}, Q(-1, 4));
    p.add_term({0, 0, 1}, Q(7));
    QSeries f = qs_mul(P, ev.eval(p));
    CHECK(express_in_PW(f, 3, order) == p);
    CHECK_THROWS_AS(express_in_PW(P, 2, order), not_in_space);
    CHECK_THROWS_AS(express_in_PW(qs_mul(P, ev.eval(p)), 2, order), not_in_space);
}
