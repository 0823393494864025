#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankcrank/linalg.hpp"

using namespace rankcrank;

namespace {

QMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    QMat m;
    for (const auto& r : rows) {
        QRow row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

TEST_CASE("row reduction ranks and pivots") {
    RrefResult r = rref(mat({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}}));
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});
    RrefResult full = rref(mat({{2, 0}, {0, 3}}));
    CHECK(full.rank == 2);
    CHECK(full.m[0][0] == 1);
    CHECK(full.m[1][1] == 1);
}

TEST_CASE("exact determinants") {
    CHECK(det_exact(mat({{3}})) == 3);
    CHECK(det_exact(mat({{1, 2}, {3, 4}})) == -2);
    CHECK(det_exact(mat({{2, 0, 1}, {1, 1, 0}, {0, 3, 4}})) == 11);
    // Hilbert 3x3 determinant 1/2160 exercises rational clearing.
    QMat h(3, QRow(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = Q(1, i + j + 1);
    CHECK(det_exact(h) == Q(1, 2160));
    CHECK(det_exact(mat({{1, 2}, {2, 4}})) == 0);
    CHECK_THROWS_AS(det_exact(mat({{1, 2, 3}, {4, 5, 6}})), non_square);
}

TEST_CASE("kernel basis") {
    auto ns = nullspace(mat({{1, 2, 3}, {2, 4, 6}}));
    REQUIRE(ns.size() == 2);
    for (const QRow& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
    CHECK(nullspace(mat({{1, 0}, {0, 1}})).empty());
}

TEST_CASE("overdetermined solve reports all three outcomes") {
    SolveResult u = solve_columns(mat({{1, 1}, {1, -1}, {2, 0}}), {Q(3), Q(1), Q(4)});
    CHECK(u.status == SolveStatus::unique);
    CHECK(u.x == QRow{Q(2), Q(1)});

    SolveResult bad = solve_columns(mat({{1, 1}, {1, -1}, {2, 0}}), {Q(3), Q(1), Q(5)});
    CHECK(bad.status == SolveStatus::inconsistent);

    SolveResult under = solve_columns(mat({{1, 2}, {2, 4}}), {Q(3), Q(6)});
    CHECK(under.status == SolveStatus::underdetermined);
    CHECK(under.x[0] + 2 * under.x[1] == 3);
}

TEST_CASE("prime field arithmetic") {
    CHECK(fp_inv(3, 11) == 4);
    CHECK(fp_inv(1, 2) == 1);
    for (unsigned long a = 1; a < 13; ++a) CHECK(a * fp_inv(a, 13) % 13 == 1);
    CHECK(fp_reduce(Q(7), 5) == 2);
    CHECK(fp_reduce(Q(-1), 5) == 4);
    CHECK(fp_reduce(Q(1, 3), 5) == 2);  // 3 * 2 = 6 = 1 mod 5
    CHECK_THROWS_AS(fp_reduce(Q(1, 5), 5), std::domain_error);
}

TEST_CASE("prime field reduction and kernels") {
    FpRrefResult r = fp_rref({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 7);
    CHECK(r.rank == 2);
    auto ns = fp_nullspace({{1, 2, 3}, {2, 4, 6}}, 7);
    REQUIRE(ns.size() == 2);
    for (const FpRow& v : ns) CHECK((v[0] + 2 * v[1] + 3 * v[2]) % 7 == 0);
}

TEST_CASE("prime field solve") {
    FpSolveResult u = fp_solve_columns({{1, 1}, {1, 6}, {2, 0}}, {3, 1, 4}, 7);
    CHECK(u.status == SolveStatus::unique);
    CHECK(u.x == FpRow{2, 1});
    FpSolveResult bad = fp_solve_columns({{1, 1}, {1, 6}, {2, 0}}, {3, 1, 5}, 7);
    CHECK(bad.status == SolveStatus::inconsistent);
    FpSolveResult under = fp_solve_columns({{1, 2}}, {3}, 7);
    CHECK(under.status == SolveStatus::underdetermined);
}
