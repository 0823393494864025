#ifndef RANKCRANK_LINALG_HPP
#define RANKCRANK_LINALG_HPP

#include "rankcrank/types.hpp"

#include <vector>

namespace rankcrank {

using QRow = std::vector<Q>;
using QMat = std::vector<QRow>;

struct RrefResult {
    QMat m;
    int rank = 0;
    std::vector<int> pivot_cols;
};

RrefResult rref(QMat a);

// Determinant via fraction-free elimination: rows are cleared to integers,
// then reduced with the Bareiss recurrence (all intermediate divisions exact).
Q det_exact(const QMat& a);

// Basis of the right kernel {x : A x = 0}.
std::vector<QRow> nullspace(const QMat& a);

enum class SolveStatus { unique, inconsistent, underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::inconsistent;
    QRow x;  // for underdetermined, the particular solution with free variables 0
};

// Solves A x = b by Gauss-Jordan on the augmented matrix; every row of an
// overdetermined system participates, so a unique answer is also verified.
SolveResult solve_columns(const QMat& a, const QRow& b);

using FpRow = std::vector<unsigned long>;
using FpMat = std::vector<FpRow>;

// Arithmetic modulo a prime p < 2^31.
unsigned long fp_inv(unsigned long a, unsigned long p);

// Image of a rational in Z/p; throws std::domain_error when p divides the
// denominator.
unsigned long fp_reduce(const Q& x, unsigned long p);

struct FpRrefResult {
    FpMat m;
    int rank = 0;
    std::vector<int> pivot_cols;
};

FpRrefResult fp_rref(FpMat a, unsigned long p);
std::vector<FpRow> fp_nullspace(const FpMat& a, unsigned long p);

struct FpSolveResult {
    SolveStatus status = SolveStatus::inconsistent;
    FpRow x;
};

FpSolveResult fp_solve_columns(const FpMat& a, const FpRow& b, unsigned long p);

} // namespace rankcrank

#endif
