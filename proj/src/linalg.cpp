#include "rankcrank/linalg.hpp"

#include <stdexcept>

namespace rankcrank {

RrefResult rref(QMat a) {
    RrefResult res;
    if (a.empty()) {
        res.m = std::move(a);
        return res;
    }
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        Q inv = 1 / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        res.pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    res.rank = static_cast<int>(r);
    res.m = std::move(a);
    return res;
}

Q det_exact(const QMat& a) {
    size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw non_square();
    if (n == 0) return Q(1);

    // clear each row to integers, remembering the scaling
    std::vector<std::vector<Z>> m(n, std::vector<Z>(n));
    Q scale(1);
    for (size_t i = 0; i < n; ++i) {
        Z l(1);
        for (size_t j = 0; j < n; ++j) {
            Z den = a[i][j].get_den();
            Z g;
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
            l = l / g * den;
        }
        for (size_t j = 0; j < n; ++j) {
            Q v = a[i][j] * Q(l);
            m[i][j] = v.get_num();
        }
        scale *= Q(l);
    }

    int sign = 1;
    Z prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return Q(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Z t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Q det(m[n - 1][n - 1]);
    if (sign < 0) det = -det;
    return det / scale;
}

std::vector<QRow> nullspace(const QMat& a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<QRow> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QRow v(cols, Q(0));
        v[free_c] = 1;
        for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
            size_t pc = static_cast<size_t>(r.pivot_cols[i]);
            v[pc] = -r.m[i][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

SolveResult solve_columns(const QMat& a, const QRow& b) {
    SolveResult res;
    size_t rows = a.size();
    if (rows != b.size()) throw std::invalid_argument("dimension mismatch");
    size_t cols = rows == 0 ? 0 : a[0].size();
    QMat aug(rows, QRow(cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    RrefResult r = rref(std::move(aug));
    for (int c : r.pivot_cols) {
        if (static_cast<size_t>(c) == cols) {
            res.status = SolveStatus::inconsistent;
            return res;
        }
    }
    res.x.assign(cols, Q(0));
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
        res.x[static_cast<size_t>(r.pivot_cols[i])] = r.m[i][cols];
    res.status = r.rank == static_cast<int>(cols) ? SolveStatus::unique
                                                  : SolveStatus::underdetermined;
    return res;
}

unsigned long fp_inv(unsigned long a, unsigned long p) {
    long t = 0, newt = 1;
    long r = static_cast<long>(p), newr = static_cast<long>(a % p);
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::domain_error("element not invertible mod p");
    if (t < 0) t += static_cast<long>(p);
    return static_cast<unsigned long>(t);
}

unsigned long fp_reduce(const Q& x, unsigned long p) {
    Z num = x.get_num(), den = x.get_den();
    unsigned long n = mpz_fdiv_ui(num.get_mpz_t(), p);
    unsigned long d = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (d == 0) throw std::domain_error("denominator divisible by p");
    return n * fp_inv(d, p) % p;
}

FpRrefResult fp_rref(FpMat a, unsigned long p) {
    FpRrefResult res;
    if (a.empty()) {
        res.m = std::move(a);
        return res;
    }
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        unsigned long inv = fp_inv(a[r][c], p);
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            unsigned long f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
        }
        res.pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    res.rank = static_cast<int>(r);
    res.m = std::move(a);
    return res;
}

std::vector<FpRow> fp_nullspace(const FpMat& a, unsigned long p) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    FpRrefResult r = fp_rref(a, p);
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<FpRow> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        FpRow v(cols, 0);
        v[free_c] = 1;
        for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
            size_t pc = static_cast<size_t>(r.pivot_cols[i]);
            v[pc] = (p - r.m[i][free_c]) % p;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

FpSolveResult fp_solve_columns(const FpMat& a, const FpRow& b, unsigned long p) {
    FpSolveResult res;
    size_t rows = a.size();
    if (rows != b.size()) throw std::invalid_argument("dimension mismatch");
    size_t cols = rows == 0 ? 0 : a[0].size();
    FpMat aug(rows, FpRow(cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    FpRrefResult r = fp_rref(std::move(aug), p);
    for (int c : r.pivot_cols) {
        if (static_cast<size_t>(c) == cols) {
            res.status = SolveStatus::inconsistent;
            return res;
        }
    }
    res.x.assign(cols, 0);
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
        res.x[static_cast<size_t>(r.pivot_cols[i])] = r.m[i][cols];
    res.status = r.rank == static_cast<int>(cols) ? SolveStatus::unique
                                                  : SolveStatus::underdetermined;
    return res;
}

} // namespace rankcrank
