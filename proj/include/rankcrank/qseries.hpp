#ifndef RANKCRANK_QSERIES_HPP
#define RANKCRANK_QSERIES_HPP

#include "rankcrank/types.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace rankcrank {

// Truncated power series sum_{n=0}^{order} c_n q^n with exact rational
// coefficients.  Values are immutable once built; every operation returns a
// fresh series.  Binary operations truncate to the smaller operand order.
class QSeries {
public:
    explicit QSeries(int order) : c_(static_cast<size_t>(order) + 1) {}
    QSeries(int order, std::vector<Q> coeffs) : c_(std::move(coeffs)) {
        c_.resize(static_cast<size_t>(order) + 1);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const Q& coeff(int n) const {
        static const Q zero(0);
        if (n < 0 || n > order()) return zero;
        return c_[static_cast<size_t>(n)];
    }

    const std::vector<Q>& coeffs() const { return c_; }

    bool operator==(const QSeries& o) const { return c_ == o.c_; }

private:
    std::vector<Q> c_;
};

QSeries qs_zero(int order);
QSeries qs_one(int order);
QSeries qs_monomial(int order, int k, const Q& c);

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_sub(const QSeries& a, const QSeries& b);
QSeries qs_neg(const QSeries& a);
QSeries qs_scale(const Q& c, const QSeries& a);
QSeries qs_mul(const QSeries& a, const QSeries& b);

// Multiplicative inverse; throws zero_constant_term if a(0) == 0.
QSeries qs_inv(const QSeries& a);

QSeries qs_pow(const QSeries& a, unsigned long e);

// Multiply by q^k (coefficients shift up, truncation order unchanged).
QSeries qs_shift(const QSeries& a, int k);

QSeries qs_truncate(const QSeries& a, int order);

// Euler operator q d/dq: multiplies c_n by n.
QSeries delta_q(const QSeries& a);

// prod_{n>=1} (1-q^n)^r.  r = 1 is assembled from the sparse pentagonal
// number expansion, r = -1 by series inversion, other r by binary powering.
QSeries eta_power(int r, int order);

// Generating function of the partition numbers p(n), i.e. eta_power(-1, order).
QSeries partition_series(int order);

// Smallest n <= min(order_a, order_b) where coefficients differ, if any.
std::optional<int> qs_first_mismatch(const QSeries& a, const QSeries& b);

bool qs_is_zero(const QSeries& a);

nlohmann::ordered_json qs_to_json(const QSeries& a);
QSeries qs_from_json(const nlohmann::ordered_json& j);

} // namespace rankcrank

#endif
