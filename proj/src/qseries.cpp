#include "rankcrank/qseries.hpp"

namespace rankcrank {

QSeries qs_zero(int order) { return QSeries(order); }

QSeries qs_one(int order) { return qs_monomial(order, 0, Q(1)); }

QSeries qs_monomial(int order, int k, const Q& c) {
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    if (k >= 0 && k <= order) v[static_cast<size_t>(k)] = c;
    return QSeries(order, std::move(v));
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Q> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[i] = a.coeff(i) + b.coeff(i);
    return QSeries(n, std::move(v));
}

QSeries qs_sub(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Q> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[i] = a.coeff(i) - b.coeff(i);
    return QSeries(n, std::move(v));
}

QSeries qs_neg(const QSeries& a) {
    std::vector<Q> v(a.coeffs());
    for (auto& x : v) x = -x;
    return QSeries(a.order(), std::move(v));
}

QSeries qs_scale(const Q& c, const QSeries& a) {
    std::vector<Q> v(a.coeffs());
    for (auto& x : v) x *= c;
    return QSeries(a.order(), std::move(v));
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Q> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; j + i <= n; ++j) {
            if (b.coeff(j) == 0) continue;
            v[i + j] += a.coeff(i) * b.coeff(j);
        }
    }
    return QSeries(n, std::move(v));
}

QSeries qs_inv(const QSeries& a) {
    if (a.coeff(0) == 0) throw zero_constant_term();
    int n = a.order();
    std::vector<Q> b(static_cast<size_t>(n) + 1);
    Q inv0 = 1 / a.coeff(0);
    b[0] = inv0;
    for (int m = 1; m <= n; ++m) {
        Q s(0);
        for (int k = 1; k <= m; ++k) {
            if (a.coeff(k) == 0) continue;
            s += a.coeff(k) * b[m - k];
        }
        b[m] = -inv0 * s;
    }
    return QSeries(n, std::move(b));
}

QSeries qs_pow(const QSeries& a, unsigned long e) {
    QSeries r = qs_one(a.order());
    QSeries base = a;
    while (e > 0) {
        if (e & 1) r = qs_mul(r, base);
        e >>= 1;
        if (e > 0) base = qs_mul(base, base);
    }
    return r;
}

QSeries qs_shift(const QSeries& a, int k) {
    int n = a.order();
    std::vector<Q> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        int j = i + k;
        if (j >= 0 && j <= n) v[j] = a.coeff(i);
    }
    return QSeries(n, std::move(v));
}

QSeries qs_truncate(const QSeries& a, int order) {
    std::vector<Q> v(a.coeffs().begin(),
                     a.coeffs().begin() + std::min<size_t>(a.coeffs().size(), static_cast<size_t>(order) + 1));
    return QSeries(order, std::move(v));
}

QSeries delta_q(const QSeries& a) {
    std::vector<Q> v(a.coeffs());
    for (int i = 0; i <= a.order(); ++i) v[i] *= i;
    return QSeries(a.order(), std::move(v));
}

// prod (1-q^n) = sum_{k in Z} (-1)^k q^{k(3k-1)/2}
static QSeries pentagonal_series(int order) {
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    v[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (e1 > order && e2 > order) break;
        Q s = (k % 2 == 0) ? Q(1) : Q(-1);
        if (e1 <= order) v[static_cast<size_t>(e1)] += s;
        if (e2 <= order) v[static_cast<size_t>(e2)] += s;
    }
    return QSeries(order, std::move(v));
}

QSeries eta_power(int r, int order) {
    if (r == 0) return qs_one(order);
    QSeries e1 = pentagonal_series(order);
    if (r == 1) return e1;
    if (r > 0) return qs_pow(e1, static_cast<unsigned long>(r));
    QSeries p = qs_inv(e1);
    if (r == -1) return p;
    return qs_pow(p, static_cast<unsigned long>(-r));
}

QSeries partition_series(int order) { return eta_power(-1, order); }

std::optional<int> qs_first_mismatch(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i)
        if (a.coeff(i) != b.coeff(i)) return i;
    return std::nullopt;
}

bool qs_is_zero(const QSeries& a) {
    for (const auto& x : a.coeffs())
        if (x != 0) return false;
    return true;
}

nlohmann::ordered_json qs_to_json(const QSeries& a) {
    nlohmann::ordered_json j;
    j["order"] = a.order();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& x : a.coeffs()) arr.push_back(q_to_string(x));
    j["coeffs"] = arr;
    return j;
}

QSeries qs_from_json(const nlohmann::ordered_json& j) {
    int order = j.at("order").get<int>();
    std::vector<Q> v;
    v.reserve(j.at("coeffs").size());
    for (const auto& s : j.at("coeffs")) v.push_back(q_from_string(s.get<std::string>()));
    return QSeries(order, std::move(v));
}

} // namespace rankcrank
