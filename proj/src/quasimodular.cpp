#include "rankcrank/quasimodular.hpp"

#include "rankcrank/linalg.hpp"

#include <algorithm>

namespace rankcrank {

Q bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli index must be >= 0");
    std::vector<Q> b(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        if (m == 0) {
            b[0] = 1;
            continue;
        }
        Q s(0);
        for (int k = 0; k < m; ++k) s += Q(binomial(m + 1, k)) * b[k];
        b[m] = -s / Q(m + 1);
    }
    return b[static_cast<size_t>(n)];
}

QSeries phi_series(int j, int order) {
    if (j < 1) throw std::invalid_argument("phi index must be >= 1");
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    for (int d = 1; d <= order; ++d) {
        Z dj = zpow(d, static_cast<unsigned long>(j));
        for (int m = d; m <= order; m += d) v[static_cast<size_t>(m)] += Q(dj);
    }
    return QSeries(order, std::move(v));
}

QSeries eisenstein(int k, int order) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 2");
    Q factor = Q(2 * k) / bernoulli(k);
    return qs_sub(qs_one(order), qs_scale(factor, phi_series(k - 1, order)));
}

PhiPoly pp_add(const PhiPoly& a, const PhiPoly& b) {
    PhiPoly r = a;
    for (const auto& [k, c] : b.terms()) r.add_term(k, c);
    return r;
}

PhiPoly pp_sub(const PhiPoly& a, const PhiPoly& b) {
    PhiPoly r = a;
    for (const auto& [k, c] : b.terms()) r.add_term(k, -c);
    return r;
}

PhiPoly pp_scale(const Q& c, const PhiPoly& a) {
    PhiPoly r;
    if (c == 0) return r;
    for (const auto& [k, x] : a.terms()) r.add_term(k, c * x);
    return r;
}

PhiPoly pp_mul(const PhiPoly& a, const PhiPoly& b) {
    PhiPoly r;
    for (const auto& [k1, c1] : a.terms())
        for (const auto& [k2, c2] : b.terms())
            r.add_term({k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, c1 * c2);
    return r;
}

int pp_monomial_degree(const PhiPoly::Key& k) { return k[0] + 2 * k[1] + 3 * k[2]; }

int pp_degree(const PhiPoly& a) {
    int d = 0;
    for (const auto& [k, c] : a.terms()) d = std::max(d, pp_monomial_degree(k));
    return d;
}

bool pp_in_W(const PhiPoly& a, int n) {
    for (const auto& [k, c] : a.terms()) {
        int d = pp_monomial_degree(k);
        if (d < 1 || d > n) return false;
    }
    return true;
}

// d(Phi_1) = (5/6) Phi_3 + (1/6) Phi_1 - 2 Phi_1^2
// d(Phi_3) = (7/10) Phi_5 + (1/3) Phi_3 - (1/30) Phi_1 - 8 Phi_1 Phi_3
// d(Phi_5) = (1/2) Phi_5 + (1/42) Phi_1 - 12 Phi_1 Phi_5 + (10/21) Phi_3
//            + (400/7) Phi_3^2
static const PhiPoly& generator_derivative(int which) {
    static const PhiPoly d1 = [] {
        PhiPoly p;
        p.add_term({0, 1, 0}, Q(5, 6));
        p.add_term({1, 0, 0}, Q(1, 6));
        p.add_term({2, 0, 0}, Q(-2));
        return p;
    }();
    static const PhiPoly d3 = [] {
        PhiPoly p;
        p.add_term({0, 0, 1}, Q(7, 10));
        p.add_term({0, 1, 0}, Q(1, 3));
        p.add_term({1, 0, 0}, Q(-1, 30));
        p.add_term({1, 1, 0}, Q(-8));
        return p;
    }();
    static const PhiPoly d5 = [] {
        PhiPoly p;
        p.add_term({0, 0, 1}, Q(1, 2));
        p.add_term({1, 0, 0}, Q(1, 42));
        p.add_term({1, 0, 1}, Q(-12));
        p.add_term({0, 1, 0}, Q(10, 21));
        p.add_term({0, 2, 0}, Q(400, 7));
        return p;
    }();
    switch (which) {
        case 1: return d1;
        case 3: return d3;
        default: return d5;
    }
}

PhiPoly delta_q_phi(const PhiPoly& a) {
    PhiPoly r;
    for (const auto& [k, c] : a.terms()) {
        for (int g = 0; g < 3; ++g) {
            if (k[g] == 0) continue;
            PhiPoly::Key reduced = k;
            reduced[g] -= 1;
            PhiPoly partial = pp_mul(PhiPoly::monomial(reduced[0], reduced[1], reduced[2], c * Q(k[g])),
                                     generator_derivative(2 * g + 1));
            r = pp_add(r, partial);
        }
    }
    return r;
}

PhiEvaluator::PhiEvaluator(int order) : order_(order) {
    memo_.emplace(PhiPoly::Key{0, 0, 0}, qs_one(order));
    memo_.emplace(PhiPoly::Key{1, 0, 0}, phi_series(1, order));
    memo_.emplace(PhiPoly::Key{0, 1, 0}, phi_series(3, order));
    memo_.emplace(PhiPoly::Key{0, 0, 1}, phi_series(5, order));
}

const QSeries& PhiEvaluator::monomial_series(const PhiPoly::Key& k) {
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    PhiPoly::Key reduced = k;
    PhiPoly::Key gen{0, 0, 0};
    for (int g = 0; g < 3; ++g) {
        if (k[g] > 0) {
            reduced[g] -= 1;
            gen[g] = 1;
            break;
        }
    }
    QSeries s = qs_mul(monomial_series(reduced), monomial_series(gen));
    return memo_.emplace(k, std::move(s)).first->second;
}

QSeries PhiEvaluator::eval(const PhiPoly& a) {
    QSeries s = qs_zero(order_);
    for (const auto& [k, c] : a.terms()) s = qs_add(s, qs_scale(c, monomial_series(k)));
    return s;
}

int dim_M(int k) {
    if (k < 0) return 0;
    return k % 6 == 1 ? k / 6 : k / 6 + 1;
}

int dim_V(int n) {
    int d = 0;
    for (int k = 0; k <= n; ++k) d += dim_M(k);
    return d;
}

int dim_W(int n) {
    if (n < 1) return 0;
    int d = n;
    for (int k = 2; k <= n; ++k) d += (n - k + 1) * dim_M(k);
    return d;
}

std::vector<PhiPoly::Key> monomial_basis_W(int n) {
    std::vector<PhiPoly::Key> keys;
    for (int c = 0; 3 * c <= n; ++c)
        for (int b = 0; 2 * b + 3 * c <= n; ++b)
            for (int a = 0; a + 2 * b + 3 * c <= n; ++a) {
                if (a + 2 * b + 3 * c == 0) continue;
                keys.push_back({a, b, c});
            }
    std::sort(keys.begin(), keys.end(), [](const PhiPoly::Key& x, const PhiPoly::Key& y) {
        int dx = pp_monomial_degree(x), dy = pp_monomial_degree(y);
        if (dx != dy) return dx < dy;
        return x > y;
    });
    return keys;
}

// Shared elimination step: find coefficients x with sum_i x_i col_i = target,
// matching the q-coefficients from row_lo through the full order.
static QRow expand_over_columns(const std::vector<QSeries>& columns, const QSeries& target,
                                int row_lo, const char* what) {
    int order = target.order();
    for (const auto& c : columns) order = std::min(order, c.order());
    QMat m;
    QRow b;
    for (int n = row_lo; n <= order; ++n) {
        QRow row;
        row.reserve(columns.size());
        for (const auto& c : columns) row.push_back(c.coeff(n));
        m.push_back(std::move(row));
        b.push_back(target.coeff(n));
    }
    SolveResult s = solve_columns(m, b);
    if (s.status == SolveStatus::inconsistent)
        throw inconsistent_system(std::string(what) + ": no exact expansion exists");
    if (s.status == SolveStatus::underdetermined)
        throw inconsistent_system(std::string(what) + ": candidate columns are dependent");
    return s.x;
}

PhiPoly reduce_phi(int j, int order) {
    if (j < 7 || j % 2 == 0) throw std::invalid_argument("index must be odd and >= 7");
    int n = (j + 1) / 2;
    std::vector<PhiPoly::Key> keys;
    for (const auto& k : monomial_basis_W(n))
        if (k[0] == 0) keys.push_back(k);
    PhiEvaluator ev(order);
    std::vector<QSeries> columns;
    columns.reserve(keys.size());
    for (const auto& k : keys) columns.push_back(ev.monomial_series(k));
    QRow x = expand_over_columns(columns, phi_series(j, order), 1, "phi reduction");
    PhiPoly p;
    for (size_t i = 0; i < keys.size(); ++i) p.add_term(keys[i], x[i]);
    return p;
}

PhiPoly phi_reduced(int j, int order) {
    switch (j) {
        case 1: return PhiPoly::monomial(1, 0, 0, Q(1));
        case 3: return PhiPoly::monomial(0, 1, 0, Q(1));
        case 5: return PhiPoly::monomial(0, 0, 1, Q(1));
        default: return reduce_phi(j, order);
    }
}

PhiPoly express_in_PW(const QSeries& f, int n, int order) {
    QSeries g = qs_mul(qs_truncate(f, order), eta_power(1, order));
    if (g.coeff(0) != 0) throw not_in_space("series has a constant term after clearing P");
    std::vector<PhiPoly::Key> keys = monomial_basis_W(n);
    PhiEvaluator ev(order);
    std::vector<QSeries> columns;
    columns.reserve(keys.size());
    for (const auto& k : keys) columns.push_back(ev.monomial_series(k));
    QRow x;
    try {
        x = expand_over_columns(columns, g, 1, "monomial expansion");
    } catch (const inconsistent_system& e) {
        throw not_in_space(e.what());
    }
    PhiPoly p;
    for (size_t i = 0; i < keys.size(); ++i) p.add_term(keys[i], x[i]);
    return p;
}

static IdentityReport compare_series(const std::string& name, const QSeries& lhs, const QSeries& rhs) {
    IdentityReport rep;
    rep.identity = name;
    rep.order = std::min(lhs.order(), rhs.order());
    if (auto bad = qs_first_mismatch(lhs, rhs)) {
        rep.pass = false;
        rep.fail_q = *bad;
        rep.lhs_value = q_to_string(lhs.coeff(*bad));
        rep.rhs_value = q_to_string(rhs.coeff(*bad));
    }
    return rep;
}

std::vector<IdentityReport> verify_eisenstein_derivatives(int order) {
    QSeries e2 = eisenstein(2, order);
    QSeries e4 = eisenstein(4, order);
    QSeries e6 = eisenstein(6, order);
    std::vector<IdentityReport> reps;
    reps.push_back(compare_series("12*d(E2) = E2^2 - E4",
                                  qs_scale(Q(12), delta_q(e2)),
                                  qs_sub(qs_mul(e2, e2), e4)));
    reps.push_back(compare_series("3*d(E4) = E2*E4 - E6",
                                  qs_scale(Q(3), delta_q(e4)),
                                  qs_sub(qs_mul(e2, e4), e6)));
    reps.push_back(compare_series("2*d(E6) = E2*E6 - E4^2",
                                  qs_scale(Q(2), delta_q(e6)),
                                  qs_sub(qs_mul(e2, e6), qs_mul(e4, e4))));
    return reps;
}

std::vector<IdentityReport> verify_phi_closure(int order) {
    PhiEvaluator ev(order);
    std::vector<IdentityReport> reps;
    for (int j : {1, 3, 5}) {
        PhiPoly gen = phi_reduced(j, order);
        reps.push_back(compare_series("d(Phi" + std::to_string(j) + ") closure",
                                      ev.eval(delta_q_phi(gen)),
                                      delta_q(phi_series(j, order))));
    }
    reps.push_back(compare_series("Phi11 reduction",
                                  ev.eval(reduce_phi(11, order)),
                                  phi_series(11, order)));
    return reps;
}

IdentityReport verify_dimension_table() {
    static const int m[10] = {0, 1, 1, 1, 1, 2, 1, 2, 2, 2};
    static const int v[10] = {1, 2, 3, 4, 5, 7, 8, 10, 12, 14};
    static const int w[10] = {1, 3, 6, 10, 15, 22, 30, 40, 52, 66};
    IdentityReport rep;
    rep.identity = "dimension_table";
    rep.order = 10;
    for (int k = 1; k <= 10; ++k) {
        if (dim_M(k) == m[k - 1] && dim_V(k) == v[k - 1] && dim_W(k) == w[k - 1]) continue;
        rep.pass = false;
        rep.fail_q = k;
        rep.lhs_value = std::to_string(dim_M(k)) + "," + std::to_string(dim_V(k)) + "," +
                        std::to_string(dim_W(k));
        rep.rhs_value = std::to_string(m[k - 1]) + "," + std::to_string(v[k - 1]) + "," +
                        std::to_string(w[k - 1]);
        break;
    }
    return rep;
}

nlohmann::ordered_json phi_poly_to_json(const PhiPoly& a) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [k, c] : a.terms())
        arr.push_back({k[0], k[1], k[2], q_to_string(c)});
    return arr;
}

PhiPoly phi_poly_from_json(const nlohmann::ordered_json& j) {
    PhiPoly p;
    for (const auto& t : j)
        p.add_term({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()},
                   q_from_string(t.at(3).get<std::string>()));
    return p;
}

} // namespace rankcrank
