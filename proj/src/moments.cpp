#include "rankcrank/moments.hpp"

namespace rankcrank {

const QSeries& SeriesCache::P() { return eta(-1); }

const QSeries& SeriesCache::eta(int r) {
    auto it = eta_.find(r);
    if (it == eta_.end()) it = eta_.emplace(r, eta_power(r, order_)).first;
    return it->second;
}

const QSeries& SeriesCache::phi(int j) {
    auto it = phi_.find(j);
    if (it == phi_.end()) it = phi_.emplace(j, phi_series(j, order_)).first;
    return it->second;
}

const ZSeries& SeriesCache::rank_bivariate() {
    if (!rank_bs_) rank_bs_ = std::make_unique<ZSeries>(rank_gf(order_));
    return *rank_bs_;
}

const QSeries& SeriesCache::rank_moment(int j) {
    auto it = rank_mom_.find(j);
    if (it == rank_mom_.end())
        it = rank_mom_.emplace(j, bs_moment(rank_bivariate(), j)).first;
    return it->second;
}

const QSeries& SeriesCache::crank_moment(int j) {
    auto it = crank_mom_.find(j);
    if (it != crank_mom_.end()) return it->second;
    for (int a = 2; a <= j; a += 2) {
        if (crank_mom_.count(a)) continue;
        QSeries c = qs_scale(Q(2), qs_mul(phi(a - 1), P()));
        for (int i = 1; i <= a / 2 - 1; ++i)
            c = qs_add(c, qs_scale(Q(2) * Q(binomial(a - 1, 2 * i - 1)),
                                   qs_mul(phi(2 * i - 1), crank_mom_.at(a - 2 * i))));
        crank_mom_.emplace(a, std::move(c));
    }
    return crank_mom_.at(j);
}

const QSeries& SeriesCache::rank_moment_delta(int j, int m) {
    if (m == 0) return rank_moment(j);
    auto key = std::make_pair(j, m);
    auto it = rank_delta_.find(key);
    if (it == rank_delta_.end())
        it = rank_delta_.emplace(key, delta_q(rank_moment_delta(j, m - 1))).first;
    return it->second;
}

const QSeries& SeriesCache::crank_moment_delta(int j, int m) {
    if (m == 0) return crank_moment(j);
    auto key = std::make_pair(j, m);
    auto it = crank_delta_.find(key);
    if (it == crank_delta_.end())
        it = crank_delta_.emplace(key, delta_q(crank_moment_delta(j, m - 1))).first;
    return it->second;
}

const QSeries& SeriesCache::T(int k) {
    auto it = t_.find(k);
    if (it != t_.end()) return it->second;
    QSeries t = qs_scale(Q((2 * k - 1) * (k - 1)), rank_moment(2 * k));
    for (int i = 1; i <= k - 1; ++i) {
        Q dcoef = Q(6) * Q(binomial(2 * k, 2 * i)) * Q(zpow(2, 2 * i - 1) - 1);
        t = qs_add(t, qs_scale(dcoef, rank_moment_delta(2 * k - 2 * i, 1)));
        Q rcoef = Q(binomial(2 * k, 2 * i + 2)) * Q(zpow(2, 2 * i + 1) - 1)
                  - Q(zpow(2, 2 * i)) * Q(binomial(2 * k, 2 * i + 1))
                  + Q(binomial(2 * k, 2 * i));
        t = qs_add(t, qs_scale(rcoef, rank_moment(2 * k - 2 * i)));
    }
    return t_.emplace(k, std::move(t)).first->second;
}

QSeries rank_moment_series(int j, int order) {
    return bs_moment(rank_gf(order), j);
}

QSeries crank_moment_series_rec(int a, int order) {
    SeriesCache cache(order);
    return cache.crank_moment(a);
}

QSeries crank_moment_series_direct(int a, int order) {
    return bs_moment(crank_gf(order), a);
}

Tower deltaq_P_tower(int m, int order) {
    if (m < 1) throw std::invalid_argument("tower exponent must be >= 1");
    Tower t;
    t.phi = PhiPoly::monomial(1, 0, 0, Q(1));
    for (int i = 1; i < m; ++i)
        t.phi = pp_add(delta_q_phi(t.phi), pp_mul(PhiPoly::monomial(1, 0, 0, Q(1)), t.phi));
    t.series = partition_series(order);
    for (int i = 0; i < m; ++i) t.series = delta_q(t.series);
    return t;
}

// C_{2n} = P * Psi_{2n} with Psi_2 = 2 Phi_1 and
// Psi_a = 2 sum binom(a-1, 2j-1) red(Phi_{2j-1}) Psi_{a-2j} + 2 red(Phi_{a-1}).
static PhiPoly crank_psi(int a, int order) {
    std::map<int, PhiPoly> psi;
    psi[2] = PhiPoly::monomial(1, 0, 0, Q(2));
    for (int s = 4; s <= a; s += 2) {
        PhiPoly p = pp_scale(Q(2), phi_reduced(s - 1, order));
        for (int j = 1; j <= s / 2 - 1; ++j)
            p = pp_add(p, pp_scale(Q(2) * Q(binomial(s - 1, 2 * j - 1)),
                                   pp_mul(phi_reduced(2 * j - 1, order), psi.at(s - 2 * j))));
        psi[s] = std::move(p);
    }
    return psi.at(a);
}

Tower deltaq_crank_tower(int n, int m, int order) {
    if (n < 1) throw std::invalid_argument("moment index must be >= 1");
    Tower t;
    t.phi = crank_psi(2 * n, order);
    for (int i = 0; i < m; ++i)
        t.phi = pp_add(delta_q_phi(t.phi), pp_mul(PhiPoly::monomial(1, 0, 0, Q(1)), t.phi));
    t.series = crank_moment_series_rec(2 * n, order);
    for (int i = 0; i < m; ++i) t.series = delta_q(t.series);
    return t;
}

PhiPoly crank_phi_poly(int n, int order) { return crank_psi(2 * n, order); }

std::vector<std::pair<int, int>> crank_family(int k) {
    std::vector<std::pair<int, int>> fam;
    for (int j = 1; j <= k; ++j)
        for (int m = 0; j + m <= k; ++m) fam.emplace_back(j, m);
    return fam;
}

std::vector<std::string> crank_family_names(int k) {
    std::vector<std::string> names;
    for (const auto& [j, m] : crank_family(k)) {
        std::string base = "C" + std::to_string(2 * j);
        if (m == 0) names.push_back(base);
        else if (m == 1) names.push_back("d" + base);
        else names.push_back("d" + std::to_string(m) + base);
    }
    return names;
}

std::vector<QSeries> crank_family_series(int k, SeriesCache& cache) {
    std::vector<QSeries> cols;
    for (const auto& [j, m] : crank_family(k))
        cols.push_back(cache.crank_moment_delta(2 * j, m));
    return cols;
}

QSeries T_series(int k, SeriesCache& cache) { return cache.T(k); }

} // namespace rankcrank
