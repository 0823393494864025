#include "rankcrank/bivariate.hpp"

#include "rankcrank/partitions.hpp"

namespace rankcrank {

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
    return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    for (const auto& [m1, c1] : a.terms())
        for (const auto& [m2, c2] : b.terms()) r.add_term(m1 + m2, c1 * c2);
    return r;
}

ZPoly zp_scale(const Q& c, const ZPoly& a) {
    ZPoly r;
    if (c == 0) return r;
    for (const auto& [m, x] : a.terms()) r.add_term(m, c * x);
    return r;
}

ZPoly zp_shift(const ZPoly& a, int k) {
    ZPoly r;
    for (const auto& [m, x] : a.terms()) r.add_term(m + k, x);
    return r;
}

ZPoly zp_delta_z(const ZPoly& a) {
    ZPoly r;
    for (const auto& [m, x] : a.terms()) r.add_term(m, Q(m) * x);
    return r;
}

Q zp_eval(const ZPoly& a, const Q& z) {
    Q s(0);
    for (const auto& [m, x] : a.terms()) s += x * qpow(z, m);
    return s;
}

Q zp_moment(const ZPoly& a, int j) {
    Q s(0);
    for (const auto& [m, x] : a.terms()) {
        if (j == 0) {
            s += x;
        } else {
            Z mj = zpow(Z(m), static_cast<unsigned long>(j));
            s += x * Q(mj);
        }
    }
    return s;
}

bool zp_symmetric(const ZPoly& a) {
    for (const auto& [m, x] : a.terms())
        if (a.coeff(-m) != x) return false;
    return true;
}

ZSeries bs_from_qseries(const QSeries& a) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int n = 0; n <= a.order(); ++n)
        if (a.coeff(n) != 0) t[n] = ZPoly::monomial(0, a.coeff(n));
    return ZSeries(a.order(), std::move(t));
}

ZSeries bs_add(const ZSeries& a, const ZSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<ZPoly> t(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) t[i] = zp_add(a.term(i), b.term(i));
    return ZSeries(n, std::move(t));
}

ZSeries bs_sub(const ZSeries& a, const ZSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<ZPoly> t(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) t[i] = zp_sub(a.term(i), b.term(i));
    return ZSeries(n, std::move(t));
}

ZSeries bs_mul(const ZSeries& a, const ZSeries& b) {
    int n = std::min(a.order(), b.order());
    std::vector<ZPoly> t(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        if (a.term(i).is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.term(j).is_zero()) continue;
            t[i + j] = zp_add(t[i + j], zp_mul(a.term(i), b.term(j)));
        }
    }
    return ZSeries(n, std::move(t));
}

ZSeries bs_scale(const Q& c, const ZSeries& a) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) t[i] = zp_scale(c, a.term(i));
    return ZSeries(a.order(), std::move(t));
}

ZSeries bs_scale_q(const QSeries& s, const ZSeries& a) {
    int n = std::min(s.order(), a.order());
    std::vector<ZPoly> t(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        if (s.coeff(i) == 0) continue;
        for (int j = 0; i + j <= n; ++j)
            t[i + j] = zp_add(t[i + j], zp_scale(s.coeff(i), a.term(j)));
    }
    return ZSeries(n, std::move(t));
}

ZSeries bs_scale_zp(const ZPoly& p, const ZSeries& a) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) t[i] = zp_mul(p, a.term(i));
    return ZSeries(a.order(), std::move(t));
}

ZSeries bs_shift_z(const ZSeries& a, int k) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) t[i] = zp_shift(a.term(i), k);
    return ZSeries(a.order(), std::move(t));
}

ZSeries delta_z(const ZSeries& a) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) t[i] = zp_delta_z(a.term(i));
    return ZSeries(a.order(), std::move(t));
}

ZSeries delta_q_b(const ZSeries& a) {
    std::vector<ZPoly> t(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) t[i] = zp_scale(Q(i), a.term(i));
    return ZSeries(a.order(), std::move(t));
}

QSeries bs_eval_z(const ZSeries& a, const Q& z) {
    std::vector<Q> v(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) v[i] = zp_eval(a.term(i), z);
    return QSeries(a.order(), std::move(v));
}

QSeries bs_moment(const ZSeries& a, int j) {
    std::vector<Q> v(static_cast<size_t>(a.order()) + 1);
    for (int i = 0; i <= a.order(); ++i) v[i] = zp_moment(a.term(i), j);
    return QSeries(a.order(), std::move(v));
}

bool bs_is_zero(const ZSeries& a) {
    for (int i = 0; i <= a.order(); ++i)
        if (!a.term(i).is_zero()) return false;
    return true;
}

static ZSeries assemble_from_count_series(Stat kind, int order) {
    std::vector<ZPoly> t(static_cast<size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) {
        QSeries s = kind == Stat::rank ? rank_count_series(m, order)
                                       : crank_count_series(m, order);
        for (int n = 0; n <= order; ++n) {
            if (s.coeff(n) == 0) continue;
            t[n].add_term(m, s.coeff(n));
            if (m != 0) t[n].add_term(-m, s.coeff(n));
        }
    }
    return ZSeries(order, std::move(t));
}

ZSeries rank_gf(int order) { return assemble_from_count_series(Stat::rank, order); }

ZSeries crank_gf_formula(int order) { return assemble_from_count_series(Stat::crank, order); }

// Multiply by 1/(1 - z^s q^step) = sum_{k>=0} z^{sk} q^{step k}.
static ZSeries mul_geometric(const ZSeries& a, int step, int s) {
    int n = a.order();
    std::vector<ZPoly> t(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        ZPoly acc;
        for (int k = 0; k * step <= j; ++k)
            acc = zp_add(acc, zp_shift(a.term(j - k * step), s * k));
        t[j] = std::move(acc);
    }
    return ZSeries(n, std::move(t));
}

ZSeries crank_gf(int order) {
    ZSeries c = bs_from_qseries(eta_power(1, order));
    for (int n = 1; n <= order; ++n) {
        c = mul_geometric(c, n, 1);
        c = mul_geometric(c, n, -1);
    }
    return c;
}

static IdentityReport compare_bs(const std::string& name, const ZSeries& lhs, const ZSeries& rhs,
                                 std::vector<std::string> samples = {}) {
    IdentityReport rep;
    rep.identity = name;
    rep.order = std::min(lhs.order(), rhs.order());
    rep.samples = std::move(samples);
    for (int n = 0; n <= rep.order; ++n) {
        ZPoly d = zp_sub(lhs.term(n), rhs.term(n));
        if (!d.is_zero()) {
            rep.pass = false;
            rep.fail_q = n;
            rep.fail_z = d.terms().begin()->first;
            rep.lhs_value = q_to_string(lhs.coeff(n, rep.fail_z));
            rep.rhs_value = q_to_string(rhs.coeff(n, rep.fail_z));
            return rep;
        }
    }
    return rep;
}

static IdentityReport compare_qs(const std::string& name, const QSeries& lhs, const QSeries& rhs,
                                 std::vector<std::string> samples = {}) {
    IdentityReport rep;
    rep.identity = name;
    rep.order = std::min(lhs.order(), rhs.order());
    rep.samples = std::move(samples);
    if (auto bad = qs_first_mismatch(lhs, rhs)) {
        rep.pass = false;
        rep.fail_q = *bad;
        rep.lhs_value = q_to_string(lhs.coeff(*bad));
        rep.rhs_value = q_to_string(rhs.coeff(*bad));
    }
    return rep;
}

IdentityReport verify_pde(int order) {
    ZSeries r = rank_gf(order);
    ZSeries c = crank_gf(order);
    QSeries eta2 = eta_power(2, order);

    ZSeries lhs = bs_shift_z(bs_scale_q(eta2, bs_mul(bs_mul(c, c), c)), 1);

    ZPoly one_minus_z_sq;                       // (1-z)^2
    one_minus_z_sq.add_term(0, Q(1));
    one_minus_z_sq.add_term(1, Q(-2));
    one_minus_z_sq.add_term(2, Q(1));
    ZPoly z_sq_minus_one;                       // z^2 - 1
    z_sq_minus_one.add_term(2, Q(1));
    z_sq_minus_one.add_term(0, Q(-1));

    ZSeries dq = delta_q_b(r);
    ZSeries dz = delta_z(r);
    ZSeries dzz = delta_z(dz);

    ZSeries rhs = bs_scale_zp(one_minus_z_sq, bs_scale(Q(3), dq));
    rhs = bs_add(rhs, bs_scale_zp(one_minus_z_sq, bs_scale(Q(1, 2), dzz)));
    rhs = bs_sub(rhs, bs_scale_zp(z_sq_minus_one, bs_scale(Q(1, 2), dz)));
    rhs = bs_add(rhs, bs_shift_z(r, 1));

    return compare_bs("pde", lhs, rhs);
}

QSeries asd_J(const Q& z, int order) {
    if (z == 0) throw std::invalid_argument("J requires z != 0");
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    v[0] = 1;
    Q zinv = 1 / z;
    auto mul_factor = [&](const Q& c, int e) {
        // multiply the accumulated series by (1 + c q^e)
        if (e == 0) {
            Q f = 1 + c;
            for (auto& x : v) x *= f;
            return;
        }
        for (int i = order; i >= e; --i) v[i] += c * v[i - e];
    };
    mul_factor(-z, 0);
    for (int n = 1; n <= order; ++n) {
        mul_factor(-zinv, n);
        mul_factor(-z, n);
    }
    return QSeries(order, std::move(v));
}

QSeries asd_S(const Q& z, const Q& zeta, int order) {
    if (z == 0 || zeta == 0) throw std::invalid_argument("S requires z, zeta != 0");
    if (z == 1) throw pole_at_sample("S has a pole at z = 1 (n = 0 term)");
    std::vector<Q> v(static_cast<size_t>(order) + 1);
    v[0] = 1 / (1 - z);
    for (long n = 1;; ++n) {
        long e = 3 * n * (n + 1) / 2;
        if (e > order) break;
        Q pref = qpow(zeta, n);
        if (n % 2 == 1) pref = -pref;
        Q zk(1);
        for (long k = 0; e + n * k <= order; ++k) {
            v[static_cast<size_t>(e + n * k)] += pref * zk;
            zk *= z;
        }
    }
    // n = -m terms: 1/(1 - z q^{-m}) = -z^{-1} q^m / (1 - z^{-1} q^m)
    Q zinv = 1 / z;
    for (long m = 1;; ++m) {
        long e = 3 * m * (m - 1) / 2 + m;
        if (e > order) break;
        Q pref = qpow(zeta, -m) * zinv;
        if (m % 2 == 0) pref = -pref;
        Q zk(1);
        for (long k = 0; e + m * k <= order; ++k) {
            v[static_cast<size_t>(e + m * k)] += pref * zk;
            zk *= zinv;
        }
    }
    return QSeries(order, std::move(v));
}

IdentityReport verify_asd_identity(const Q& z, const Q& zeta, int order) {
    if (z == 0 || zeta == 0) throw std::invalid_argument("samples must be nonzero");
    const Q zz = z * zeta;
    const Q zq = z / zeta;
    for (const Q& bad : {z, zeta, zz, zq})
        if (bad == 1) throw pole_at_sample("sample makes a factor vanish at q^0");

    Q zeta3 = qpow(zeta, 3);
    QSeries lhs = qs_scale(zeta3, asd_S(z * zeta, zeta3, order));
    lhs = qs_add(lhs, asd_S(z / zeta, 1 / zeta3, order));
    QSeries jratio = qs_mul(asd_J(zeta * zeta, order), qs_inv(asd_J(zeta, order)));
    lhs = qs_sub(lhs, qs_scale(zeta, qs_mul(jratio, asd_S(z, Q(1), order))));

    QSeries num = qs_mul(qs_mul(asd_J(zeta, order), asd_J(zeta * zeta, order)),
                         eta_power(2, order));
    QSeries den = qs_mul(qs_mul(asd_J(zeta * z, order), asd_J(z, order)),
                         asd_J(z / zeta, order));
    QSeries rhs = qs_mul(num, qs_inv(den));

    return compare_qs("asd", lhs, rhs,
                      {"z=" + q_to_string(z), "zeta=" + q_to_string(zeta)});
}

IdentityReport verify_s_rank_identity(const Q& z, int order) {
    if (z == 0) throw std::invalid_argument("sample must be nonzero");
    if (z == 1) throw pole_at_sample("identity has a pole at z = 1");
    QSeries lhs = qs_scale(z, asd_S(z, Q(1), order));
    QSeries rz = bs_eval_z(rank_gf(order), z);
    QSeries rstar = qs_scale(1 / (1 - z), rz);
    QSeries rhs = qs_mul(eta_power(1, order), qs_add(qs_monomial(order, 0, Q(-1)), rstar));
    return compare_qs("s_rank", lhs, rhs, {"z=" + q_to_string(z)});
}

} // namespace rankcrank
