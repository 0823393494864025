#ifndef RANKCRANK_BIVARIATE_HPP
#define RANKCRANK_BIVARIATE_HPP

#include "rankcrank/qseries.hpp"
#include "rankcrank/reports.hpp"
#include "rankcrank/types.hpp"

#include <map>

namespace rankcrank {

// Sparse Laurent polynomial in z with exact rational coefficients.
class ZPoly {
public:
    ZPoly() = default;

    static ZPoly monomial(int m, const Q& c) {
        ZPoly p;
        p.add_term(m, c);
        return p;
    }

    void add_term(int m, const Q& c) {
        if (c == 0) return;
        auto [it, inserted] = c_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    const std::map<int, Q>& terms() const { return c_; }

    Q coeff(int m) const {
        auto it = c_.find(m);
        return it == c_.end() ? Q(0) : it->second;
    }

    bool is_zero() const { return c_.empty(); }
    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

private:
    std::map<int, Q> c_;
};

ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const Q& c, const ZPoly& a);
ZPoly zp_shift(const ZPoly& a, int k);   // multiply by z^k
ZPoly zp_delta_z(const ZPoly& a);        // z d/dz, multiplies c_m by m
Q zp_eval(const ZPoly& a, const Q& z);
Q zp_moment(const ZPoly& a, int j);      // sum_m m^j c_m
bool zp_symmetric(const ZPoly& a);       // c_m == c_{-m} for all m

// Truncated series in q whose coefficients are Laurent polynomials in z.
class ZSeries {
public:
    explicit ZSeries(int order) : t_(static_cast<size_t>(order) + 1) {}
    ZSeries(int order, std::vector<ZPoly> terms) : t_(std::move(terms)) {
        t_.resize(static_cast<size_t>(order) + 1);
    }

    int order() const { return static_cast<int>(t_.size()) - 1; }

    const ZPoly& term(int n) const {
        static const ZPoly zero;
        if (n < 0 || n > order()) return zero;
        return t_[static_cast<size_t>(n)];
    }

    Q coeff(int n, int m) const { return term(n).coeff(m); }

private:
    std::vector<ZPoly> t_;
};

ZSeries bs_from_qseries(const QSeries& a);
ZSeries bs_add(const ZSeries& a, const ZSeries& b);
ZSeries bs_sub(const ZSeries& a, const ZSeries& b);
ZSeries bs_mul(const ZSeries& a, const ZSeries& b);
ZSeries bs_scale(const Q& c, const ZSeries& a);
ZSeries bs_scale_q(const QSeries& s, const ZSeries& a);   // multiply by a z-free series
ZSeries bs_scale_zp(const ZPoly& p, const ZSeries& a);    // multiply by a q-free Laurent polynomial
ZSeries bs_shift_z(const ZSeries& a, int k);
ZSeries delta_z(const ZSeries& a);
ZSeries delta_q_b(const ZSeries& a);
QSeries bs_eval_z(const ZSeries& a, const Q& z);
QSeries bs_moment(const ZSeries& a, int j);               // sum_m m^j [z^m] per q-power
bool bs_is_zero(const ZSeries& a);

// R(z,q) = sum_{n,m} N(m,n) z^m q^n assembled from the fixed-m series.
ZSeries rank_gf(int order);

// C(z,q) = prod (1-q^n) / ((1-z q^n)(1-z^{-1} q^n)), built factor by factor.
ZSeries crank_gf(int order);

// The same crank table assembled from the fixed-m series instead of the
// product; used as an independent route for large orders.
ZSeries crank_gf_formula(int order);

// Checks z (q)^2_inf C(z,q)^3 = (3(1-z)^2 d_q + (1/2)(1-z)^2 d_z^2
//                                 - (1/2)(z^2-1) d_z + z) R(z,q).
IdentityReport verify_pde(int order);

// J(z,q) = prod_{n>=1} (1 - z^{-1} q^n)(1 - z q^{n-1}) at a rational z.
QSeries asd_J(const Q& z, int order);

// S(z,zeta,q) = sum_{n in Z} (-1)^n zeta^n q^{3n(n+1)/2} / (1 - z q^n) at
// rational z, zeta.  Throws pole_at_sample when z = 1.
QSeries asd_S(const Q& z, const Q& zeta, int order);

// zeta^3 S(z zeta, zeta^3, q) + S(z zeta^{-1}, zeta^{-3}, q)
//   - zeta (J(zeta^2)/J(zeta)) S(z, 1, q)
//   = J(zeta) J(zeta^2) (q)^2_inf / (J(zeta z) J(z) J(z zeta^{-1})).
IdentityReport verify_asd_identity(const Q& z, const Q& zeta, int order);

// z S(z,1,q) = (q)_inf (-1 + R(z,q)/(1-z)).
IdentityReport verify_s_rank_identity(const Q& z, int order);

} // namespace rankcrank

#endif
