#ifndef RANKCRANK_QUASIMODULAR_HPP
#define RANKCRANK_QUASIMODULAR_HPP

#include "rankcrank/qseries.hpp"
#include "rankcrank/reports.hpp"
#include "rankcrank/types.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <vector>

namespace rankcrank {

// Bernoulli number B_n with the convention B_1 = -1/2.
Q bernoulli(int n);

// Phi_j = sum_{n>=1} sigma_j(n) q^n, the divisor-power-sum series (j odd >= 1).
QSeries phi_series(int j, int order);

// E_k = 1 - (2k / B_k) Phi_{k-1} for even weight k >= 2.
QSeries eisenstein(int k, int order);

// Polynomial in the generators Phi_1, Phi_3, Phi_5 with rational
// coefficients.  A key {a,b,c} stands for the monomial Phi_1^a Phi_3^b Phi_5^c.
class PhiPoly {
public:
    using Key = std::array<int, 3>;

    PhiPoly() = default;

    static PhiPoly monomial(int a, int b, int c, const Q& coeff) {
        PhiPoly p;
        p.add_term({a, b, c}, coeff);
        return p;
    }

    void add_term(const Key& k, const Q& c) {
        if (c == 0) return;
        auto [it, inserted] = c_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    const std::map<Key, Q>& terms() const { return c_; }

    Q coeff(int a, int b, int c) const {
        auto it = c_.find({a, b, c});
        return it == c_.end() ? Q(0) : it->second;
    }

    bool is_zero() const { return c_.empty(); }
    bool operator==(const PhiPoly& o) const { return c_ == o.c_; }

private:
    std::map<Key, Q> c_;
};

PhiPoly pp_add(const PhiPoly& a, const PhiPoly& b);
PhiPoly pp_sub(const PhiPoly& a, const PhiPoly& b);
PhiPoly pp_scale(const Q& c, const PhiPoly& a);
PhiPoly pp_mul(const PhiPoly& a, const PhiPoly& b);

// Degree a+2b+3c of a monomial; a polynomial lies in the span W_n when every
// monomial has degree between 1 and n.
int pp_monomial_degree(const PhiPoly::Key& k);
int pp_degree(const PhiPoly& a);
bool pp_in_W(const PhiPoly& a, int n);

// Image of the Euler operator, using the closed derivatives of the three
// generators; maps W_n into W_{n+1}.
PhiPoly delta_q_phi(const PhiPoly& a);

// Evaluates PhiPoly values to q-series at a fixed order, memoizing monomial
// products.
class PhiEvaluator {
public:
    explicit PhiEvaluator(int order);
    int order() const { return order_; }
    const QSeries& monomial_series(const PhiPoly::Key& k);
    QSeries eval(const PhiPoly& a);

private:
    int order_;
    std::map<PhiPoly::Key, QSeries> memo_;
};

// Dimension of the space of modular forms of weight 2k for the full modular
// group; dim_V / dim_W are the graded and cumulative monomial-span dimensions.
int dim_M(int k);
int dim_V(int n);
int dim_W(int n);

// Monomials spanning W_n, ordered by degree and then by lexicographically
// descending exponents, so e.g. n = 2 gives (1,0,0), (2,0,0), (0,1,0).
std::vector<PhiPoly::Key> monomial_basis_W(int n);

// Expresses Phi_j (odd j >= 7) in the monomials Phi_3^b Phi_5^c with
// 0 < 2b+3c <= (j+1)/2 by exact elimination, verifying through the given
// order.  Throws inconsistent_system if no expansion exists.
PhiPoly reduce_phi(int j, int order);

// Phi_j as a PhiPoly: the plain generator for j in {1,3,5}, reduce_phi above.
PhiPoly phi_reduced(int j, int order);

// Writes f = P * (element of W_n) by clearing the P factor and solving for
// the monomial coefficients; throws not_in_space when f is not of that shape.
PhiPoly express_in_PW(const QSeries& f, int n, int order);

// The three derivative identities 12 d(E2) = E2^2 - E4,
// 3 d(E4) = E2 E4 - E6, 2 d(E6) = E2 E6 - E4^2, checked coefficientwise.
std::vector<IdentityReport> verify_eisenstein_derivatives(int order);

// Checks the generator derivatives used by delta_q_phi against direct
// differentiation of the Phi series, and the Phi_11 reduction.
std::vector<IdentityReport> verify_phi_closure(int order);

// Compares dim_M / dim_V / dim_W for k = 1..10 against the known values,
// including dim W_6 = 22 and dim W_7 = 30.
IdentityReport verify_dimension_table();

nlohmann::ordered_json phi_poly_to_json(const PhiPoly& a);
PhiPoly phi_poly_from_json(const nlohmann::ordered_json& j);

} // namespace rankcrank

#endif
