#ifndef RANKCRANK_MOMENTS_HPP
#define RANKCRANK_MOMENTS_HPP

#include "rankcrank/bivariate.hpp"
#include "rankcrank/qseries.hpp"
#include "rankcrank/quasimodular.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace rankcrank {

// Memoized series shared by the moment and relation machinery.  One instance
// per order; not thread-safe, so concurrent jobs each build their own.
class SeriesCache {
public:
    explicit SeriesCache(int order) : order_(order) {}

    int order() const { return order_; }

    const QSeries& P();
    const QSeries& eta(int r);
    const QSeries& phi(int j);
    const ZSeries& rank_bivariate();

    // N_j and M_j generating functions sum_n (moment at n) q^n; rank moments
    // come from the bivariate table, crank moments from the recurrence below.
    const QSeries& rank_moment(int j);
    const QSeries& crank_moment(int j);

    // delta_q^m applied to the above, cached per (j, m).
    const QSeries& rank_moment_delta(int j, int m);
    const QSeries& crank_moment_delta(int j, int m);

    // T_k, the rank-side combination appearing in the master relation.
    const QSeries& T(int k);

private:
    int order_;
    std::map<int, QSeries> eta_;
    std::map<int, QSeries> phi_;
    std::unique_ptr<ZSeries> rank_bs_;
    std::map<int, QSeries> rank_mom_;
    std::map<int, QSeries> crank_mom_;
    std::map<std::pair<int, int>, QSeries> rank_delta_;
    std::map<std::pair<int, int>, QSeries> crank_delta_;
    std::map<int, QSeries> t_;
};

// sum_n N_j(n) q^n via the bivariate table.
QSeries rank_moment_series(int j, int order);

// sum_n M_j(n) q^n via the Phi recurrence
//   C_a = 2 sum_{j=1}^{a/2-1} binom(a-1, 2j-1) Phi_{2j-1} C_{a-2j}
//         + 2 Phi_{a-1} P.
QSeries crank_moment_series_rec(int a, int order);

// The same moment via z-differentiation of the product form; independent of
// the recurrence route.
QSeries crank_moment_series_direct(int a, int order);

// delta_q^m(P) = P * Phi with Phi built by the closure recurrence; the series
// member is the directly differentiated series for cross-checking.
struct Tower {
    QSeries series{0};
    PhiPoly phi;
};

Tower deltaq_P_tower(int m, int order);

// delta_q^m(C_{2n}) = P * Phi; phi uses the reduced generators only.
Tower deltaq_crank_tower(int n, int m, int order);

// The Phi with C_{2n} = 2 P * (...), i.e. deltaq_crank_tower(n, 0, order).phi.
PhiPoly crank_phi_poly(int n, int order);

// Members (j, m) of the family {delta_q^m(C_{2j}) : 1 <= j <= k, j+m <= k},
// ordered by j then m; size k(k+1)/2.
std::vector<std::pair<int, int>> crank_family(int k);
std::vector<std::string> crank_family_names(int k);
std::vector<QSeries> crank_family_series(int k, SeriesCache& cache);

// T_k = (2k-1)(k-1) R_{2k}
//       + 6 sum_{i=1}^{k-1} binom(2k,2i) (2^{2i-1}-1) delta_q(R_{2k-2i})
//       + sum_{i=1}^{k-1} [binom(2k,2i+2)(2^{2i+1}-1) - 2^{2i} binom(2k,2i+1)
//                          + binom(2k,2i)] R_{2k-2i}.
QSeries T_series(int k, SeriesCache& cache);

} // namespace rankcrank

#endif
