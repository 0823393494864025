#ifndef RANKCRANK_RELATIONS_HPP
#define RANKCRANK_RELATIONS_HPP

#include "rankcrank/linalg.hpp"
#include "rankcrank/moments.hpp"
#include "rankcrank/reports.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rankcrank {

// A linear expansion target = sum coeffs[i] * basis[i], exact (modulus 0) or
// over Z/p, verified on every q-power up to residual_checked_to.
struct RelationResult {
    std::string target;
    std::vector<std::string> basis;
    std::vector<Q> coeffs;
    unsigned long modulus = 0;
    int residual_checked_to = 0;
    bool trivial = false;
};

// Exact or modular elimination over the q-coefficient rows; nullopt signals
// that no expansion exists (independence).  Throws inconsistent_system when
// the basis itself is dependent, since coefficients would not be unique.
std::optional<RelationResult> discover_relation(const QSeries& target,
                                                const std::string& target_name,
                                                const std::vector<QSeries>& basis,
                                                const std::vector<std::string>& basis_names,
                                                unsigned long modulus = 0);

// Flags combinations sum v_i delta^{m_i}(C_{2 j_i}) == 0 (mod p) that follow
// from k^{2j} == k^{2j'} (mod p) for all k, available when 2j == 2j' mod p-1.
bool fermat_trivial_combination(const std::vector<std::pair<int, int>>& symbols,
                                const std::vector<Q>& coeffs, unsigned long p);

// Expands C_{2 target_j} over the rest of the order-k family mod p and runs
// the Fermat filter on the outcome.
std::optional<RelationResult> discover_crank_congruence(int target_j, int k, unsigned long p,
                                                        SeriesCache& cache);

using Poly = std::vector<Q>;  // polynomial in n, ascending coefficients

Q poly_eval(const Poly& p, long n);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Q& c, const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_normal(Poly p);  // strip trailing zeros

// Pointwise linear identity
//   lhs(n) = sum_j M[j](n) * M_{2j}(n) + N2(n) * N_2(n) + N12(n) * N_12(n),
// where lhs is the rank moment N_{2k} (k > 0) or p23(n-1) (k == 0).
struct MomentIdentity {
    std::string lhs;
    int k = 0;
    std::map<int, Poly> M;
    Poly N2;
    Poly N12;
};

// The five stated rank-moment expansions (indices 4, 6, 8, 10, 14) and the
// p23 expansion, with the published rational polynomial coefficients.
const std::vector<MomentIdentity>& stated_moment_identities();
const MomentIdentity& stated_eta23_identity();

// A combination of moments that vanishes mod p:
//   sum_j M[j](n) M_{2j}(n) + N2(n) N_2(n) + N12(n) N_12(n) == 0 (mod p).
struct Congruence {
    std::string name;
    unsigned long p = 0;
    std::map<int, Poly> M;
    Poly N2;
    Poly N12;
};

// The ten stated congruences (moduli 7, 11, 11, 11, 41, 43, 53, 83, 797,
// 120667369).
const std::vector<Congruence>& stated_congruences();

// The mod-23 combination whose value is (-1)^k on n = 23k(3k+-1)/2 + 1 and 0
// elsewhere.
const Congruence& stated_mod23_combination();

// Everything the recursive elimination reproduces without consulting the
// stated tables: the five moment identities, the p23 expansion, and the
// independence of T_6 from the order-6 crank family.
struct DerivedIdentities {
    std::map<int, MomentIdentity> by_k;
    MomentIdentity eta23;
    bool t6_independent = false;
    std::vector<RelationResult> steps;
};

// Requires cache order >= 60 (twice the largest basis).
DerivedIdentities derive_moment_identities(SeriesCache& cache);

bool identity_equal(const MomentIdentity& a, const MomentIdentity& b);

// lhs: sum_i binom(a,2i) sum_{alpha+beta+gamma=a-2i even} multinomial
//        C_alpha C_beta C_gamma / P^2  - 3 (2^{a-1}-1) C_2   (C_0 = P)
// rhs: T_{a/2}.
std::pair<QSeries, QSeries> master_relation_sides(int a, SeriesCache& cache);
IdentityReport verify_master_relation(int a, SeriesCache& cache);

PointwiseReport verify_moment_identity(const MomentIdentity& id, SeriesCache& cache,
                                       int n_lo, int n_max);
std::vector<PointwiseReport> verify_stated_moment_identities(SeriesCache& cache, int n_max);
PointwiseReport verify_stated_eta23_identity(SeriesCache& cache, int n_max);

std::vector<PointwiseReport> verify_moment_congruences(SeriesCache& cache, int n_max_small,
                                                       int n_max_large);

// Includes the support / sign logic on n = 23k(3k+-1)/2 + 1.
PointwiseReport verify_mod23_identity(SeriesCache& cache, int n_max);

// (d_q + 2) C_4 + (6 d_q^2 + 4 d_q + 1) C_2
//   = -(7/15) P (180 Phi_1 Phi_3 - 30 Phi_1^2 - 18 Phi_5 - 35 Phi_3 - 7 Phi_1).
IdentityReport verify_mod7_generating_identity(SeriesCache& cache, int order);

std::vector<PointwiseReport> verify_classical_identities(int n_small, int n_large);

// q-coefficient matrix (rows q^1..q^6) of the order-3 crank family.
QMat family_matrix_k3(SeriesCache& cache);

nlohmann::ordered_json relation_to_json(const RelationResult& r);

} // namespace rankcrank

#endif
