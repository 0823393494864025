#ifndef RANKCRANK_TYPES_HPP
#define RANKCRANK_TYPES_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace rankcrank {

using Z = mpz_class;
using Q = mpq_class;

// Construction of a multiplicative inverse failed because the constant term is 0.
struct zero_constant_term : std::domain_error {
    zero_constant_term() : std::domain_error("series has zero constant term, not invertible") {}
};

// A statistic (rank/crank) was requested for the empty partition of 0.
struct empty_partition : std::domain_error {
    empty_partition() : std::domain_error("statistic undefined for the empty partition") {}
};

// A sample point makes a denominator 1 - z*q^n vanish at q^0.
struct pole_at_sample : std::domain_error {
    explicit pole_at_sample(const std::string& what) : std::domain_error(what) {}
};

// An exact linear system that should determine unique coefficients has no solution.
struct inconsistent_system : std::runtime_error {
    explicit inconsistent_system(const std::string& what) : std::runtime_error(what) {}
};

// A series is not a member of the polynomial space it was asked to be expanded in.
struct not_in_space : std::runtime_error {
    explicit not_in_space(const std::string& what) : std::runtime_error(what) {}
};

// A square-matrix operation was applied to a non-square matrix.
struct non_square : std::logic_error {
    non_square() : std::logic_error("matrix is not square") {}
};

inline Z binomial(unsigned long n, unsigned long k) {
    Z r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Z factorial(unsigned long n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Z zpow(const Z& base, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Z zpow(long base, unsigned long e) { return zpow(Z(base), e); }

inline Q qpow(const Q& base, long e) {
    if (e == 0) return Q(1);
    Q r;
    unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), a);
    if (e < 0) {
        if (r == 0) throw std::domain_error("inverse of zero");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

// Canonical "num/den" form, denominator always printed so output is stable.
inline std::string q_to_string(const Q& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Q q_from_string(const std::string& s) {
    Q x(s);
    x.canonicalize();
    return x;
}

} // namespace rankcrank

#endif
