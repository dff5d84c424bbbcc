#ifndef EISZETA_RATIONAL_HPP
#define EISZETA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace eiszeta {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

/// Generalized binomial coefficient C(a, k) for arbitrary integer a.
/// For a < 0 this is the coefficient appearing in the truncated
/// geometric series (1+t)^a = sum_k C(a,k) t^k.
inline Int binomial(const Int& a, unsigned long k) {
    Int num = 1;
    for (unsigned long j = 0; j < k; ++j) num *= a - static_cast<long>(j);
    return num / factorial(k);
}

inline Int binomial(unsigned long a, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), a, k);
    return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (b == 0) throw std::domain_error("pow_rat: zero base, negative exponent");
        return Rat(1) / pow_rat(b, -e);
    }
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), b.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den().get_mpz_t(), b.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
}

/// p-adic valuation of a nonzero rational (may be negative).
inline long padic_valuation(const Rat& q, const Int& p) {
    if (q == 0) throw std::domain_error("padic_valuation of 0");
    long v = 0;
    Int n = q.get_num();
    Int d = q.get_den();
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
        d /= p;
        --v;
    }
    return v;
}

/// Inverse of a mod m (m > 1, gcd(a,m) = 1).
inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

/// Reduce a p-integral rational to its canonical representative in [0, m).
inline Int rat_mod(const Rat& q, const Int& m) {
    Int den = q.get_den();
    Int num = q.get_num();
    Int inv = mod_inverse(den % m == 0 ? den : den % m, m);
    Int r = (num % m) * inv % m;
    if (r < 0) r += m;
    return r;
}

inline bool is_probable_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

/// Distinct prime factors by trial division (desk-scale inputs).
inline std::vector<Int> prime_factors(Int n) {
    std::vector<Int> out;
    n = abs(n);
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) {
    return q.get_den() == 1 ? q.get_num().get_str()
                            : q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

/// Fractional part in [0,1).
inline Rat frac_mod1(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return q - Rat(fl);
}

}  // namespace eiszeta

#endif
