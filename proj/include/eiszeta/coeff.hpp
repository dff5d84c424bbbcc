#ifndef EISZETA_COEFF_HPP
#define EISZETA_COEFF_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "eiszeta/rational.hpp"

namespace eiszeta {

enum class RingKind { Rational, Integer, ModPrimePower };

/// One of the three exact coefficient rings: Q, Z, or Z/p^r.
/// Elements are plain rationals; for Z/p^r the canonical representative
/// lies in [0, p^r). All operations are exact.
class CoeffRing {
public:
    static CoeffRing rationals() { return CoeffRing(RingKind::Rational, 0, 0); }
    static CoeffRing integers() { return CoeffRing(RingKind::Integer, 0, 0); }
    static CoeffRing mod_prime_power(const Int& p, unsigned r) {
        if (r < 1) throw std::invalid_argument("mod_prime_power: exponent must be >= 1");
        if (!is_probable_prime(p)) throw std::invalid_argument("mod_prime_power: p not prime");
        return CoeffRing(RingKind::ModPrimePower, p, r);
    }

    RingKind kind() const { return kind_; }
    const Int& prime() const { return p_; }
    unsigned exponent() const { return r_; }
    const Int& modulus() const { return modulus_; }

    bool operator==(const CoeffRing& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && r_ == o.r_;
    }
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    /// Canonicalize a rational into the ring; rejects values that do not
    /// belong (non-integers over Z, p in the denominator over Z/p^r).
    Rat from_rat(const Rat& q) const {
        switch (kind_) {
            case RingKind::Rational:
                return q;
            case RingKind::Integer:
                if (q.get_den() != 1) throw std::domain_error("not an integer coefficient");
                return q;
            case RingKind::ModPrimePower:
                return Rat(rat_mod(q, modulus_));
        }
        throw std::logic_error("unreachable");
    }
    Rat from_int(const Int& n) const { return from_rat(Rat(n)); }

    Rat add(const Rat& a, const Rat& b) const { return reduce(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return reduce(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return reduce(a * b); }
    Rat neg(const Rat& a) const { return reduce(-a); }

    bool is_zero(const Rat& a) const { return a == 0; }

    bool is_unit(const Rat& a) const {
        switch (kind_) {
            case RingKind::Rational:
                return a != 0;
            case RingKind::Integer:
                return a == 1 || a == -1;
            case RingKind::ModPrimePower:
                return a != 0 && !mpz_divisible_p(a.get_num().get_mpz_t(), p_.get_mpz_t());
        }
        return false;
    }

    /// Exact division where defined.
    std::optional<Rat> div(const Rat& a, const Rat& b) const {
        if (b == 0) return std::nullopt;
        switch (kind_) {
            case RingKind::Rational:
                return a / b;
            case RingKind::Integer: {
                Rat q = a / b;
                if (q.get_den() != 1) return std::nullopt;
                return q;
            }
            case RingKind::ModPrimePower: {
                Int bi = b.get_num();
                // strip common p-power so that x = p^v u with u a unit
                Int ai = a.get_num();
                unsigned long vb = 0;
                Int bu = bi;
                while (bu != 0 && mpz_divisible_p(bu.get_mpz_t(), p_.get_mpz_t())) {
                    bu /= p_;
                    ++vb;
                }
                if (vb >= r_) return std::nullopt;
                Int pv = pow_int(p_, vb);
                if (!mpz_divisible_p(ai.get_mpz_t(), pv.get_mpz_t())) return std::nullopt;
                Int au = ai / pv;
                Int m = modulus_ / pv;  // quotient is determined mod p^{r-vb}
                Int q = au % m * mod_inverse(bu % m, m) % m;
                if (q < 0) q += m;
                return Rat(q);
            }
        }
        return std::nullopt;
    }

    std::string describe() const {
        switch (kind_) {
            case RingKind::Rational:
                return "Q";
            case RingKind::Integer:
                return "Z";
            case RingKind::ModPrimePower:
                return "Z/" + p_.get_str() + "^" + std::to_string(r_);
        }
        return "?";
    }

private:
    CoeffRing(RingKind k, const Int& p, unsigned r) : kind_(k), p_(p), r_(r) {
        if (k == RingKind::ModPrimePower) modulus_ = pow_int(p, r);
    }

    Rat reduce(const Rat& q) const {
        if (kind_ == RingKind::ModPrimePower) return Rat(rat_mod(q, modulus_));
        return q;
    }

    RingKind kind_;
    Int p_;
    unsigned r_;
    Int modulus_;
};

}  // namespace eiszeta

#endif
