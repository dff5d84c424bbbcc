#ifndef EISZETA_QUADRATIC_FIELD_HPP
#define EISZETA_QUADRATIC_FIELD_HPP

#include <map>
#include <memory>
#include <stdexcept>

#include "eiszeta/rational.hpp"

namespace eiszeta {

/// Element a + b*omega of Q or of a real quadratic field Q(sqrt D), where
/// omega is the stored integral generator (sqrt D, or (1+sqrt D)/2 when
/// D = 1 mod 4).
struct FieldElem {
    Rat a, b;
    FieldElem() : a(0), b(0) {}
    FieldElem(Rat x) : a(std::move(x)), b(0) {}
    FieldElem(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }
    bool operator<(const FieldElem& o) const { return a != o.a ? a < o.a : b < o.b; }
};

/// Totally real field of degree 1 or 2 with exact arithmetic, exact
/// embedding signs, and certified fundamental units. tau_1 sends
/// sqrt D to the positive root.
class QuadField {
public:
    static QuadField rationals();
    static QuadField real_quadratic(const Int& D);

    int degree() const { return degree_; }
    const Int& D() const { return D_; }
    bool half_basis() const { return half_; }
    const Int& discriminant() const { return disc_; }
    FieldElem omega() const { return FieldElem(Rat(0), Rat(1)); }

    bool operator==(const QuadField& o) const {
        return degree_ == o.degree_ && D_ == o.D_;
    }

    FieldElem add(const FieldElem& x, const FieldElem& y) const {
        return FieldElem(x.a + y.a, x.b + y.b);
    }
    FieldElem sub(const FieldElem& x, const FieldElem& y) const {
        return FieldElem(x.a - y.a, x.b - y.b);
    }
    FieldElem neg(const FieldElem& x) const { return FieldElem(-x.a, -x.b); }
    FieldElem mul(const FieldElem& x, const FieldElem& y) const;
    FieldElem div(const FieldElem& x, const FieldElem& y) const;
    FieldElem conj(const FieldElem& x) const;
    Rat norm(const FieldElem& x) const;
    Rat trace(const FieldElem& x) const;
    FieldElem power(FieldElem x, long e) const;

    /// Exact sign of tau_i(x), i in {0,1}; never needs floating point.
    int sign_embedding(const FieldElem& x, int which) const;
    bool is_totally_positive(const FieldElem& x) const;
    /// sign of tau_which(x - y)
    int cmp_embedding(const FieldElem& x, const FieldElem& y, int which) const {
        return sign_embedding(sub(x, y), which);
    }

    /// Rational approximation of sqrt D with |error| < 2^-prec_bits.
    Rat sqrt_approx(unsigned prec_bits) const;
    Rat embed_approx(const FieldElem& x, int which, unsigned prec_bits) const;
    double embed(const FieldElem& x, int which) const;

    const FieldElem& fundamental_unit() const { return unit_; }
    const FieldElem& totally_positive_unit() const { return tp_unit_; }

    std::string describe() const;

    QuadField() = default;  // the rational field

private:
    void find_units();

    int degree_ = 1;
    Int D_ = 0;
    bool half_ = false;
    Int disc_ = 1;
    FieldElem unit_{Rat(1)};
    FieldElem tp_unit_{Rat(1)};
    mutable std::map<unsigned, Rat> sqrt_cache_;
};

}  // namespace eiszeta

#endif
