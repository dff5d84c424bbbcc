#include "eiszeta/quadratic_field.hpp"

#include <cmath>

namespace eiszeta {

QuadField QuadField::rationals() {
    QuadField f;
    f.degree_ = 1;
    return f;
}

QuadField QuadField::real_quadratic(const Int& D) {
    if (D < 2) throw std::invalid_argument("discriminant datum must be >= 2");
    // squarefree check by trial division
    for (Int p = 2; p * p <= D; ++p)
        if (mpz_divisible_p(D.get_mpz_t(), Int(p * p).get_mpz_t()))
            throw std::invalid_argument("discriminant datum must be squarefree");
    QuadField f;
    f.degree_ = 2;
    f.D_ = D;
    f.half_ = (D % 4 == 1);
    f.disc_ = f.half_ ? D : 4 * D;
    f.find_units();
    return f;
}

FieldElem QuadField::mul(const FieldElem& x, const FieldElem& y) const {
    if (degree_ == 1) return FieldElem(x.a * y.a);
    Rat bd = x.b * y.b;
    if (half_)
        return FieldElem(x.a * y.a + bd * make_rat(D_ - 1, 4), x.a * y.b + x.b * y.a + bd);
    return FieldElem(x.a * y.a + bd * Rat(D_), x.a * y.b + x.b * y.a);
}

FieldElem QuadField::conj(const FieldElem& x) const {
    if (degree_ == 1) return x;
    if (half_) return FieldElem(x.a + x.b, -x.b);  // conj(omega) = 1 - omega
    return FieldElem(x.a, -x.b);
}

Rat QuadField::norm(const FieldElem& x) const {
    if (degree_ == 1) return x.a;
    FieldElem n = mul(x, conj(x));
    return n.a;
}

Rat QuadField::trace(const FieldElem& x) const {
    if (degree_ == 1) return x.a;
    if (half_) return 2 * x.a + x.b;
    return 2 * x.a;
}

FieldElem QuadField::div(const FieldElem& x, const FieldElem& y) const {
    if (y.is_zero()) throw std::domain_error("division by zero field element");
    if (degree_ == 1) return FieldElem(x.a / y.a);
    Rat n = norm(y);
    FieldElem t = mul(x, conj(y));
    return FieldElem(t.a / n, t.b / n);
}

FieldElem QuadField::power(FieldElem x, long e) const {
    if (e < 0) return power(div(FieldElem(Rat(1)), x), -e);
    FieldElem r(Rat(1));
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

int QuadField::sign_embedding(const FieldElem& x, int which) const {
    if (degree_ == 1) return sgn(x.a);
    // write x = A + B sqrt(D); tau_0 takes +sqrt(D)
    Rat A = half_ ? x.a + x.b / 2 : x.a;
    Rat B = half_ ? x.b / 2 : x.b;
    if (which == 1) B = -B;
    int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare A^2 against B^2 D (never equal, D squarefree)
    int c = A * A > B * B * Rat(D_) ? 1 : -1;
    return sa > 0 ? c : -c;
}

bool QuadField::is_totally_positive(const FieldElem& x) const {
    if (degree_ == 1) return x.a > 0;
    return sign_embedding(x, 0) > 0 && sign_embedding(x, 1) > 0;
}

Rat QuadField::sqrt_approx(unsigned prec_bits) const {
    if (degree_ == 1) return Rat(0);
    auto it = sqrt_cache_.find(prec_bits);
    if (it != sqrt_cache_.end()) return it->second;
    // Newton iteration on rationals from a double seed
    Rat x(std::sqrt(mpz_get_d(D_.get_mpz_t())));
    Rat target = pow_rat(Rat(1, 2), static_cast<long>(prec_bits));
    Rat D(D_);
    for (int iter = 0; iter < 64; ++iter) {
        Rat err = x * x - D;
        if (abs(err) <= target) break;
        x = (x + D / x) / 2;
    }
    sqrt_cache_[prec_bits] = x;
    return x;
}

Rat QuadField::embed_approx(const FieldElem& x, int which, unsigned prec_bits) const {
    if (degree_ == 1) return x.a;
    Rat A = half_ ? x.a + x.b / 2 : x.a;
    Rat B = half_ ? x.b / 2 : x.b;
    Rat s = sqrt_approx(prec_bits);
    if (which == 0) return A + B * s;
    return A - B * s;
}

double QuadField::embed(const FieldElem& x, int which) const {
    return embed_approx(x, which, 64).get_d();
}

std::string QuadField::describe() const {
    if (degree_ == 1) return "Q";
    return "Q(sqrt " + D_.get_str() + ")";
}

void QuadField::find_units() {
    // the fundamental unit x + y*omega satisfies x/y ~ -conj(omega), so it
    // appears among the continued-fraction convergents of that quadratic
    // irrational; expand exactly via the (P + sqrt D)/Q recursion
    Int P, Q;
    if (half_) {
        P = -1;
        Q = 2;  // -conj(omega) = (sqrt D - 1)/2
    } else {
        P = 0;
        Q = 1;  // sqrt D
    }
    Int s;  // floor(sqrt D)
    mpz_sqrt(s.get_mpz_t(), D_.get_mpz_t());

    Int h_prev = 0, h_cur = 1, k_prev = 1, k_cur = 0;  // h_{-2} = 0, h_{-1} = 1
    Rat nomega = half_ ? make_rat(1 - D_, 4) : Rat(-D_);
    Rat tromega = half_ ? Rat(1) : Rat(0);
    auto norm_xy = [&](const Int& x, const Int& y) {
        Int xx = x * x, xy = x * y, yy = y * y;
        Rat r = Rat(xx);
        r += Rat(xy) * tromega;
        r += Rat(yy) * nomega;
        return r;
    };

    for (int i = 0; i < 512; ++i) {
        // a = floor((P + sqrt D)/Q); sqrt D irrational so P + sqrt D is never
        // an integer and fdiv with floor(sqrt D) is exact for Q > 0; the
        // recursion keeps Q > 0 after the first step, but handle both signs
        Int num = P + s;
        Int a;
        if (Q > 0) {
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            Int nq = -Q;
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), nq.get_mpz_t());
            a = -f - 1;
        }
        Int h_new = a * h_cur + h_prev;
        Int k_new = a * k_cur + k_prev;
        h_prev = h_cur;
        h_cur = h_new;
        k_prev = k_cur;
        k_cur = k_new;

        if (k_cur >= 1) {
            Rat n = norm_xy(h_cur, k_cur);
            if (n == 1 || n == -1) {
                unit_ = FieldElem(Rat(h_cur), Rat(k_cur));
                break;
            }
        }
        P = a * Q - P;
        Q = (D_ - P * P) / Q;
        if (Q == 0) throw std::logic_error("degenerate continued fraction");
    }
    if (unit_.b == 0) throw std::runtime_error("fundamental unit search failed");

    // totally positive generator of the positive unit group
    FieldElem u = unit_;
    if (is_totally_positive(u)) {
        tp_unit_ = u;
    } else if (is_totally_positive(neg(u))) {
        tp_unit_ = neg(u);
    } else {
        tp_unit_ = mul(u, u);
    }
    if (!is_totally_positive(tp_unit_) || norm(tp_unit_) != 1)
        throw std::logic_error("unit certification failed");
    // normalize so that tau_0(u+) > 1
    if (sign_embedding(sub(tp_unit_, FieldElem(Rat(1))), 0) < 0)
        tp_unit_ = div(FieldElem(Rat(1)), tp_unit_);
}

}  // namespace eiszeta
