#ifndef EISZETA_FORMS_HPP
#define EISZETA_FORMS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eiszeta/rational.hpp"

namespace eiszeta {
namespace forms {

/// Gaussian rational a + bi.
struct QI {
    Rat re, im;
    QI() : re(0), im(0) {}
    QI(Rat r) : re(std::move(r)), im(0) {}
    QI(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    QI operator+(const QI& o) const { return QI(re + o.re, im + o.im); }
    QI operator-(const QI& o) const { return QI(re - o.re, im - o.im); }
    QI operator-() const { return QI(-re, -im); }
    QI operator*(const QI& o) const {
        return QI(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    bool operator==(const QI& o) const { return re == o.re && im == o.im; }
};

/// Variable layout for the scalar polynomial ring: one transcendental tau
/// (standing for 2*pi*i), coordinates v_1..v_n, series variables z_1..z_n,
/// and formal covector components m_1..m_n.
struct VarLayout {
    int n;
    explicit VarLayout(int rank) : n(rank) {}
    int tau() const { return 0; }
    int v(int j) const { return 1 + j; }
    int z(int j) const { return 1 + n + j; }
    int m(int j) const { return 1 + 2 * n + j; }
    int total() const { return 1 + 3 * n; }
};

/// Sparse multivariate polynomial over the Gaussian rationals.
class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const QI& c) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_[std::vector<int>(nvars, 0)] = c;
        return p;
    }
    static Poly variable(int nvars, int idx, int power = 1) {
        Poly p(nvars);
        std::vector<int> mono(nvars, 0);
        mono[idx] = power;
        p.terms_[mono] = QI(Rat(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, QI>& terms() const { return terms_; }

    void add_term(const std::vector<int>& mono, const QI& c) {
        auto it = terms_.find(mono);
        QI v = (it == terms_.end() ? QI() : it->second) + c;
        if (v.is_zero())
            terms_.erase(mono);
        else
            terms_[mono] = v;
    }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    /// Product, truncating total z-degree at zcap when zcap >= 0.
    Poly mul(const Poly& o, const VarLayout& L, int zcap) const {
        Poly r(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                std::vector<int> m(nvars_);
                for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
                if (zcap >= 0) {
                    int zd = 0;
                    for (int j = 0; j < L.n; ++j) zd += m[L.z(j)];
                    if (zd > zcap) continue;
                }
                r.add_term(m, ca * cb);
            }
        return r;
    }

    Poly derivative(int var) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            std::vector<int> d = m;
            d[var] -= 1;
            r.add_term(d, c * QI(Rat(m[var])));
        }
        return r;
    }

    /// Substitute each variable by a linear combination of variables:
    /// var i -> sum_j S[i][j] * var j (rows indexed by old variables;
    /// identity rows may be omitted via empty entries).
    Poly substitute_linear(const std::vector<std::vector<Rat>>& S, const VarLayout& L,
                           int zcap) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Poly term = Poly::constant(nvars_, c);
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                Poly image(nvars_);
                if (S[i].empty()) {
                    image = Poly::variable(nvars_, i);
                } else {
                    for (int j = 0; j < nvars_; ++j)
                        if (S[i][j] != 0)
                            image.add_term(
                                [&] {
                                    std::vector<int> mm(nvars_, 0);
                                    mm[j] = 1;
                                    return mm;
                                }(),
                                QI(S[i][j]));
                }
                for (int e = 0; e < m[i]; ++e) term = term.mul(image, L, zcap);
            }
            r = r + term;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

private:
    int nvars_;
    std::map<std::vector<int>, QI> terms_;
};

/// Exact fraction num/den of polynomials. Denominators stay z-free (they
/// are powers of tau * mu_V in practice), so z-truncation commutes with
/// the division and every operation below is exact.
class Scalar {
public:
    Scalar() = default;
    Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    }
    static Scalar from_poly(Poly p) {
        int nv = p.nvars();
        return Scalar(std::move(p), Poly::constant(nv, QI(Rat(1))));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Scalar add(const Scalar& o, const VarLayout& L, int zcap) const {
        if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
        return Scalar(num_.mul(o.den_, L, zcap) + o.num_.mul(den_, L, zcap),
                      den_.mul(o.den_, L, -1));
    }
    Scalar sub(const Scalar& o, const VarLayout& L, int zcap) const {
        if (den_ == o.den_) return Scalar(num_ - o.num_, den_);
        return Scalar(num_.mul(o.den_, L, zcap) - o.num_.mul(den_, L, zcap),
                      den_.mul(o.den_, L, -1));
    }
    Scalar mul(const Scalar& o, const VarLayout& L, int zcap) const {
        return Scalar(num_.mul(o.num_, L, zcap), den_.mul(o.den_, L, -1));
    }
    Scalar negate() const { return Scalar(-num_, den_); }

    Scalar derivative(int var, const VarLayout& L, int zcap) const {
        // (p/q)' = (p' q - p q') / q^2
        Poly p1 = num_.derivative(var).mul(den_, L, zcap) -
                  num_.mul(den_.derivative(var), L, zcap);
        return Scalar(p1, den_.mul(den_, L, -1));
    }

    /// Exact equality via cross-multiplication (no gcd needed).
    bool equals(const Scalar& o, const VarLayout& L, int zcap) const {
        return num_.mul(o.den_, L, zcap) == o.num_.mul(den_, L, zcap);
    }

private:
    Poly num_, den_;
};

/// Exterior monomial over the 2n odd generators dv_1..dv_n, mu_1..mu_n,
/// encoded as bitmasks. Canonical generator order: dv_1 < ... < dv_n <
/// mu_1 < ... < mu_n.
struct WedgeKey {
    uint32_t dv = 0;
    uint32_t mu = 0;
    bool operator<(const WedgeKey& o) const {
        return dv != o.dv ? dv < o.dv : mu < o.mu;
    }
    bool operator==(const WedgeKey& o) const { return dv == o.dv && mu == o.mu; }
};

/// Element of the DG-algebra Omega(V) (x) Lambda V* with scalar-fraction
/// coefficients and an integer power of the orientation generator lambda.
class Form {
public:
    Form(int n, int K) : n_(n), K_(K), layout_(n) {}

    int n() const { return n_; }
    int K() const { return K_; }
    int lambda() const { return lambda_; }
    void set_lambda(int l) { lambda_ = l; }
    const VarLayout& layout() const { return layout_; }
    const std::map<WedgeKey, Scalar>& comps() const { return comps_; }
    bool is_zero() const;

    void add(const WedgeKey& k, const Scalar& s);
    void add_sign(const WedgeKey& k, const Scalar& s, int sign);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form negate() const;
    Form wedge(const Form& o) const;
    Form scalar_mul(const Scalar& s) const;

    /// Exterior derivative: d acts on scalars by formal v-derivatives and
    /// produces dv-legs; the mu-legs are constant.
    Form exterior_d() const;

    /// The degree -1 derivation with theta(mu_j) = v_j, theta(dv_j) = 0.
    Form theta() const;

    /// Component of dv-degree a and mu-degree b.
    Form bicomponent(int a, int b) const;

    bool equals(const Form& o) const;

    /// Substitute linear transforms into all legs at once: scalars via S
    /// (rows = old variables), dv_j -> sum_i Adv[j][i] dv_i, and
    /// mu_j -> sum_i Amu[j][i] mu_i.
    Form substitute(const std::vector<std::vector<Rat>>& S,
                    const std::vector<std::vector<Rat>>& Adv,
                    const std::vector<std::vector<Rat>>& Amu) const;

private:
    int n_;
    int K_;
    VarLayout layout_;
    int lambda_ = 0;
    std::map<WedgeKey, Scalar> comps_;
};

/// Sign (+1/-1/0) and resulting key of wedging two canonical monomials.
int wedge_sign(int n, const WedgeKey& a, const WedgeKey& b, WedgeKey& out);

// ---- builders -------------------------------------------------------------

Scalar scalar_one(int n);
Scalar scalar_var(int n, int idx);
/// kappa_V = sum_j v_j z_j, the scalar shadow of the tautological form.
Scalar kappa_V(int n);
/// The tautological 1-form sum_j z_j mu_j in the constant exterior leg;
/// its scalar shadow under theta is kappa_V and d(kappa_V) = sum z_j dv_j.
Form kappa(int n, int K);
/// vol = mu_1 ^ ... ^ mu_n (x) lambda.
Form vol_form(int n, int K);
/// psi^0..psi^n: the bidegree components of Delta(vol), where
/// Delta(mu_j) = dv_j + mu_j.
std::vector<Form> build_psi(int n, int K);
/// nu^a = theta(psi^a), a = 0..n-1.
std::vector<Form> build_nu(int n, int K);
/// Closed-form nu built directly from the shuffle/sign combinatorics;
/// used to cross-check theta.
std::vector<Form> build_nu_closed(int n, int K);
/// E^a = (-1)^a a! (tau mu_V - kappa_V)^{-a-1} nu^a expanded as an exact
/// geometric series up to z-degree K. With specialize_q the formal covector
/// components m_j are specialized to v_j, so mu_V becomes q = sum v_j^2.
Form build_E_series(int n, int a, int K, bool specialize_q);
/// eta = sum_j (-1)^j v_j mu_{/j} (x) lambda, the volume-form primitive
/// normalized so that -kappa ^ eta = kappa_V vol.
Form build_eta(int n, int K);

struct IdentityReport {
    std::string name;
    bool pass;
};

/// All six identity families, exact. negative_control deliberately perturbs
/// nu^0 and reports whether the first identity then fails as it should.
std::vector<IdentityReport> verify_green_identities(int n, int K);
bool negative_control(int n, int K);
/// gamma-equivariance shadow at n=2 for two fixed determinant-one matrices.
bool equivariance_check(int K);

}  // namespace forms
}  // namespace eiszeta

#endif
