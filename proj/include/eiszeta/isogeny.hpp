#ifndef EISZETA_ISOGENY_HPP
#define EISZETA_ISOGENY_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "eiszeta/divided_power.hpp"
#include "eiszeta/smith.hpp"

namespace eiszeta {

/// Torsion point of the torus V/L: rational coordinates w.r.t. the lattice
/// basis, always reduced to [0,1). Equality is exact rational equality.
struct TorsionPoint {
    std::vector<Rat> coords;

    TorsionPoint() = default;
    explicit TorsionPoint(std::vector<Rat> c) : coords(std::move(c)) { reduce(); }

    static TorsionPoint zero(int n) { return TorsionPoint(std::vector<Rat>(n, Rat(0))); }

    void reduce() {
        for (auto& c : coords) c = frac_mod1(c);
    }

    int rank() const { return static_cast<int>(coords.size()); }

    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }

    /// lcm of coordinate denominators.
    Int order() const {
        Int o = 1;
        for (const auto& c : coords) {
            Int l;
            mpz_lcm(l.get_mpz_t(), o.get_mpz_t(), c.get_den().get_mpz_t());
            o = l;
        }
        return o;
    }

    TorsionPoint operator+(const TorsionPoint& o) const {
        std::vector<Rat> c(coords);
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords[i];
        return TorsionPoint(std::move(c));
    }

    TorsionPoint operator-(const TorsionPoint& o) const {
        std::vector<Rat> c(coords);
        for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords[i];
        return TorsionPoint(std::move(c));
    }

    TorsionPoint operator-() const {
        std::vector<Rat> c(coords);
        for (auto& x : c) x = -x;
        return TorsionPoint(std::move(c));
    }

    bool operator==(const TorsionPoint& o) const { return coords == o.coords; }
    bool operator<(const TorsionPoint& o) const { return coords < o.coords; }
};

/// Finite A-valued distribution on torsion points. Degree zero means the
/// coefficients sum to 0.
struct TorsionDistribution {
    int rank = 0;
    std::map<TorsionPoint, Rat> masses;

    TorsionDistribution() = default;
    explicit TorsionDistribution(int n) : rank(n) {}

    void add(const TorsionPoint& p, const Rat& c) {
        auto it = masses.find(p);
        Rat v = (it == masses.end() ? Rat(0) : it->second) + c;
        if (v == 0)
            masses.erase(p);
        else
            masses[p] = v;
    }

    Rat total() const {
        Rat s = 0;
        for (const auto& [p, c] : masses) s += c;
        return s;
    }

    bool degree_zero() const { return total() == 0; }
};

/// Integer-matrix isogeny: columns of M are the images of the source basis
/// expressed in the target basis. det M != 0.
class Isogeny {
public:
    Isogeny(int rank, IntMat m) : n_(rank), M_(std::move(m)) {
        if (static_cast<int>(M_.size()) != n_)
            throw std::invalid_argument("matrix size mismatch");
        for (const auto& row : M_)
            if (static_cast<int>(row.size()) != n_)
                throw std::invalid_argument("matrix not square");
        det_ = mat_det(M_);
        if (det_ == 0) throw std::invalid_argument("isogeny matrix is singular");
    }

    static Isogeny multiplication_by(const Int& N, int rank) {
        IntMat m = identity_mat(rank);
        for (int i = 0; i < rank; ++i) m[i][i] = N;
        return Isogeny(rank, m);
    }

    int rank() const { return n_; }
    const IntMat& matrix() const { return M_; }
    const Int& det() const { return det_; }
    Int degree() const { return abs(det_); }

    /// Image of a torsion point on the source torus.
    TorsionPoint apply(const TorsionPoint& p) const {
        std::vector<Rat> out(n_, Rat(0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) out[i] += Rat(M_[i][j]) * p.coords[j];
        return TorsionPoint(std::move(out));
    }

    /// Complete irredundant list of kernel coset representatives, i.e. of
    /// L'/phi(L) realized as the kernel of the induced torus map (points x
    /// with Mx integral). Built from the Smith normal form M = U D V so the
    /// list is deterministic; 0 is always first.
    std::vector<TorsionPoint> kernel_cosets() const {
        SmithResult s = smith_normal_form(M_);
        // x = V^{-1} (c_1/d_1, ..., c_n/d_n); enumerate c in the diagonal box
        IntMat Vinv = invert_unimodular(s.V);
        std::vector<Int> d(n_);
        for (int i = 0; i < n_; ++i) d[i] = s.D[i][i];

        std::vector<TorsionPoint> out;
        std::vector<Int> c(n_, 0);
        while (true) {
            std::vector<Rat> x(n_, Rat(0));
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) x[i] += make_rat(Vinv[i][j] * c[j], d[j]);
            out.emplace_back(std::move(x));
            int i = n_ - 1;
            while (i >= 0) {
                c[i] += 1;
                if (c[i] < d[i]) break;
                c[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        return out;
    }

    /// The smoothing distribution alpha_phi = (deg phi) delta_0 - sum_d delta_d
    /// on the kernel cosets. Always degree zero.
    TorsionDistribution alpha() const {
        TorsionDistribution a(n_);
        Int deg = degree();
        a.add(TorsionPoint::zero(n_), Rat(deg - 1));
        bool first = true;
        for (const auto& p : kernel_cosets()) {
            if (first) {  // 0 handled above
                first = false;
                continue;
            }
            a.add(p, Rat(-1));
        }
        return a;
    }

private:
    static IntMat invert_unimodular(const IntMat& m) {
        // adjugate / det with det = +-1
        int n = static_cast<int>(m.size());
        Int det = mat_det(m);
        if (det != 1 && det != -1) throw std::logic_error("matrix not unimodular");
        IntMat inv(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                IntMat minor;
                for (int r = 0; r < n; ++r) {
                    if (r == j) continue;
                    std::vector<Int> row;
                    for (int cidx = 0; cidx < n; ++cidx)
                        if (cidx != i) row.push_back(m[r][cidx]);
                    minor.push_back(row);
                }
                Int cof = n == 1 ? Int(1) : mat_det(minor);
                if ((i + j) % 2 == 1) cof = -cof;
                inv[i][j] = det == 1 ? cof : -cof;
            }
        return inv;
    }

    int n_;
    IntMat M_;
    Int det_;
};

/// phi_R: the induced filtered ring map R(L) -> R(L'), determined by
/// t_i -> delta(M e_i) - 1.
inline GroupRingElement apply_R(const Isogeny& phi, const GroupRingElement& x) {
    if (phi.rank() != x.rank()) throw std::invalid_argument("rank mismatch");
    int n = x.rank();
    int K = x.truncation();
    const CoeffRing& A = x.ring();

    std::vector<GroupRingElement> u;  // images of t_i
    for (int i = 0; i < n; ++i) {
        std::vector<Int> col(n);
        for (int j = 0; j < n; ++j) col[j] = phi.matrix()[j][i];
        u.push_back(GroupRingElement::delta(col, K, A) - GroupRingElement::one(n, K, A));
    }

    GroupRingElement out = GroupRingElement::zero(n, K, A);
    for (const auto& [m, c] : x.coeffs()) {
        GroupRingElement term = GroupRingElement::one(n, K, A);
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < m[i]; ++e) term = term * u[i];
        out = out + term.scaled(c);
    }
    return out;
}

namespace detail {

/// Substitute t_j -> sum_i S[i][j] t_i (rational matrix) into a homogeneous
/// component; used to invert gr(phi_R) = Sym(M) degree by degree.
inline GroupRingElement substitute_linear(const GroupRingElement& x,
                                          const std::vector<std::vector<Rat>>& S) {
    int n = x.rank();
    int K = x.truncation();
    const CoeffRing& A = x.ring();
    std::vector<GroupRingElement> img;
    for (int j = 0; j < n; ++j) {
        GroupRingElement e = GroupRingElement::zero(n, K, A);
        for (int i = 0; i < n; ++i) {
            if (S[i][j] == 0) continue;
            MultiIndex m(n, 0);
            m[i] = 1;
            e.add_to(m, A.from_rat(S[i][j]));
        }
        img.push_back(e);
    }
    GroupRingElement out = GroupRingElement::zero(n, K, A);
    for (const auto& [m, c] : x.coeffs()) {
        GroupRingElement term = GroupRingElement::one(n, K, A);
        for (int j = 0; j < n; ++j)
            for (int e = 0; e < m[j]; ++e) term = term * img[j];
        out = out + term.scaled(c);
    }
    return out;
}

}  // namespace detail

/// Inverse of phi_R at truncation K by graded Newton lifting: solve degree
/// by degree using the invertibility of gr(phi_R). Requires |det M| to be a
/// unit in the coefficient ring.
inline GroupRingElement invert_R(const Isogeny& phi, const GroupRingElement& y) {
    if (phi.rank() != y.rank()) throw std::invalid_argument("rank mismatch");
    int n = y.rank();
    int K = y.truncation();
    const CoeffRing& A = y.ring();
    if (!A.is_unit(A.from_int(phi.degree())))
        throw std::domain_error("invert_R: deg(phi) not invertible in coefficient ring");

    // rational inverse of M, canonicalized into A (over Z/p^r the 1/det
    // becomes a modular inverse; over Z the unit check forces det = +-1)
    const IntMat& M = phi.matrix();
    std::vector<std::vector<Rat>> Minv(n, std::vector<Rat>(n));
    {
        Int det = phi.det();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                IntMat minor;
                for (int r = 0; r < n; ++r) {
                    if (r == j) continue;
                    std::vector<Int> row;
                    for (int c = 0; c < n; ++c)
                        if (c != i) row.push_back(M[r][c]);
                    minor.push_back(row);
                }
                Int cof = n == 1 ? Int(1) : mat_det(minor);
                if ((i + j) % 2 == 1) cof = -cof;
                Minv[i][j] = A.from_rat(make_rat(cof, det));
            }
    }

    GroupRingElement x = GroupRingElement::zero(n, K, A);
    for (int k = 0; k <= K; ++k) {
        GroupRingElement r = y - apply_R(phi, x);
        GroupRingElement rk = r.gr_component(k);
        if (rk.is_zero()) continue;
        // gr_k(phi_R) = Sym^k M; invert by substituting M^{-1}
        x = x + detail::substitute_linear(rk, Minv);
    }
    return x;
}

/// phi_*(alpha)(d) = sum over the fiber of d of alpha; preserves degree zero.
inline TorsionDistribution pushforward(const Isogeny& phi, const TorsionDistribution& a) {
    TorsionDistribution out(phi.rank());
    for (const auto& [p, c] : a.masses) out.add(phi.apply(p), c);
    return out;
}

/// f |-> f o phi, evaluated on the given source domain.
inline std::map<TorsionPoint, Rat> pullback_function(
    const Isogeny& phi, const std::map<TorsionPoint, Rat>& f,
    const std::vector<TorsionPoint>& domain) {
    std::map<TorsionPoint, Rat> out;
    for (const auto& x : domain) {
        auto it = f.find(phi.apply(x));
        if (it != f.end() && it->second != 0) out[x] = it->second;
    }
    return out;
}

/// Full preimage of a target torsion point: one solution plus the kernel.
inline std::vector<TorsionPoint> preimages(const Isogeny& phi, const TorsionPoint& y) {
    int n = phi.rank();
    // solve M x = y over Q via the adjugate
    const IntMat& M = phi.matrix();
    std::vector<Rat> x0(n, Rat(0));
    Int det = phi.det();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Int> row;
                for (int c = 0; c < n; ++c)
                    if (c != i) row.push_back(M[r][c]);
                minor.push_back(row);
            }
            Int cof = n == 1 ? Int(1) : mat_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            x0[i] += make_rat(cof, det) * y.coords[j];
        }
    TorsionPoint base{std::vector<Rat>(x0)};
    std::vector<TorsionPoint> out;
    for (const auto& k : phi.kernel_cosets()) out.push_back(base + k);
    return out;
}

}  // namespace eiszeta

#endif
