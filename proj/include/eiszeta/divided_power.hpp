#ifndef EISZETA_DIVIDED_POWER_HPP
#define EISZETA_DIVIDED_POWER_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "eiszeta/group_ring.hpp"

namespace eiszeta {

/// Homogeneous degree-k element of Gamma_k L_A (= TSym^k L_A) in the basis
/// l_1^{[k_1]}...l_n^{[k_n]} with k_1+...+k_n = k. The multiplication rule
/// l^{[p]} l^{[q]} = C(p+q,p) l^{[p+q]} keeps all structure constants
/// integral, which is what the p-adic modules rely on.
class DividedPower {
public:
    DividedPower(int rank, int degree, CoeffRing ring)
        : rank_(rank), degree_(degree), ring_(std::move(ring)) {
        if (rank < 1) throw std::invalid_argument("rank must be >= 1");
        if (degree < 0) throw std::invalid_argument("degree must be >= 0");
    }

    static DividedPower zero(int rank, int degree, const CoeffRing& ring) {
        return DividedPower(rank, degree, ring);
    }

    static DividedPower one(int rank, const CoeffRing& ring) {
        DividedPower e(rank, 0, ring);
        e.set(MultiIndex(rank, 0), ring.from_int(1));
        return e;
    }

    /// Basis element l_i^{[1]}.
    static DividedPower basis(int rank, int i, const CoeffRing& ring) {
        DividedPower e(rank, 1, ring);
        MultiIndex m(rank, 0);
        m[i] = 1;
        e.set(m, ring.from_int(1));
        return e;
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    const CoeffRing& ring() const { return ring_; }
    const std::map<MultiIndex, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rat coeff(const MultiIndex& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    void set(const MultiIndex& m, const Rat& c) {
        check_index(m);
        Rat v = ring_.from_rat(c);
        if (ring_.is_zero(v))
            coeffs_.erase(m);
        else
            coeffs_[m] = v;
    }

    void add_to(const MultiIndex& m, const Rat& c) { set(m, ring_.add(coeff(m), c)); }

    DividedPower operator+(const DividedPower& o) const {
        check_same(o, true);
        DividedPower r = *this;
        for (const auto& [m, c] : o.coeffs_) r.add_to(m, c);
        return r;
    }

    DividedPower operator-(const DividedPower& o) const {
        check_same(o, true);
        DividedPower r = *this;
        for (const auto& [m, c] : o.coeffs_) r.add_to(m, ring_.neg(c));
        return r;
    }

    DividedPower scaled(const Rat& c) const {
        DividedPower r(rank_, degree_, ring_);
        for (const auto& [m, a] : coeffs_) {
            Rat v = ring_.mul(a, ring_.from_rat(c));
            if (!ring_.is_zero(v)) r.coeffs_[m] = v;
        }
        return r;
    }

    /// Divided-power product: degree a x degree b -> degree a+b with
    /// coefficient prod_i C(p_i+q_i, p_i).
    DividedPower operator*(const DividedPower& o) const {
        check_same(o, false);
        DividedPower r(rank_, degree_ + o.degree_, ring_);
        for (const auto& [ma, ca] : coeffs_)
            for (const auto& [mb, cb] : o.coeffs_) {
                MultiIndex m(rank_);
                Int structure = 1;
                for (int i = 0; i < rank_; ++i) {
                    m[i] = ma[i] + mb[i];
                    structure *= binomial(static_cast<unsigned long>(m[i]),
                                          static_cast<unsigned long>(ma[i]));
                }
                r.add_to(m, ring_.mul(ring_.mul(ca, cb), ring_.from_int(structure)));
            }
        return r;
    }

    bool operator==(const DividedPower& o) const {
        return rank_ == o.rank_ && degree_ == o.degree_ && ring_ == o.ring_ &&
               coeffs_ == o.coeffs_;
    }

private:
    void check_index(const MultiIndex& m) const {
        if (static_cast<int>(m.size()) != rank_)
            throw std::invalid_argument("multi-index length mismatch");
        int d = 0;
        for (int e : m) {
            if (e < 0) throw std::invalid_argument("negative exponent");
            d += e;
        }
        if (d != degree_) throw std::invalid_argument("index degree != element degree");
    }

    void check_same(const DividedPower& o, bool same_degree) const {
        if (rank_ != o.rank_) throw std::invalid_argument("lattice rank mismatch");
        if (ring_ != o.ring_) throw std::invalid_argument("coefficient ring mismatch");
        if (same_degree && degree_ != o.degree_)
            throw std::invalid_argument("degree mismatch");
    }

    int rank_;
    int degree_;
    CoeffRing ring_;
    std::map<MultiIndex, Rat> coeffs_;
};

/// Graded tuple (degrees 0..K), the runtime stand-in for the completed
/// divided power algebra.
class DividedPowerTuple {
public:
    DividedPowerTuple(int rank, int bound, const CoeffRing& ring)
        : rank_(rank), bound_(bound), ring_(ring) {
        for (int k = 0; k <= bound; ++k) parts_.push_back(DividedPower::zero(rank, k, ring));
    }

    int rank() const { return rank_; }
    int bound() const { return bound_; }
    const CoeffRing& ring() const { return ring_; }
    DividedPower& operator[](int k) { return parts_.at(k); }
    const DividedPower& operator[](int k) const { return parts_.at(k); }

    DividedPowerTuple operator+(const DividedPowerTuple& o) const {
        DividedPowerTuple r(rank_, bound_, ring_);
        for (int k = 0; k <= bound_; ++k) r.parts_[k] = parts_[k] + o.parts_[k];
        return r;
    }

    /// Graded product truncated at the bound.
    DividedPowerTuple operator*(const DividedPowerTuple& o) const {
        DividedPowerTuple r(rank_, bound_, ring_);
        for (int a = 0; a <= bound_; ++a) {
            if (parts_[a].is_zero()) continue;
            for (int b = 0; a + b <= bound_; ++b) {
                if (o.parts_[b].is_zero()) continue;
                r.parts_[a + b] = r.parts_[a + b] + parts_[a] * o.parts_[b];
            }
        }
        return r;
    }

    bool operator==(const DividedPowerTuple& o) const { return parts_ == o.parts_; }

private:
    int rank_;
    int bound_;
    CoeffRing ring_;
    std::vector<DividedPower> parts_;
};

/// The algebra map exp*: A[L]/J^{K+1} -> Gamma L_A, determined by
/// delta_l -> sum_k l^{[k]}. Each t_i maps to sum_{k>=1} l_i^{[k]}, so
/// integral inputs produce integral divided-power coefficients.
inline DividedPowerTuple exp_star(const GroupRingElement& x) {
    int n = x.rank();
    int K = x.truncation();
    const CoeffRing& A = x.ring();

    // per-variable image of t_i
    std::vector<DividedPowerTuple> ti;
    for (int i = 0; i < n; ++i) {
        DividedPowerTuple s(n, K, A);
        for (int k = 1; k <= K; ++k) {
            MultiIndex m(n, 0);
            m[i] = k;
            s[k].set(m, A.from_int(1));
        }
        ti.push_back(s);
    }

    DividedPowerTuple out(n, K, A);
    for (const auto& [m, c] : x.coeffs()) {
        DividedPowerTuple term(n, K, A);
        term[0] = DividedPower::one(n, A);
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < m[i]; ++e) term = term * ti[i];
        for (int k = 0; k <= K; ++k) out[k] = out[k] + term[k].scaled(c);
    }
    return out;
}

/// k-th moment of a finite mass list: the coefficient of
/// l_1^{[k_1]}...l_n^{[k_n]} is sum_j c_j prod_i (l_j)_i^{k_i}.
inline DividedPower mom_k(const std::vector<std::pair<Rat, std::vector<Int>>>& masses, int k,
                          int rank, const CoeffRing& ring) {
    DividedPower out = DividedPower::zero(rank, k, ring);
    // iterate over all multi-indices of total degree k
    MultiIndex m(rank, 0);
    m[0] = k;
    auto next = [&]() -> bool {
        // colex successor over compositions of k into rank parts
        int i = 0;
        while (i < rank - 1 && m[i] == 0) ++i;
        if (i == rank - 1) return false;
        int v = m[i];
        m[i] = 0;
        m[i + 1] += 1;
        m[0] = v - 1;
        return true;
    };
    while (true) {
        Rat total = 0;
        for (const auto& [c, l] : masses) {
            if (static_cast<int>(l.size()) != rank)
                throw std::invalid_argument("mass vector length mismatch");
            Rat prod = c;
            for (int i = 0; i < rank; ++i)
                prod *= Rat(pow_int(l[i], static_cast<unsigned long>(m[i])));
            total += prod;
        }
        if (total != 0) out.set(m, ring.from_rat(total));
        if (!next()) break;
    }
    return out;
}

/// Image of the monomial x_1^{k_1}...x_n^{k_n} under Sym -> Gamma:
/// the rescaling by k_1!...k_n!. Always defined; the inverse fails over
/// Z/p^r when p <= max k_i, which reports() flags.
inline DividedPower sym_to_tsym(const MultiIndex& mono, const CoeffRing& ring,
                                bool* inverse_defined = nullptr) {
    int n = static_cast<int>(mono.size());
    DividedPower out(n, total_degree(mono), ring);
    Int f = 1;
    for (int e : mono) f *= factorial(static_cast<unsigned long>(e));
    out.set(mono, ring.from_int(f));
    if (inverse_defined) *inverse_defined = ring.is_unit(ring.from_int(f));
    return out;
}

/// Divided-power partial derivative in direction j: the coefficient of kappa
/// in contr_j(x) is the coefficient of kappa + e_j in x.
inline DividedPower contr(const DividedPower& x, int j) {
    if (x.degree() < 1) throw std::invalid_argument("contr on degree 0");
    DividedPower out(x.rank(), x.degree() - 1, x.ring());
    for (const auto& [m, c] : x.coeffs()) {
        if (m[j] == 0) continue;
        MultiIndex d = m;
        d[j] -= 1;
        out.set(d, c);
    }
    return out;
}

/// The tautological-element multiplication R -> L* (x) R, one component per
/// dual basis direction. Normalized per degree so that contracting the dual
/// index is a section: sum_j contr_j(mult_j(x)) = x. Requires deg + rank to
/// be invertible in the coefficient ring.
inline std::vector<DividedPower> mult(const DividedPower& x) {
    int n = x.rank();
    int k = x.degree();
    const CoeffRing& A = x.ring();
    Rat inv_scale;
    {
        auto d = A.div(A.from_int(1), A.from_int(k + n));
        if (!d) throw std::domain_error("mult: degree + rank not invertible in ring");
        inv_scale = *d;
    }
    std::vector<DividedPower> out;
    for (int j = 0; j < n; ++j) {
        DividedPower comp(n, k + 1, A);
        for (const auto& [m, c] : x.coeffs()) {
            MultiIndex u = m;
            u[j] += 1;
            comp.add_to(u, A.mul(A.mul(c, A.from_int(m[j] + 1)), inv_scale));
        }
        out.push_back(comp);
    }
    return out;
}

}  // namespace eiszeta

#endif
