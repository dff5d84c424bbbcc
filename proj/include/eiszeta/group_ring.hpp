#ifndef EISZETA_GROUP_RING_HPP
#define EISZETA_GROUP_RING_HPP

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "eiszeta/coeff.hpp"

namespace eiszeta {

/// Exponent multi-index (a_1..a_n) of the monomial t_1^{a_1}...t_n^{a_n}.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

/// A free abelian group of finite rank with an abstract basis l_1..l_n.
struct Lattice {
    int rank;
    explicit Lattice(int n) : rank(n) {
        if (n < 1) throw std::invalid_argument("lattice rank must be >= 1");
    }
    bool operator==(const Lattice& o) const { return rank == o.rank; }
};

/// Element of the truncated group ring A[L]/J^{K+1} in the monomial basis
/// t_i = delta_{l_i} - 1. Stored sparse; zero coefficients are never kept,
/// and every stored index has total degree <= K.
class GroupRingElement {
public:
    GroupRingElement(int rank, int trunc, CoeffRing ring)
        : rank_(rank), trunc_(trunc), ring_(std::move(ring)) {
        if (rank < 1) throw std::invalid_argument("rank must be >= 1");
        if (trunc < 0) throw std::invalid_argument("truncation must be >= 0");
    }

    static GroupRingElement zero(int rank, int trunc, const CoeffRing& ring) {
        return GroupRingElement(rank, trunc, ring);
    }

    static GroupRingElement one(int rank, int trunc, const CoeffRing& ring) {
        GroupRingElement e(rank, trunc, ring);
        e.set(MultiIndex(rank, 0), ring.from_int(1));
        return e;
    }

    /// The class of delta_l for a lattice vector l = sum a_i l_i. Negative
    /// coordinates use a truncated geometric series, exact since each t_i
    /// is nilpotent mod J^{K+1}.
    static GroupRingElement delta(const std::vector<Int>& l, int trunc, const CoeffRing& ring) {
        int n = static_cast<int>(l.size());
        GroupRingElement acc = one(n, trunc, ring);
        for (int i = 0; i < n; ++i) {
            if (l[i] == 0) continue;
            GroupRingElement f(n, trunc, ring);
            for (int j = 0; j <= trunc; ++j) {
                Int c = binomial(l[i], static_cast<unsigned long>(j));
                if (c == 0) continue;
                MultiIndex m(n, 0);
                m[i] = j;
                f.set(m, ring.from_int(c));
            }
            acc = acc * f;
        }
        return acc;
    }

    int rank() const { return rank_; }
    int truncation() const { return trunc_; }
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

    GroupRingElement operator+(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement r = *this;
        for (const auto& [m, c] : o.coeffs_) r.add_to(m, c);
        return r;
    }

    GroupRingElement operator-(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement r = *this;
        for (const auto& [m, c] : o.coeffs_) r.add_to(m, ring_.neg(c));
        return r;
    }

    GroupRingElement operator-() const {
        GroupRingElement r(rank_, trunc_, ring_);
        for (const auto& [m, c] : coeffs_) r.coeffs_[m] = ring_.neg(c);
        return r;
    }

    GroupRingElement operator*(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement r(rank_, trunc_, ring_);
        for (const auto& [ma, ca] : coeffs_) {
            int da = total_degree(ma);
            for (const auto& [mb, cb] : o.coeffs_) {
                if (da + total_degree(mb) > trunc_) continue;
                MultiIndex m(rank_);
                for (int i = 0; i < rank_; ++i) m[i] = ma[i] + mb[i];
                r.add_to(m, ring_.mul(ca, cb));
            }
        }
        return r;
    }

    GroupRingElement scaled(const Rat& c) const {
        GroupRingElement r(rank_, trunc_, ring_);
        for (const auto& [m, a] : coeffs_) {
            Rat v = ring_.mul(a, ring_.from_rat(c));
            if (!ring_.is_zero(v)) r.coeffs_[m] = v;
        }
        return r;
    }

    bool operator==(const GroupRingElement& o) const {
        return rank_ == o.rank_ && trunc_ == o.trunc_ && ring_ == o.ring_ &&
               coeffs_ == o.coeffs_;
    }

    /// Ring homomorphism to A: the degree-0 coefficient.
    Rat augment() const { return coeff(MultiIndex(rank_, 0)); }

    /// Minimal total degree of a stored monomial; K+1 for the zero element.
    int filtration_degree() const {
        int best = trunc_ + 1;
        for (const auto& [m, c] : coeffs_) best = std::min(best, total_degree(m));
        return best;
    }

    /// Degree-k homogeneous part, identifying I^k/I^{k+1} with Sym^k L_A
    /// via t_i -> l_i.
    GroupRingElement gr_component(int k) const {
        if (k > trunc_) throw std::invalid_argument("gr_component: k exceeds truncation");
        GroupRingElement r(rank_, trunc_, ring_);
        for (const auto& [m, c] : coeffs_)
            if (total_degree(m) == k) r.coeffs_[m] = c;
        return r;
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
        if (d > trunc_) throw std::invalid_argument("index degree exceeds truncation");
    }

    void check_compatible(const GroupRingElement& o) const {
        if (rank_ != o.rank_) throw std::invalid_argument("lattice rank mismatch");
        if (trunc_ != o.trunc_) throw std::invalid_argument("truncation mismatch");
        if (ring_ != o.ring_) throw std::invalid_argument("coefficient ring mismatch");
    }

    int rank_;
    int trunc_;
    CoeffRing ring_;
    std::map<MultiIndex, Rat> coeffs_;
};

}  // namespace eiszeta

#endif
