#ifndef EISZETA_ZETA_HPP
#define EISZETA_ZETA_HPP

#include <complex>
#include <map>
#include <vector>

#include "eiszeta/ideal_lattice.hpp"

namespace eiszeta {

/// Bernoulli number B_k (B_1 = -1/2) and Bernoulli polynomial B_k(x),
/// exact and cached.
Rat bernoulli_number(int k);
Rat bernoulli_poly(int k, const Rat& x);

/// Finite signed measure on torsion points of the torus F (x) R / L,
/// represented by reduced field elements.
struct FieldDistribution {
    std::map<FieldElem, Rat> masses;
    Rat total() const {
        Rat s = 0;
        for (const auto& [p, c] : masses) s += c;
        return s;
    }
    bool degree_zero() const { return total() == 0; }
};

/// Kernel cosets of the inclusion L c^{-1} / L as torsion points of
/// F (x) R / L (c an integral ideal), 0 first; and the smoothing
/// distribution alpha_[c] = (N c) delta_0 - sum over the kernel.
std::vector<FieldElem> ideal_kernel_cosets(const IdealLattice& L, const IdealLattice& c);
FieldDistribution alpha_ideal(const IdealLattice& L, const IdealLattice& c);

/// Partial zeta value zeta(h, L, -k), exact. Degree 1 reduces to Hurwitz
/// values; degree 2 is a Shintani cone sum with products of Bernoulli
/// polynomials. h in L is allowed and means the coset of 0 (normalized
/// coordinate 1 on each edge).
Rat zeta_neg_exact(const IdealLattice& L, const FieldElem& h, int k);

/// Same value computed over an explicit cone decomposition of the
/// fundamental domain of the full totally positive unit group; used for
/// refinement-invariance checks.
Rat zeta_neg_exact_with_cones(const IdealLattice& L, const FieldElem& h, int k,
                              const std::vector<ShintaniCone>& cones);

/// Siegel zeta zeta(b, f, -k) = N(b)^k zeta(1, f b^{-1}, -k) for coprime
/// integral ideals with 1 not in f b^{-1}.
Rat siegel_zeta(const IdealLattice& b, const IdealLattice& f, int k);

/// sum_d alpha(d) zeta(t - d, L, -k); errors when some t - d vanishes.
Rat eis_alpha_moment(const FieldDistribution& alpha, const FieldElem& t,
                     const IdealLattice& L, int k);

struct DeligneRibetReport {
    Rat delta;
    std::vector<Int> denominator_primes;
    bool denominators_divide_nc;
};
/// Delta = (Nc)^{1+k} zeta(b,f,-k) - zeta(bc,f,-k) and the check that every
/// denominator prime divides Nc.
DeligneRibetReport deligne_ribet_delta(const IdealLattice& b, const IdealLattice& f,
                                       const IdealLattice& c, int k);

struct NumericValue {
    std::complex<double> value;
    double tail_bound;
    long terms;
};

/// Direct sum of the partial zeta over orbit representatives of norm at
/// most X; requires Re s > 1.
NumericValue zeta_numeric(const IdealLattice& L, const FieldElem& h,
                          std::complex<double> s, const Rat& X);

/// sum over L* \ {0} mod the stabilizer of e^{2 pi i <h,mu>} / N(mu)^{k+1},
/// k >= 1 (k = 0 is refused: only conditionally convergent).
NumericValue dual_sum_numeric(const IdealLattice& L, const FieldElem& h, int k,
                              const Rat& X);

struct LValueReport {
    Rat exact;
    std::complex<double> from_dual_sum;
    double discrepancy;
    double allowed;
    bool pass;
};
/// Checks zeta(h, L, -k) = (k!)^n / ((2 pi i)^{n(k+1)} vol L) * dual sum.
LValueReport check_l_value_identity(const IdealLattice& L, const FieldElem& h, int k,
                                    const Rat& X, double tol);

/// Parse "3", "1+w", "2-3w", "1/2w" into a field element (w = omega).
FieldElem parse_field_elem(const QuadField& F, const std::string& s);

}  // namespace eiszeta

#endif
