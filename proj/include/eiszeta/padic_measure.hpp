#ifndef EISZETA_PADIC_MEASURE_HPP
#define EISZETA_PADIC_MEASURE_HPP

#include <map>
#include <vector>

#include "eiszeta/zeta.hpp"

namespace eiszeta {

/// Truncated p-adic Eisenstein measure: masses on cosets of L/p^rL with
/// coefficients mod p^{r'}, built from smoothed partial zeta values at the
/// level-p^r sublattice.
struct FiniteLevelMeasure {
    QuadField F;
    IdealLattice L;       // f b^{-1}
    IdealLattice c_ideal;
    Int p;
    int r = 1;
    int rprime = 1;
    Int modulus;          // p^{r'}
    std::map<std::vector<Int>, Int> masses;  // coset coords in [0,p^r)^n
};

/// c_k = (-1)^{n-1} ((Nc) zeta(1, f b^{-1}, -k) - zeta(1, f b^{-1} c^{-1}, -k)).
/// Asserts that every denominator prime divides Nc.
Rat smoothed_moment(const IdealLattice& b, const IdealLattice& f, const IdealLattice& c,
                    int k);

/// Coset masses at level p^r: mass(t) = (-1)^{n-1} sum_d alpha_c(d) w_d
/// zeta(x_{t,d}, p^r L, 0) mod p^{r'}, where x_{t,d} = 1 - d + lift matches
/// the coset t p-adically and w_d are the exact stabilizer index ratios
/// relative to the base point 1 mod L. Requires p coprime to Nb, Nf, Nc.
FiniteLevelMeasure build_finite_level_measure(const IdealLattice& b, const IdealLattice& f,
                                              const IdealLattice& c, const Int& p, int r,
                                              int rprime);

/// sum_t w(t)^k mass(t) mod p^{r'}, with w(t) the field norm of the
/// canonical coset lift (p-integral by the coprimality preconditions).
Int measure_moment(const FiniteLevelMeasure& m, int k);

/// Push masses from level r to level r-1 by summing over p-fibers; the
/// result must agree with the direct level-(r-1) construction.
FiniteLevelMeasure level_pushforward(const FiniteLevelMeasure& m);

struct InterpolationReport {
    Rat c_k;
    Int moment;
    long achieved_valuation;  // capped at r'
    long expected;
    bool pass;
};
InterpolationReport interpolation_check(const IdealLattice& b, const IdealLattice& f,
                                        const IdealLattice& c, const Int& p, int r, int k,
                                        long expected_valuation);

struct KummerReport {
    Int moment_k, moment_kprime;
    long congruence_valuation;  // v_p(difference), capped at r'
    bool pass;                  // >= r
};
/// Moments restricted to cosets whose canonical lift has all coordinates
/// prime to p; congruent mod p^r whenever k = k' mod (p-1) p^{r-1}.
KummerReport restricted_kummer_check(const IdealLattice& b, const IdealLattice& f,
                                     const IdealLattice& c, const Int& p, int r, int k,
                                     int kprime, int rprime);
/// Same moments without the unit-coset restriction (the negative control).
KummerReport unrestricted_kummer_check(const IdealLattice& b, const IdealLattice& f,
                                       const IdealLattice& c, const Int& p, int r, int k,
                                       int kprime, int rprime);

}  // namespace eiszeta

#endif
