#ifndef EISZETA_EPSTEIN_HPP
#define EISZETA_EPSTEIN_HPP

#include <complex>
#include <map>
#include <vector>

#include "eiszeta/rational.hpp"

namespace eiszeta {

/// Lattice sum sum'_{m in Z^n} e^{2 pi i <v,m>} P(m) Q(m)^{-s-g/2} with
/// Q(m) = B^{-1}(m,m), B positive definite with exact rational entries and
/// P homogeneous of degree g.
struct EpsteinSpec {
    std::vector<std::vector<Rat>> gram;   // B
    std::vector<Rat> shift;               // v
    std::map<std::vector<int>, Rat> poly; // P, multi-index -> coefficient
    std::complex<double> s;
};

/// Degree of P; throws unless P is homogeneous (the zero polynomial has
/// degree 0).
int epstein_poly_degree(const EpsteinSpec& spec);

/// Direct absolutely-convergent sum over the box |m_i| <= box; only valid
/// for Re(s) large (caller's responsibility), used as the oracle.
std::complex<double> epstein_direct_sum(const EpsteinSpec& spec, long box);

/// Analytic continuation by the symmetric incomplete-gamma split of the
/// Mellin integral at t0. Both halves are rapidly convergent; the result is
/// independent of t0.
std::complex<double> epstein_continued(const EpsteinSpec& spec, double t0, long box);

/// Upper incomplete gamma Gamma(a, x) for complex a and real x > 0, and the
/// complex log-gamma it relies on.
std::complex<double> upper_incomplete_gamma(std::complex<double> a, double x);
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace eiszeta

#endif
