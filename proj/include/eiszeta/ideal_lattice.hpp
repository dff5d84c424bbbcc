#ifndef EISZETA_IDEAL_LATTICE_HPP
#define EISZETA_IDEAL_LATTICE_HPP

#include <optional>
#include <vector>

#include "eiszeta/quadratic_field.hpp"

namespace eiszeta {

/// Fractional ideal of a totally real field, stored as an embedded rank-n
/// Z-lattice with a Hermite-normal-form basis, exact norm, orientation, and
/// the trace-dual basis realizing Hom(L, Z) inside the field (so pairings
/// <h, mu> = Tr(h mu) are exact rationals).
class IdealLattice {
public:
    static IdealLattice ring_of_integers(const QuadField& F);
    /// O_F-module generated by the given nonzero elements.
    static IdealLattice from_generators(const QuadField& F,
                                        const std::vector<FieldElem>& gens);
    /// Z-module with the given basis; errors unless stable under O_F.
    static IdealLattice from_basis(const QuadField& F, const std::vector<FieldElem>& basis);
    /// Principal ideal xO_F.
    static IdealLattice principal(const QuadField& F, const FieldElem& x);

    const QuadField& field() const { return F_; }
    int rank() const { return F_.degree(); }
    const std::vector<FieldElem>& basis() const { return basis_; }
    const std::vector<FieldElem>& dual_basis() const { return dual_; }
    const Rat& norm() const { return norm_; }
    int orientation() const { return orientation_; }

    bool operator==(const IdealLattice& o) const { return basis_ == o.basis_; }

    /// Exact coordinates of x in the stored basis (rational in general).
    std::vector<Rat> coords(const FieldElem& x) const;
    FieldElem from_coords(const std::vector<Rat>& c) const;
    bool contains(const FieldElem& x) const;
    /// Canonical representative of x mod L with coordinates in [0,1).
    FieldElem reduce_mod(const FieldElem& x) const;

    IdealLattice scaled(const FieldElem& x) const;
    IdealLattice product(const IdealLattice& o) const;
    IdealLattice inverse() const;
    /// Integral ideal test (contained in O_F) and coprimality a + b = O_F.
    bool is_integral() const;
    bool is_coprime(const IdealLattice& o) const;

    double covolume() const;

    /// <x, mu> = Tr(x mu) for mu in the dual lattice.
    Rat pairing(const FieldElem& x, const FieldElem& mu) const { return F_.trace(F_.mul(x, mu)); }

private:
    QuadField F_;
    std::vector<FieldElem> basis_;
    std::vector<FieldElem> dual_;
    Rat norm_;
    int orientation_ = 1;

    static IdealLattice from_zspan(const QuadField& F, const std::vector<FieldElem>& span);
    void finalize();
};

/// Least m >= 1 with u+^m h = h mod L together with the generator u+^m; the
/// cyclic part of the stabilizer of h in the totally positive units.
struct Stabilizer {
    FieldElem generator;
    long index;
};
Stabilizer stabilizer(const QuadField& F, const FieldElem& h, const IdealLattice& L);

/// Simplicial cone spanned by two totally positive generators; the ray of A
/// is included, the ray of B excluded. Degree 1 degenerates to a single ray.
struct ShintaniCone {
    FieldElem A, B;
};

/// Fundamental domain for <u> acting on the totally positive cone: for
/// degree 2 the single half-open cone between 1 and u, refinable.
std::vector<ShintaniCone> shintani_cones(const QuadField& F, const FieldElem& u);
std::vector<ShintaniCone> refine_cone(const QuadField& F, const ShintaniCone& c);
/// Membership with the boundary convention above.
bool cone_contains(const QuadField& F, const ShintaniCone& c, const FieldElem& x);

/// One representative per <u>-orbit of { mu in shift + L : 0 < |N mu| <= X },
/// selected by 1 <= |tau_1(mu)| / |N mu|^{1/2} < tau_1(u) per sign quadrant
/// (all comparisons exact). With totally_positive_only, restrict to the
/// totally positive quadrant.
std::vector<FieldElem> orbit_representatives(const IdealLattice& L, const FieldElem& shift,
                                             const FieldElem& u, const Rat& X,
                                             bool totally_positive_only);

}  // namespace eiszeta

#endif
