#include "eiszeta/padic_measure.hpp"

#include <algorithm>

namespace eiszeta {

namespace {

void check_coprime_to_p(const IdealLattice& a, const Int& p, const char* what) {
    Rat n = a.norm();
    if (mpz_divisible_p(n.get_num().get_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(n.get_den().get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument(std::string(what) + " must be coprime to p");
}

/// p-integral rational vector reduced componentwise mod m.
std::vector<Int> reduce_coords(const std::vector<Rat>& c, const Int& m) {
    std::vector<Int> out;
    for (const auto& q : c) out.push_back(rat_mod(q, m));
    return out;
}

Int rat_to_residue(const Rat& q, const Int& m) { return rat_mod(q, m); }

}  // namespace

Rat smoothed_moment(const IdealLattice& b, const IdealLattice& f, const IdealLattice& c,
                    int k) {
    const QuadField& F = b.field();
    int n = F.degree();
    IdealLattice L = f.product(b.inverse());
    if (!c.is_integral() || !c.is_coprime(f) || !c.is_coprime(b))
        throw std::invalid_argument("smoothing ideal must be integral and coprime to b, f");
    IdealLattice Lc = L.product(c.inverse());
    Rat v = c.norm() * zeta_neg_exact(L, FieldElem(Rat(1)), k) -
            zeta_neg_exact(Lc, FieldElem(Rat(1)), k);
    if (n % 2 == 0) v = -v;  // the (-1)^{n-1} sign
    // Cor. Deligne-Ribet in action: denominators only at primes of Nc
    Int ncz = c.norm().get_num();
    for (const auto& q : prime_factors(v.get_den()))
        if (!mpz_divisible_p(ncz.get_mpz_t(), q.get_mpz_t()))
            throw std::logic_error("smoothed moment integrality failed");
    return v;
}

FiniteLevelMeasure build_finite_level_measure(const IdealLattice& b, const IdealLattice& f,
                                              const IdealLattice& c, const Int& p, int r,
                                              int rprime) {
    if (r < 0 || rprime < 1) throw std::invalid_argument("need r >= 0, r' >= 1");
    if (!is_probable_prime(p)) throw std::invalid_argument("p must be prime");
    check_coprime_to_p(b, p, "Nb");
    check_coprime_to_p(f, p, "Nf");
    check_coprime_to_p(c, p, "Nc");

    FiniteLevelMeasure m;
    m.F = b.field();
    m.L = f.product(b.inverse());
    m.c_ideal = c;
    m.p = p;
    m.r = r;
    m.rprime = rprime;
    m.modulus = pow_int(p, static_cast<unsigned long>(rprime));

    const QuadField& F = m.F;
    int n = F.degree();
    Int pr = pow_int(p, static_cast<unsigned long>(r));

    IdealLattice sub = m.L.scaled(FieldElem(Rat(pr)));
    auto alpha = alpha_ideal(m.L, c);

    // the common unit normalization comes from the base point 1 mod L; the
    // construction requires it to agree with the stabilizer at L c^{-1},
    // which the k = 0 exactness invariant encodes
    long m1 = stabilizer(F, m.L.reduce_mod(FieldElem(Rat(1))), m.L).index;
    {
        IdealLattice Lc = m.L.product(c.inverse());
        long m1c = stabilizer(F, Lc.reduce_mod(FieldElem(Rat(1))), Lc).index;
        if (m1 != m1c)
            throw std::domain_error(
                "base stabilizer differs between L and L c^{-1}; the coset masses "
                "would not total the smoothed moment");
    }

    std::vector<Rat> one_coords = m.L.coords(FieldElem(Rat(1)));
    std::vector<Int> one_p = reduce_coords(one_coords, pr);

    // enumerate cosets t in [0, p^r)^n
    std::vector<Int> t(n, 0);
    while (true) {
        Rat mass(0);
        for (const auto& [d, cd] : alpha.masses) {
            std::vector<Int> dp = reduce_coords(m.L.coords(d), pr);
            std::vector<Rat> l(n);
            for (int i = 0; i < n; ++i) {
                Int li = (t[i] - one_p[i] + dp[i]) % pr;
                if (li < 0) li += pr;
                l[i] = Rat(li);
            }
            FieldElem x = F.add(F.sub(FieldElem(Rat(1)), d), m.L.from_coords(l));
            long mx = stabilizer(F, sub.reduce_mod(x), sub).index;
            mass += cd * make_rat(m1, mx) * zeta_neg_exact(sub, x, 0);
        }
        if (n % 2 == 0) mass = -mass;
        // Cor 3.5 in action: the smoothed mass is p-integral
        if (mpz_divisible_p(mass.get_den().get_mpz_t(), p.get_mpz_t()))
            throw std::logic_error("coset mass not p-integral");
        m.masses[t] = rat_to_residue(mass, m.modulus);

        int i = n - 1;
        while (i >= 0) {
            t[i] += 1;
            if (t[i] < pr) break;
            t[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return m;
}

Int measure_moment(const FiniteLevelMeasure& m, int k) {
    const QuadField& F = m.F;
    Int total = 0;
    for (const auto& [t, mass] : m.masses) {
        std::vector<Rat> coords;
        for (const auto& c : t) coords.push_back(Rat(c));
        Rat w = F.norm(m.L.from_coords(coords));
        Int wk = 1;
        Int wres = rat_to_residue(w, m.modulus);
        for (int j = 0; j < k; ++j) wk = wk * wres % m.modulus;
        total = (total + wk * mass) % m.modulus;
    }
    if (total < 0) total += m.modulus;
    return total;
}

FiniteLevelMeasure level_pushforward(const FiniteLevelMeasure& m) {
    if (m.r < 1) throw std::invalid_argument("cannot push below level 0");
    FiniteLevelMeasure out = m;
    out.r = m.r - 1;
    out.masses.clear();
    Int pr1 = pow_int(m.p, static_cast<unsigned long>(m.r - 1));
    for (const auto& [t, mass] : m.masses) {
        std::vector<Int> red(t.size());
        for (size_t i = 0; i < t.size(); ++i) red[i] = t[i] % pr1;
        Int& slot = out.masses[red];
        slot = (slot + mass) % m.modulus;
    }
    return out;
}

InterpolationReport interpolation_check(const IdealLattice& b, const IdealLattice& f,
                                        const IdealLattice& c, const Int& p, int r, int k,
                                        long expected_valuation) {
    int rprime = r + 2;  // enough headroom to see the achieved valuation
    auto m = build_finite_level_measure(b, f, c, p, r, rprime);
    InterpolationReport rep;
    rep.c_k = smoothed_moment(b, f, c, k);
    rep.moment = measure_moment(m, k);
    Int diff = (rep.moment - rat_to_residue(rep.c_k, m.modulus)) % m.modulus;
    if (diff < 0) diff += m.modulus;
    long v = 0;
    if (diff == 0) {
        v = rprime;
    } else {
        while (mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) {
            diff /= p;
            ++v;
        }
    }
    rep.achieved_valuation = v;
    rep.expected = expected_valuation;
    rep.pass = v >= expected_valuation;
    return rep;
}

namespace {

KummerReport kummer_core(const IdealLattice& b, const IdealLattice& f,
                         const IdealLattice& c, const Int& p, int r, int k, int kprime,
                         int rprime, bool restricted) {
    auto m = build_finite_level_measure(b, f, c, p, r, rprime);
    const QuadField& F = m.F;
    auto restricted_moment = [&](int kk) {
        Int total = 0;
        for (const auto& [t, mass] : m.masses) {
            if (restricted) {
                bool unit = true;
                for (const auto& ci : t)
                    if (mpz_divisible_p(ci.get_mpz_t(), p.get_mpz_t())) unit = false;
                if (!unit) continue;
            }
            std::vector<Rat> coords;
            for (const auto& ci : t) coords.push_back(Rat(ci));
            Rat w = F.norm(m.L.from_coords(coords));
            Int wres = rat_to_residue(w, m.modulus);
            Int wk = 1;
            for (int j = 0; j < kk; ++j) wk = wk * wres % m.modulus;
            total = (total + wk * mass) % m.modulus;
        }
        if (total < 0) total += m.modulus;
        return total;
    };
    KummerReport rep;
    rep.moment_k = restricted_moment(k);
    rep.moment_kprime = restricted_moment(kprime);
    Int diff = (rep.moment_k - rep.moment_kprime) % m.modulus;
    if (diff < 0) diff += m.modulus;
    long v = 0;
    if (diff == 0) {
        v = rprime;
    } else {
        while (mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) {
            diff /= p;
            ++v;
        }
    }
    rep.congruence_valuation = v;
    rep.pass = v >= r;
    return rep;
}

}  // namespace

KummerReport restricted_kummer_check(const IdealLattice& b, const IdealLattice& f,
                                     const IdealLattice& c, const Int& p, int r, int k,
                                     int kprime, int rprime) {
    if (k < 1 || kprime < 1) throw std::invalid_argument("weights must be >= 1");
    return kummer_core(b, f, c, p, r, k, kprime, rprime, true);
}

KummerReport unrestricted_kummer_check(const IdealLattice& b, const IdealLattice& f,
                                       const IdealLattice& c, const Int& p, int r, int k,
                                       int kprime, int rprime) {
    return kummer_core(b, f, c, p, r, k, kprime, rprime, false);
}

}  // namespace eiszeta
