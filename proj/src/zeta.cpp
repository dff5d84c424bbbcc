#include "eiszeta/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "eiszeta/isogeny.hpp"

namespace eiszeta {

Rat bernoulli_number(int k) {
    static std::vector<Rat> cache{Rat(1)};
    while (static_cast<int>(cache.size()) <= k) {
        int m = static_cast<int>(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat s = 0;
        for (int j = 0; j < m; ++j)
            s += Rat(binomial(static_cast<unsigned long>(m + 1), static_cast<unsigned long>(j))) *
                 cache[j];
        cache.push_back(-s / Rat(m + 1));
    }
    return cache[k];
}

Rat bernoulli_poly(int k, const Rat& x) {
    Rat s = 0;
    Rat xp(1);
    for (int j = k; j >= 0; --j) {
        // term C(k, j) B_j x^{k-j}, accumulated with increasing power of x
        s += Rat(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j))) *
             bernoulli_number(j) * xp;
        xp *= x;
    }
    return s;
}

std::vector<FieldElem> ideal_kernel_cosets(const IdealLattice& L, const IdealLattice& c) {
    const QuadField& F = L.field();
    if (!c.is_integral()) throw std::invalid_argument("smoothing ideal must be integral");
    IdealLattice Lc = L.product(c.inverse());
    int n = F.degree();
    // matrix of the inclusion L -> L c^{-1} in the two bases
    IntMat M(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i) {
        auto coords = Lc.coords(L.basis()[i]);
        for (int j = 0; j < n; ++j) {
            if (coords[j].get_den() != 1) throw std::logic_error("inclusion not integral");
            M[j][i] = coords[j].get_num();
        }
    }
    Isogeny incl(n, M);
    std::vector<FieldElem> out;
    for (const auto& p : incl.kernel_cosets()) out.push_back(L.reduce_mod(L.from_coords(p.coords)));
    return out;
}

FieldDistribution alpha_ideal(const IdealLattice& L, const IdealLattice& c) {
    FieldDistribution a;
    auto cosets = ideal_kernel_cosets(L, c);
    Rat deg(cosets.size());
    a.masses[FieldElem()] = deg - 1;
    for (size_t i = 1; i < cosets.size(); ++i) {
        auto it = a.masses.find(cosets[i]);
        if (it == a.masses.end())
            a.masses[cosets[i]] = Rat(-1);
        else
            it->second -= 1;
    }
    return a;
}

namespace {

/// Series in F[w] mod w^{K+1}: coefficients are field elements.
using FSeries = std::vector<FieldElem>;

FSeries series_mul(const QuadField& F, const FSeries& a, const FSeries& b, int K) {
    FSeries r(K + 1);
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return r;
}

/// (G + conj(G) w)^e mod w^{K+1}, e possibly -1 (geometric series).
FSeries edge_power(const QuadField& F, const FieldElem& G, int e, int K) {
    FSeries base(K + 1);
    base[0] = G;
    if (K >= 1) base[1] = F.conj(G);
    if (e >= 0) {
        FSeries r(K + 1);
        r[0] = FieldElem(Rat(1));
        for (int i = 0; i < e; ++i) r = series_mul(F, r, base, K);
        return r;
    }
    if (e != -1) throw std::logic_error("edge exponent out of range");
    // 1/(G + conj(G) w) = (1/G) sum (-conj(G)/G)^j w^j
    FSeries r(K + 1);
    FieldElem invG = F.div(FieldElem(Rat(1)), G);
    FieldElem ratio = F.neg(F.mul(F.conj(G), invG));
    FieldElem cur = invG;
    for (int j = 0; j <= K; ++j) {
        r[j] = cur;
        cur = F.mul(cur, ratio);
    }
    return r;
}

/// Exact value at s = -k of the cone sum over x0 + m G1 + n G2 (m, n >= 0)
/// of N^{-s}, where x0 = y G1 + z G2. Obtained from the double Mellin
/// transform: the value is k!^2 times the double-pole coefficient, which
/// collapses to a finite Bernoulli sum
///   (k!^2 / 2) sum_{m+l=2k+2} B_m(y) B_l(z) / (m! l!) *
///        Tr( [w^k] (G1 + conj G1 w)^{m-1} (G2 + conj G2 w)^{l-1} ).
Rat cone_point_value(const QuadField& F, const FieldElem& G1, const FieldElem& G2,
                     const Rat& y, const Rat& z, int k) {
    Rat total = 0;
    for (int m = 0; m <= 2 * k + 2; ++m) {
        int l = 2 * k + 2 - m;
        Rat bm = bernoulli_poly(m, y);
        if (bm == 0) continue;
        Rat bl = bernoulli_poly(l, z);
        if (bl == 0) continue;
        FSeries s = series_mul(F, edge_power(F, G1, m - 1, k), edge_power(F, G2, l - 1, k), k);
        Rat tr = F.trace(s[k]);
        if (tr == 0) continue;
        total += bm * bl * tr /
                 (Rat(factorial(static_cast<unsigned long>(m))) *
                  Rat(factorial(static_cast<unsigned long>(l))));
    }
    Rat kfac(factorial(static_cast<unsigned long>(k)));
    return total * kfac * kfac / 2;
}

/// All points of (h + L) in the half-open box {y G1 + z G2 : y in (0,1],
/// z in [0,1)} together with their box coordinates.
std::vector<std::pair<Rat, Rat>> box_points(const IdealLattice& L, const FieldElem& h,
                                            const FieldElem& G1, const FieldElem& G2) {
    const QuadField& F = L.field();
    // box coordinates of x: solve x = y G1 + z G2 via (1, omega) coords
    Rat det = G1.a * G2.b - G2.a * G1.b;
    if (det == 0) throw std::invalid_argument("degenerate cone generators");
    auto box_coords = [&](const FieldElem& x) {
        Rat y = (x.a * G2.b - G2.a * x.b) / det;
        Rat z = (G1.a * x.b - x.a * G1.b) / det;
        return std::pair<Rat, Rat>(y, z);
    };
    // bound the lattice coordinates over the box corners
    std::vector<FieldElem> corners{FieldElem(), G1, G2, F.add(G1, G2)};
    std::vector<Rat> lo(2, Rat(0)), hi(2, Rat(0));
    bool first = true;
    for (const auto& c : corners) {
        auto lc = L.coords(F.sub(c, h));
        for (int i = 0; i < 2; ++i) {
            if (first || lc[i] < lo[i]) lo[i] = lc[i];
            if (first || lc[i] > hi[i]) hi[i] = lc[i];
        }
        first = false;
    }
    std::vector<std::pair<Rat, Rat>> out;
    Int a0, a1, b0, b1;
    mpz_fdiv_q(a0.get_mpz_t(), lo[0].get_num().get_mpz_t(), lo[0].get_den().get_mpz_t());
    mpz_cdiv_q(a1.get_mpz_t(), hi[0].get_num().get_mpz_t(), hi[0].get_den().get_mpz_t());
    mpz_fdiv_q(b0.get_mpz_t(), lo[1].get_num().get_mpz_t(), lo[1].get_den().get_mpz_t());
    mpz_cdiv_q(b1.get_mpz_t(), hi[1].get_num().get_mpz_t(), hi[1].get_den().get_mpz_t());
    for (Int a = a0; a <= a1; ++a)
        for (Int b = b0; b <= b1; ++b) {
            FieldElem x = F.add(h, L.from_coords({Rat(a), Rat(b)}));
            auto [y, z] = box_coords(x);
            if (y > 0 && y <= 1 && z >= 0 && z < 1) out.push_back({y, z});
        }
    return out;
}

Rat cone_zeta(const IdealLattice& L, const FieldElem& h, const ShintaniCone& cone, int k) {
    const QuadField& F = L.field();
    // scale the generators into L so the box decomposition is valid
    auto scale_into = [&](const FieldElem& g) {
        auto c = L.coords(g);
        Int m = 1;
        for (const auto& q : c) {
            Int l;
            mpz_lcm(l.get_mpz_t(), m.get_mpz_t(), q.get_den().get_mpz_t());
            m = l;
        }
        return F.mul(g, FieldElem(Rat(m)));
    };
    FieldElem G1 = scale_into(cone.A);
    FieldElem G2 = scale_into(cone.B);
    Rat total = 0;
    for (const auto& [y, z] : box_points(L, h, G1, G2))
        total += cone_point_value(F, G1, G2, y, z, k);
    return total;
}

}  // namespace

Rat zeta_neg_exact_with_cones(const IdealLattice& L, const FieldElem& h, int k,
                              const std::vector<ShintaniCone>& cones) {
    const QuadField& F = L.field();
    if (F.degree() == 1) return zeta_neg_exact(L, h, k);
    FieldElem h0 = L.reduce_mod(h);
    auto st = stabilizer(F, h0, L);
    const FieldElem& u = F.totally_positive_unit();
    // unit powers inside the stabilizer fold into translates of the
    // fundamental domain of the full positive unit group
    Rat total = 0;
    FieldElem uinv = F.conj(u);  // norm-one inverse
    FieldElem shift = h0;
    for (long j = 0; j < st.index; ++j) {
        for (const auto& c : cones) total += cone_zeta(L, shift, c, k);
        shift = L.reduce_mod(F.mul(shift, uinv));
    }
    return total;
}

Rat zeta_neg_exact(const IdealLattice& L, const FieldElem& h, int k) {
    const QuadField& F = L.field();
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (F.degree() == 1) {
        Rat lam = L.basis()[0].a;
        Rat x = L.coords(h)[0];
        x = frac_mod1(x);
        if (x == 0) x = 1;  // coset of 0: sum over positive lattice points
        return pow_rat(lam, k) * (-bernoulli_poly(k + 1, x) / Rat(k + 1));
    }
    return zeta_neg_exact_with_cones(L, h, k,
                                     shintani_cones(F, F.totally_positive_unit()));
}

Rat siegel_zeta(const IdealLattice& b, const IdealLattice& f, int k) {
    if (!b.is_integral() || !f.is_integral())
        throw std::invalid_argument("siegel_zeta expects integral ideals");
    if (!b.is_coprime(f)) throw std::invalid_argument("ideals must be coprime");
    IdealLattice L = f.product(b.inverse());
    FieldElem one(Rat(1));
    if (L.contains(one)) throw std::invalid_argument("h = 1 is zero in F(x)R/L");
    return pow_rat(b.norm(), k) * zeta_neg_exact(L, one, k);
}

Rat eis_alpha_moment(const FieldDistribution& alpha, const FieldElem& t,
                     const IdealLattice& L, int k) {
    // Each partial zeta is a sum modulo its own stabilizer; the evaluated
    // Eisenstein combination lives over the joint stabilizer of t and the
    // support. Rescale each summand by the exact index ratio, normalized so
    // the term at d = 0 (equivalently, at the base point t) stays plain.
    const QuadField& F = L.field();
    long m_t = stabilizer(F, L.reduce_mod(t), L).index;
    Rat total = 0;
    for (const auto& [d, c] : alpha.masses) {
        if (L.contains(F.sub(t, d)))
            throw std::domain_error("eis_alpha_moment: t - d vanishes on the torus");
        long m_d = stabilizer(F, L.reduce_mod(F.sub(t, d)), L).index;
        total += c * make_rat(m_t, m_d) * zeta_neg_exact(L, F.sub(t, d), k);
    }
    return total;
}

DeligneRibetReport deligne_ribet_delta(const IdealLattice& b, const IdealLattice& f,
                                       const IdealLattice& c, int k) {
    if (!c.is_integral() || !c.is_coprime(f) || !c.is_coprime(b))
        throw std::invalid_argument("smoothing ideal must be integral and coprime to b, f");
    Rat nc = c.norm();
    Rat delta = pow_rat(nc, k + 1) * siegel_zeta(b, f, k) - siegel_zeta(b.product(c), f, k);
    DeligneRibetReport rep;
    rep.delta = delta;
    rep.denominator_primes = prime_factors(delta.get_den());
    rep.denominators_divide_nc = true;
    Int ncz = nc.get_num();
    for (const auto& p : rep.denominator_primes)
        if (!mpz_divisible_p(ncz.get_mpz_t(), p.get_mpz_t()))
            rep.denominators_divide_nc = false;
    return rep;
}

namespace {

/// Kahan-compensated complex accumulator.
struct Kahan {
    std::complex<double> sum{0.0, 0.0}, comp{0.0, 0.0};
    void add(std::complex<double> v) {
        std::complex<double> y = v - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

NumericValue zeta_numeric(const IdealLattice& L, const FieldElem& h,
                          std::complex<double> s, const Rat& X) {
    const QuadField& F = L.field();
    if (s.real() <= 1.05) throw std::invalid_argument("zeta_numeric needs Re s > 1 + margin");
    Kahan acc;
    long terms = 0;
    if (F.degree() == 1) {
        Rat lam = L.basis()[0].a;
        Rat x = frac_mod1(L.coords(h)[0]);
        if (x == 0) x = 1;
        double lamd = lam.get_d();
        double x0 = x.get_d();
        for (long m = 0;; ++m) {
            double a = (x0 + m) * lamd;
            if (a > X.get_d()) break;
            acc.add(std::exp(-s * std::log(a)));
            ++terms;
        }
        double sigma = s.real();
        double tail = std::pow(X.get_d(), 1.0 - sigma) / (lamd * (sigma - 1.0)) +
                      std::pow(X.get_d(), -sigma);
        return {acc.sum, tail, terms};
    }
    // fold the stabilizer index into translated cosets, so the enumeration
    // window always comes from the full positive unit group (narrow box)
    FieldElem h0 = L.reduce_mod(h);
    auto st = stabilizer(F, h0, L);
    const FieldElem& u = F.totally_positive_unit();
    FieldElem uinv = F.conj(u);
    double sigma = s.real();
    long upper_half = 0;
    FieldElem shift = h0;
    for (long j = 0; j < st.index; ++j) {
        for (const auto& a : orbit_representatives(L, shift, u, X, true)) {
            double N = F.norm(a).get_d();
            acc.add(std::exp(-s * std::log(N)));
            ++terms;
            if (Rat(2) * abs(F.norm(a)) > X) ++upper_half;
        }
        shift = L.reduce_mod(F.mul(shift, uinv));
    }
    // empirical orbit density from the top norm shell, doubled for safety
    double density = 2.0 * static_cast<double>(upper_half) / (X.get_d() / 2.0);
    double tail = density * std::pow(X.get_d(), 1.0 - sigma) / (sigma - 1.0) + 1e-300;
    return {acc.sum, tail, terms};
}

NumericValue dual_sum_numeric(const IdealLattice& L, const FieldElem& h, int k,
                              const Rat& X) {
    if (k < 1) throw std::invalid_argument("dual sum requires k >= 1 (absolute convergence)");
    const QuadField& F = L.field();
    FieldElem h0 = L.reduce_mod(h);
    auto st = stabilizer(F, h0, L);
    IdealLattice Ldual = IdealLattice::from_generators(F, L.dual_basis());
    // enumerate one representative per full-unit-group orbit (narrow
    // window), then sum the stabilizer-coset phases per representative:
    // each <u_h>-orbit splits a full orbit into st.index pieces
    const FieldElem& u = F.totally_positive_unit();
    auto reps = orbit_representatives(Ldual, FieldElem(), u, X, false);
    Kahan acc;
    long upper_half = 0, terms = 0;
    for (const auto& mu0 : reps) {
        Rat N = F.norm(mu0);
        double denom = pow_rat(N, k + 1).get_d();
        FieldElem mu = mu0;
        for (long j = 0; j < st.index; ++j) {
            Rat q = frac_mod1(L.pairing(h0, mu));
            double theta = 2.0 * M_PI * q.get_d();
            acc.add(std::complex<double>(std::cos(theta), std::sin(theta)) / denom);
            ++terms;
            mu = F.mul(mu, u);
        }
        if (Rat(2) * abs(N) > X) ++upper_half;
    }
    double density = 2.0 * static_cast<double>(st.index) *
                     static_cast<double>(upper_half) / (X.get_d() / 2.0);
    if (F.degree() == 1) density = 2.0 / L.dual_basis()[0].a.get_d();
    double tail = density * std::pow(X.get_d(), -static_cast<double>(k)) /
                      static_cast<double>(k) +
                  1e-300;
    return {acc.sum, tail, terms};
}

LValueReport check_l_value_identity(const IdealLattice& L, const FieldElem& h, int k,
                                    const Rat& X, double tol) {
    const QuadField& F = L.field();
    int n = F.degree();
    LValueReport rep;
    rep.exact = zeta_neg_exact(L, h, k);
    NumericValue dual = dual_sum_numeric(L, h, k, X);
    // (k!)^n / ((2 pi i)^{n(k+1)} vol L)
    int e = n * (k + 1);
    double mag = std::pow(2.0 * M_PI, e);
    std::complex<double> ipow;
    switch (e % 4) {
        case 0: ipow = {1, 0}; break;
        case 1: ipow = {0, 1}; break;
        case 2: ipow = {-1, 0}; break;
        default: ipow = {0, -1}; break;
    }
    double kfac = 1.0;
    for (int j = 2; j <= k; ++j) kfac *= j;
    std::complex<double> coef =
        std::pow(kfac, n) / (mag * ipow * L.covolume());
    rep.from_dual_sum = coef * dual.value;
    rep.discrepancy = std::abs(rep.from_dual_sum - std::complex<double>(rep.exact.get_d()));
    rep.allowed = tol + std::abs(coef) * dual.tail_bound;
    rep.pass = rep.discrepancy < rep.allowed;
    return rep;
}

FieldElem parse_field_elem(const QuadField& F, const std::string& s) {
    // grammar: [rat] [(+|-) [rat] w] | [rat] w
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty field element");
    auto parse_rat = [](const std::string& u) -> Rat {
        if (u.empty() || u == "+") return Rat(1);
        if (u == "-") return Rat(-1);
        return rat_from_string(u[0] == '+' ? u.substr(1) : u);
    };
    size_t wpos = t.find('w');
    if (wpos == std::string::npos) return FieldElem(parse_rat(t));
    if (F.degree() != 2) throw std::invalid_argument("w only valid for quadratic fields");
    // split at the sign separating the rational part from the w part
    std::string head = t.substr(0, wpos);
    std::string coeff = head;
    std::string rational;
    for (size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
            head[i - 1] != '-') {
            rational = head.substr(0, i);
            coeff = head.substr(i);
            break;
        }
    }
    if (t.substr(wpos + 1).size() > 0) throw std::invalid_argument("trailing input after w");
    // strip a trailing '*' in forms like "2*w"
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    Rat a = rational.empty() ? Rat(0) : parse_rat(rational);
    Rat b = parse_rat(coeff);
    return FieldElem(a, b);
}

}  // namespace eiszeta
