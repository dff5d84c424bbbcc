#include <doctest.h>

#include <cmath>

#include "eiszeta/zeta.hpp"

using namespace eiszeta;

namespace {

/// Independent Bernoulli-polynomial oracle from the defining recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j(x) = (m+1) x^m.
Rat bernoulli_poly_oracle(int m, const Rat& x) {
    std::vector<Rat> B{Rat(1)};
    for (int d = 1; d <= m; ++d) {
        Rat rhs = Rat(d + 1) * pow_rat(x, d);
        for (int j = 0; j < d; ++j)
            rhs -= Rat(binomial(static_cast<unsigned long>(d + 1),
                                static_cast<unsigned long>(j))) *
                   B[j];
        B.push_back(rhs / Rat(d + 1));
    }
    return B[m];
}

/// Siegel's sigma-formula for zeta_F(-1) and zeta_F(-3) of a real quadratic
/// field of discriminant D:
///   zeta_F(-1) = (1/60)  sum_{b^2 < D, b^2 = D mod 4} sigma_1((D - b^2)/4)
///   zeta_F(-3) = (1/120) sum_{...}                    sigma_3((D - b^2)/4)
Rat siegel_sigma_oracle(long disc, int k) {
    auto sigma = [](long n, int pw) {
        long s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                long t = 1;
                for (int i = 0; i < pw; ++i) t *= d;
                s += t;
            }
        return s;
    };
    long total = 0;
    for (long b = -disc; b <= disc; ++b) {
        if (b * b >= disc) continue;
        if ((disc - b * b) % 4 != 0) continue;
        total += sigma((disc - b * b) / 4, k == 1 ? 1 : 3);
    }
    return k == 1 ? Rat(total) / 60 : Rat(total) / 120;
}

QuadField F5() { return QuadField::real_quadratic(5); }

IdealLattice QZ() {
    return IdealLattice::from_generators(QuadField::rationals(), {FieldElem(Rat(1))});
}

}  // namespace

TEST_CASE("bernoulli polynomials against the recurrence oracle") {
    CHECK(bernoulli_poly(1, Rat(1)) == Rat(1, 2));
    CHECK(bernoulli_poly(2, Rat(1, 2)) == Rat(-1, 12));
    for (int k = 2; k <= 12; ++k) CHECK(bernoulli_poly(k, Rat(1)) == bernoulli_poly(k, Rat(0)));
    for (int k = 0; k <= 14; ++k)
        for (int num = 0; num <= 4; ++num) {
            Rat x = make_rat(num, 3);
            CHECK(bernoulli_poly(k, x) == bernoulli_poly_oracle(k, x));
        }
}

TEST_CASE("degree-1 partial zeta values (Hurwitz)") {
    auto Q = QuadField::rationals();
    auto Z = QZ();
    // Riemann coset: h = 1 on Z
    CHECK(zeta_neg_exact(Z, FieldElem(Rat(1)), 0) == Rat(-1, 2));
    CHECK(zeta_neg_exact(Z, FieldElem(Rat(1)), 1) == Rat(-1, 12));
    CHECK(zeta_neg_exact(Z, FieldElem(Rat(1, 2)), 1) == Rat(1, 24));
    // lattice rescaling: L = cZ scales by c^k
    auto L5 = IdealLattice::from_generators(Q, {FieldElem(Rat(5))});
    CHECK(zeta_neg_exact(L5, FieldElem(Rat(1)), 0) == Rat(3, 10));  // -B_1(1/5)
    for (int k = 0; k <= 6; ++k)
        CHECK(zeta_neg_exact(L5, FieldElem(Rat(2)), k) ==
              pow_rat(Rat(5), k) * (-bernoulli_poly_oracle(k + 1, Rat(2, 5)) / Rat(k + 1)));
}

TEST_CASE("degree-2 zeta at the zero coset matches Siegel's sigma formula") {
    for (long D : {5L, 2L, 13L}) {
        auto F = QuadField::real_quadratic(D);
        auto O = IdealLattice::ring_of_integers(F);
        long disc = F.discriminant().get_si();
        CHECK(zeta_neg_exact(O, FieldElem(), 0) == 0);  // zeta_F(0) = 0
        CHECK(zeta_neg_exact(O, FieldElem(), 1) == siegel_sigma_oracle(disc, 1));
        CHECK(zeta_neg_exact(O, FieldElem(), 3) == siegel_sigma_oracle(disc, 3));
    }
    // the classical anchor values themselves
    auto O5 = IdealLattice::ring_of_integers(F5());
    CHECK(zeta_neg_exact(O5, FieldElem(), 1) == Rat(1, 30));
    CHECK(zeta_neg_exact(O5, FieldElem(), 3) == Rat(1, 60));
}

TEST_CASE("degree-2: refinement and representative invariance") {
    for (long D : {5L, 2L, 13L}) {
        auto F = QuadField::real_quadratic(D);
        auto O = IdealLattice::ring_of_integers(F);
        auto L = IdealLattice::from_generators(F, {FieldElem(Rat(3))});
        FieldElem h(Rat(1));

        auto cones = shintani_cones(F, F.totally_positive_unit());
        std::vector<ShintaniCone> refined;
        for (const auto& c : cones)
            for (const auto& r : refine_cone(F, c)) refined.push_back(r);
        std::vector<ShintaniCone> refined2;
        for (const auto& c : refined)
            for (const auto& r : refine_cone(F, c)) refined2.push_back(r);

        for (int k = 0; k <= (D == 13 ? 2 : 4); ++k) {
            Rat base = zeta_neg_exact(L, h, k);
            CHECK(base == zeta_neg_exact_with_cones(L, h, k, refined));
            CHECK(base == zeta_neg_exact_with_cones(L, h, k, refined2));
        }

        // representative independence: u h and h + lattice give the same value
        const FieldElem& u = F.totally_positive_unit();
        for (int k = 0; k <= 2; ++k) {
            Rat base = zeta_neg_exact(L, h, k);
            CHECK(zeta_neg_exact(L, F.mul(u, h), k) == base);
            CHECK(zeta_neg_exact(L, F.add(h, FieldElem(Rat(3), Rat(3))), k) == base);
        }
    }
}

TEST_CASE("siegel zeta and the k-shift") {
    auto Q = QuadField::rationals();
    auto one = IdealLattice::from_generators(Q, {FieldElem(Rat(1))});
    auto two = IdealLattice::from_generators(Q, {FieldElem(Rat(2))});
    auto five = IdealLattice::from_generators(Q, {FieldElem(Rat(5))});
    CHECK(siegel_zeta(one, five, 0) == Rat(3, 10));
    CHECK(siegel_zeta(two, five, 0) == Rat(1, 10));  // -B_1(2/5)
    for (int k = 1; k <= 4; ++k) {
        // N(b)^k scaling relative to the underlying partial value
        IdealLattice L = five.product(two.inverse());
        CHECK(siegel_zeta(two, five, k) ==
              pow_rat(Rat(2), k) * zeta_neg_exact(L, FieldElem(Rat(1)), k));
    }
    CHECK_THROWS(siegel_zeta(two, two, 0));                      // not coprime
    CHECK_THROWS(siegel_zeta(one, one, 0));                      // h = 1 vanishes
}

TEST_CASE("distribution relation, degree 1") {
    auto Q = QuadField::rationals();
    auto Z = QZ();
    for (long c : {2L, 3L, 5L}) {
        auto C = IdealLattice::from_generators(Q, {FieldElem(Rat(c))});
        auto alpha = alpha_ideal(Z, C);
        CHECK(alpha.degree_zero());
        CHECK(alpha.masses.at(FieldElem()) == c - 1);
        IdealLattice Lc = Z.product(C.inverse());
        for (Rat t : {Rat(1, 7), Rat(3, 4)}) {
            for (int k = 0; k <= 6; ++k) {
                Rat lhs = eis_alpha_moment(alpha, FieldElem(t), Z, k);
                Rat rhs = Rat(c) * zeta_neg_exact(Z, FieldElem(t), k) -
                          zeta_neg_exact(Lc, FieldElem(t), k);
                CHECK(lhs == rhs);
            }
        }
        // the siegel-style configuration: t = 1 on L = NZ, N coprime to c
        long N = (c == 5) ? 7 : 5;
        auto LN = IdealLattice::from_generators(Q, {FieldElem(Rat(N))});
        auto alphaN = alpha_ideal(LN, C);
        IdealLattice LNc = LN.product(C.inverse());
        for (int k = 0; k <= 6; ++k) {
            CHECK(eis_alpha_moment(alphaN, FieldElem(Rat(1)), LN, k) ==
                  Rat(c) * zeta_neg_exact(LN, FieldElem(Rat(1)), k) -
                      zeta_neg_exact(LNc, FieldElem(Rat(1)), k));
        }
    }
    // independent route: the Bernoulli distribution relation
    // sum_j B_m((x+j)/c) = c^{1-m} B_m(x)
    for (long c : {2L, 3L}) {
        for (int m = 1; m <= 6; ++m) {
            Rat x(1, 7);
            Rat lhs = 0;
            for (long j = 0; j < c; ++j) lhs += bernoulli_poly(m, (x + j) / c);
            CHECK(lhs == pow_rat(Rat(c), 1 - m) * bernoulli_poly(m, x));
        }
    }
}

TEST_CASE("distribution relation, degree 2 (D = 5, c = 2)") {
    auto F = F5();
    auto L = IdealLattice::from_generators(F, {FieldElem(Rat(3))});
    auto C = IdealLattice::principal(F, FieldElem(Rat(2)));
    auto alpha = alpha_ideal(L, C);
    CHECK(alpha.degree_zero());
    CHECK(alpha.masses.at(FieldElem()) == 3);  // deg = N(2) = 4
    IdealLattice Lc = L.product(C.inverse());
    FieldElem t(Rat(1));
    // the identity compares evaluations over a common unit group; in this
    // configuration the stabilizer of t is the same for L and L c^{-1}, so
    // the right-hand side needs no index correction
    CHECK(stabilizer(F, L.reduce_mod(t), L).index ==
          stabilizer(F, Lc.reduce_mod(t), Lc).index);
    for (int k = 0; k <= 3; ++k) {
        Rat lhs = eis_alpha_moment(alpha, t, L, k);
        Rat rhs = Rat(4) * zeta_neg_exact(L, t, k) - zeta_neg_exact(Lc, t, k);
        CHECK(lhs == rhs);
    }
    // error on a vanishing difference
    CHECK_THROWS(eis_alpha_moment(alpha, FieldElem(), L, 1));
}

TEST_CASE("deligne-ribet denominators") {
    auto Q = QuadField::rationals();
    auto one = IdealLattice::from_generators(Q, {FieldElem(Rat(1))});
    auto mk = [&](long n) {
        return IdealLattice::from_generators(Q, {FieldElem(Rat(n))});
    };
    auto rep = deligne_ribet_delta(one, mk(5), mk(2), 0);
    CHECK(rep.delta == Rat(1, 2));
    CHECK(rep.denominators_divide_nc);

    auto rep1 = deligne_ribet_delta(one, mk(5), mk(2), 1);
    CHECK(rep1.delta == Rat(-1, 4));
    CHECK(rep1.denominators_divide_nc);

    for (long f : {5L, 7L})
        for (long c : {2L, 3L})
            for (int k = 0; k <= 6; ++k) {
                if (f == c) continue;
                CHECK(deligne_ribet_delta(one, mk(f), mk(c), k).denominators_divide_nc);
            }

    auto F = F5();
    auto oneF = IdealLattice::ring_of_integers(F);
    auto f3 = IdealLattice::principal(F, FieldElem(Rat(3)));
    auto c2 = IdealLattice::principal(F, FieldElem(Rat(2)));
    for (int k = 0; k <= 4; ++k)
        CHECK(deligne_ribet_delta(oneF, f3, c2, k).denominators_divide_nc);

    CHECK_THROWS(deligne_ribet_delta(one, mk(6), mk(2), 0));  // not coprime
}

TEST_CASE("numeric zeta in the convergent range") {
    auto Z = QZ();
    auto v = zeta_numeric(Z, FieldElem(Rat(1)), {2.0, 0.0}, Rat(200000));
    CHECK(std::abs(v.value - M_PI * M_PI / 6.0) < v.tail_bound + 1e-9);

    // sum over (1/2 + Z)^+ = {1/2, 3/2, ...}: Hurwitz zeta(2, 1/2) = pi^2/2
    auto w = zeta_numeric(Z, FieldElem(Rat(1, 2)), {2.0, 0.0}, Rat(200000));
    CHECK(std::abs(w.value - (M_PI * M_PI / 2.0)) < w.tail_bound + 1e-9);

    CHECK_THROWS(zeta_numeric(Z, FieldElem(Rat(1)), {1.0, 0.0}, Rat(100)));

    // D=5: doubling the norm bound keeps values within reported tails
    auto F = F5();
    auto O = IdealLattice::ring_of_integers(F);
    auto a = zeta_numeric(O, FieldElem(Rat(1, 2)), {3.0, 0.0}, Rat(2000));
    auto b = zeta_numeric(O, FieldElem(Rat(1, 2)), {3.0, 0.0}, Rat(4000));
    CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
}

TEST_CASE("dual sums and the L-value identity, degree 1") {
    auto Z = QZ();
    // h = 1/2, k = 1: sum (-1)^mu / mu^2 = -pi^2/6
    auto d = dual_sum_numeric(Z, FieldElem(Rat(1, 2)), 1, Rat(20000));
    CHECK(std::abs(d.value - std::complex<double>(-M_PI * M_PI / 6.0)) <
          d.tail_bound + 1e-9);
    // h = 1 (zero coset): sum 1/mu^2 = pi^2/3
    auto d0 = dual_sum_numeric(Z, FieldElem(Rat(1)), 1, Rat(20000));
    CHECK(std::abs(d0.value - std::complex<double>(M_PI * M_PI / 3.0)) <
          d0.tail_bound + 1e-9);
    CHECK_THROWS(dual_sum_numeric(Z, FieldElem(Rat(1, 2)), 0, Rat(100)));

    for (Rat h : {Rat(1), Rat(1, 2), Rat(1, 3)})
        for (int k : {1, 2, 3}) {
            auto rep = check_l_value_identity(Z, FieldElem(h), k, Rat(50000), 1e-9);
            INFO("h=" << rat_to_string(h) << " k=" << k << " disc=" << rep.discrepancy);
            CHECK(rep.pass);
        }
}

TEST_CASE("L-value identity, degree 2 (D = 5)") {
    auto F = F5();
    auto O = IdealLattice::ring_of_integers(F);
    for (int k : {1, 2}) {
        auto rep = check_l_value_identity(O, FieldElem(Rat(1, 3)), k, Rat(20000), 1e-4);
        INFO("k=" << k << " exact=" << rat_to_string(rep.exact)
                  << " dual=" << rep.from_dual_sum.real() << " disc=" << rep.discrepancy);
        CHECK(rep.pass);
        // the identity should pin more digits than the bare tolerance:
        // require genuine relative agreement as well
        CHECK(rep.discrepancy <
              1e-2 * (std::abs(rep.exact.get_d()) + 1e-6) + rep.allowed);
    }
}

TEST_CASE("field element parsing") {
    auto F = F5();
    CHECK(parse_field_elem(F, "3") == FieldElem(Rat(3)));
    CHECK(parse_field_elem(F, "1+w") == FieldElem(Rat(1), Rat(1)));
    CHECK(parse_field_elem(F, "2-3w") == FieldElem(Rat(2), Rat(-3)));
    CHECK(parse_field_elem(F, "1/2w") == FieldElem(Rat(0), Rat(1, 2)));
    CHECK(parse_field_elem(F, "-w") == FieldElem(Rat(0), Rat(-1)));
    CHECK(parse_field_elem(F, "-1/3+2/5w") == FieldElem(Rat(-1, 3), Rat(2, 5)));
    CHECK_THROWS(parse_field_elem(F, ""));
    CHECK_THROWS(parse_field_elem(QuadField::rationals(), "1+w"));
}

TEST_CASE("sign-character vanishing via the functional equation route") {
    // With the analytic continuation written through the functional
    // equation, zeta(eps, h, L, -k) carries the factor
    // cos(pi(s+1)/2)^{|eps|} cos(pi s/2)^{1-|eps|} at s = k+1, which kills
    // every character except sgn^{k+1}.
    auto Q = QuadField::rationals();
    auto Z = QZ();
    FieldElem h(Rat(1, 3));
    double vol = 1.0;
    for (int k : {1, 2}) {
        int wrong = k % 2;  // |eps| of the non-surviving character: sgn^k
        double s = k + 1;
        // dual sum with the eps-weights sum sgn(mu)^{wrong} e(h mu)/|mu|^{k+1}
        std::complex<double> S = 0;
        for (long m = 1; m <= 200000; ++m) {
            double inv = 1.0 / std::pow(static_cast<double>(m), s);
            double ph = 2.0 * M_PI * (Rat(m, 3).get_d() - std::floor(Rat(m, 3).get_d()));
            std::complex<double> plus{std::cos(ph), std::sin(ph)};
            std::complex<double> minus{std::cos(ph), -std::sin(ph)};
            S += (plus + (wrong ? -1.0 : 1.0) * minus) * inv;
        }
        double cosfac = std::pow(std::cos(M_PI * (s + 1) / 2.0), wrong) *
                        std::pow(std::cos(M_PI * s / 2.0), 1 - wrong);
        std::complex<double> ipow = wrong ? std::complex<double>{0, 1}
                                          : std::complex<double>{1, 0};
        double gamma_s = std::tgamma(s);
        std::complex<double> val = cosfac * 2.0 * ipow * gamma_s /
                                   (std::pow(2.0 * M_PI, s) * vol) * S;
        CHECK(std::abs(val) < 1e-8);
    }
}
