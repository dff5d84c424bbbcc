#include <doctest.h>

#include "eiszeta/forms.hpp"

using namespace eiszeta;
using namespace eiszeta::forms;

TEST_CASE("psi components for small n") {
    // n=1: psi^0 = mu_1 (x) lambda, psi^1 = dv_1 (x) lambda
    auto psi1 = build_psi(1, 2);
    REQUIRE(psi1.size() == 2);
    CHECK(psi1[0].comps().size() == 1);
    CHECK(psi1[0].comps().begin()->first.mu == 1u);
    CHECK(psi1[1].comps().begin()->first.dv == 1u);

    // n=2: psi^1 = dv_1 ^ mu_2 - dv_2 ^ mu_1 (signed shuffle)
    auto psi2 = build_psi(2, 2);
    Form expect(2, 2);
    expect.set_lambda(1);
    expect.add(WedgeKey{1u, 2u}, scalar_one(2));
    expect.add_sign(WedgeKey{2u, 1u}, scalar_one(2), -1);
    CHECK(psi2[1].equals(expect));

    // top component is dv_1 ^ ... ^ dv_n
    auto psi3 = build_psi(3, 2);
    CHECK(psi3[3].comps().size() == 1);
    CHECK(psi3[3].comps().begin()->first.dv == 7u);
    CHECK(psi3[3].comps().begin()->first.mu == 0u);
}

TEST_CASE("nu: theta image matches the closed formula, dv-calculus basics") {
    for (int n : {1, 2, 3}) {
        auto nu = build_nu(n, 3);
        auto closed = build_nu_closed(n, 3);
        for (int a = 0; a < n; ++a) CHECK(nu[a].equals(closed[a]));
    }
    // n=1: nu^0 = v_1 (x) lambda
    auto nu1 = build_nu(1, 2);
    VarLayout L(1);
    Form expect(1, 2);
    expect.set_lambda(1);
    expect.add(WedgeKey{}, scalar_var(1, L.v(0)));
    CHECK(nu1[0].equals(expect));
}

TEST_CASE("exterior d: basics and d^2 = 0") {
    VarLayout L(2);
    Form f(2, 3);
    f.add(WedgeKey{}, scalar_var(2, L.v(0)));  // scalar v_1
    auto df = f.exterior_d();                  // = dv_1
    REQUIRE(df.comps().size() == 1);
    CHECK(df.comps().begin()->first.dv == 1u);

    // d(dv_1 ^ mu_2) = 0
    Form g(2, 3);
    g.add(WedgeKey{1u, 2u}, scalar_one(2));
    CHECK(g.exterior_d().is_zero());

    // d(v_1 v_2 dv_1) = v_1 dv_2 ^ dv_1
    Form h(2, 3);
    h.add(WedgeKey{1u, 0u},
          scalar_var(2, L.v(0)).mul(scalar_var(2, L.v(1)), L, 3));
    auto dh = h.exterior_d();
    Form expect(2, 3);
    expect.add_sign(WedgeKey{3u, 0u}, scalar_var(2, L.v(0)), -1);  // dv_2^dv_1 = -dv_1^dv_2
    CHECK(dh.equals(expect));

    // d^2 = 0 on all built forms
    for (int n : {1, 2, 3}) {
        for (const auto& psi : build_psi(n, 3)) CHECK(psi.exterior_d().exterior_d().is_zero());
        for (const auto& nu : build_nu(n, 3)) CHECK(nu.exterior_d().exterior_d().is_zero());
        for (int a = 0; a < n; ++a)
            CHECK(build_E_series(n, a, 3, false).exterior_d().exterior_d().is_zero());
    }
}

TEST_CASE("wedge graded commutativity and theta derivation on samples") {
    int n = 3, K = 2;
    auto psi = build_psi(n, K);
    auto nu = build_nu(n, K);
    // x ^ y = (-1)^{|x||y|} y ^ x: lambda powers differ between products of
    // lambda-carrying forms, so compare with matching bookkeeping
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            Form xy = psi[a].wedge(psi[b]);
            Form yx = psi[b].wedge(psi[a]);
            int deg = n * n;  // psi^a has total degree n regardless of a
            Form flipped = (deg % 2 == 0) ? yx : yx.negate();
            CHECK(xy.equals(flipped));
        }
    // theta(x ^ y) = theta(x) ^ y + (-1)^{|x|} x ^ theta(y)
    for (int a = 0; a + 1 < n; ++a) {
        Form x = psi[a];
        Form y = nu[a + 1];
        Form lhs = x.wedge(y).theta();
        Form xty = x.wedge(y.theta());
        Form rhs = x.theta().wedge(y) + (n % 2 == 0 ? xty : xty.negate());
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("E series: explicit n=1 expansion and leading term") {
    // n=1, a=0, K=2, specialized: E^0 = v/(tau v^2 - v z)
    //                                 = (1/(tau v))(1 + z/(tau v) + (z/(tau v))^2)
    VarLayout L(1);
    Form E = build_E_series(1, 0, 2, true);
    REQUIRE(E.comps().size() == 1);
    const Scalar& s = E.comps().begin()->second;

    // expected value ((tau v)^2 + tau v z + z^2) / (tau v)^3, i.e. the
    // geometric expansion of 1/(tau v - z)
    Poly tauv = Poly::variable(L.total(), L.tau()).mul(Poly::variable(L.total(), L.v(0)), L, -1);
    Poly z = Poly::variable(L.total(), L.z(0));
    Poly num_expect = tauv.mul(tauv, L, -1) + tauv.mul(z, L, 2) + z.mul(z, L, 2);
    Poly den_expect = tauv.mul(tauv, L, -1).mul(tauv, L, -1);
    CHECK(s.equals(Scalar(num_expect, den_expect), L, 2));

    // z-degree-0 part: E^0|_{z=0} = nu^0 / (tau q)
    Form E0 = build_E_series(2, 0, 0, true);
    auto nu = build_nu(2, 0);
    VarLayout L2(2);
    Poly q(L2.total());
    for (int j = 0; j < 2; ++j) {
        std::vector<int> m(L2.total(), 0);
        m[L2.v(j)] = 2;
        q.add_term(m, QI(Rat(1)));
    }
    Poly tq = Poly::variable(L2.total(), L2.tau()).mul(q, L2, -1);
    Form expect = nu[0].scalar_mul(Scalar(Poly::constant(L2.total(), QI(Rat(1))), tq));
    CHECK(E0.equals(expect));

    // sign/factorial: E^1 carries (-1) 1! (tau q - kappa_V)^{-2}
    Form E1 = build_E_series(2, 1, 1, true);
    auto nu2 = build_nu(2, 1);
    // compare against the definition directly: (tau q - kappa_V)^2 E^1 = -nu^1
    // holds after clearing the truncated geometric tail at K=1:
    // multiply back and compare the z<=1 part
    VarLayout LL(2);
    Poly kv = kappa_V(2).num();
    Poly gmk = tq - kv;
    Form lhs = E1.scalar_mul(Scalar::from_poly(gmk)).scalar_mul(Scalar::from_poly(gmk));
    Form rhs = nu2[1].negate();
    CHECK(lhs.equals(rhs));
}

TEST_CASE("verify_green_identities: all pass for n <= 3") {
    for (int n : {1, 2}) {
        for (int K : {3, 4}) {
            auto rep = verify_green_identities(n, K);
            for (const auto& r : rep) {
                INFO(r.name << " at n=" << n << " K=" << K);
                CHECK(r.pass);
            }
        }
    }
    auto rep3 = verify_green_identities(3, 2);
    for (const auto& r : rep3) {
        INFO(r.name << " at n=3");
        CHECK(r.pass);
    }
}

TEST_CASE("negative control and equivariance") {
    CHECK(negative_control(1, 3));
    CHECK(negative_control(2, 4));
    CHECK(equivariance_check(2));
}

TEST_CASE("identities at the n = 4 bound (small truncation)") {
    for (const auto& r : verify_green_identities(4, 1)) {
        INFO(r.name);
        CHECK(r.pass);
    }
}
