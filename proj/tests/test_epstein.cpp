#include <doctest.h>

#include <cmath>

#include "eiszeta/epstein.hpp"

using namespace eiszeta;

namespace {

EpsteinSpec base_spec(std::complex<double> s) {
    EpsteinSpec spec;
    spec.gram = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
    spec.shift = {Rat(1, 3), Rat(1, 5)};
    spec.poly[{0, 0}] = Rat(1);
    spec.s = s;
    return spec;
}

}  // namespace

TEST_CASE("incomplete gamma and log gamma") {
    // Gamma(1, x) = e^-x
    for (double x : {0.5, 1.0, 3.0, 10.0})
        CHECK(std::abs(upper_incomplete_gamma({1, 0}, x) - std::exp(-x)) < 1e-14);
    // Gamma(2, x) = (x+1) e^-x
    for (double x : {0.25, 2.0, 7.5})
        CHECK(std::abs(upper_incomplete_gamma({2, 0}, x) - (x + 1) * std::exp(-x)) < 1e-13);
    // recurrence Gamma(a+1,x) = a Gamma(a,x) + x^a e^-x at complex a
    std::complex<double> a{1.3, 0.7};
    for (double x : {0.5, 2.0, 9.0}) {
        auto lhs = upper_incomplete_gamma(a + 1.0, x);
        auto rhs = a * upper_incomplete_gamma(a, x) + std::exp(a * std::log(x) - x);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
    // log_gamma against Gamma(5) = 24, Gamma(1/2) = sqrt(pi)
    CHECK(std::abs(std::exp(log_gamma({5, 0})) - 24.0) < 1e-10);
    CHECK(std::abs(std::exp(log_gamma({0.5, 0})) - std::sqrt(M_PI)) < 1e-12);
}

TEST_CASE("riemann anchor: n=1, v=1/2 gives 2(2^{1-2s}-1) zeta(2s)") {
    EpsteinSpec spec;
    spec.gram = {{Rat(1)}};
    spec.shift = {Rat(1, 2)};
    spec.poly[{0}] = Rat(1);

    spec.s = {1.0, 0.0};
    auto v1 = epstein_continued(spec, 1.0, 40);
    CHECK(std::abs(v1 - std::complex<double>(-M_PI * M_PI / 6.0)) < 1e-12);

    spec.s = {2.0, 0.0};
    auto v2 = epstein_continued(spec, 1.0, 40);
    CHECK(std::abs(v2 - std::complex<double>(-7.0 * std::pow(M_PI, 4) / 360.0)) < 1e-12);
}

TEST_CASE("continuation matches the direct sum in the convergent region") {
    for (auto s : {std::complex<double>{3.0, 0.0}, {3.0, 0.7}}) {
        auto spec = base_spec(s);
        auto direct = epstein_direct_sum(spec, 220);
        auto cont = epstein_continued(spec, 1.0, 30);
        CHECK(std::abs(direct - cont) < 1e-10);
    }
    // with a nonconstant polynomial
    auto spec = base_spec({3.0, 0.0});
    spec.poly.clear();
    spec.poly[{2, 0}] = Rat(1);
    spec.poly[{0, 2}] = Rat(-2);
    auto direct = epstein_direct_sum(spec, 220);
    auto cont = epstein_continued(spec, 1.0, 30);
    CHECK(std::abs(direct - cont) < 1e-9 * (1.0 + std::abs(direct)));
}

TEST_CASE("split point invariance, including off the convergence region") {
    for (auto s : {std::complex<double>{3.0, 0.0}, {0.4, 0.0}, {-1.2, 0.9}}) {
        auto spec = base_spec(s);
        auto a = epstein_continued(spec, 1.0, 30);
        auto b = epstein_continued(spec, 2.0, 30);
        CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("odd symmetry vanishing") {
    EpsteinSpec spec;
    spec.gram = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
    spec.shift = {Rat(1, 2), Rat(0)};
    spec.poly[{1, 0}] = Rat(1);  // P odd under m -> -m
    spec.s = {1.5, 0.0};
    auto v = epstein_continued(spec, 1.0, 30);
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("guards") {
    EpsteinSpec pole;
    pole.gram = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    pole.shift = {Rat(0), Rat(1)};  // integral shift
    pole.poly[{0, 0}] = Rat(1);
    pole.s = {0.7, 0.0};
    CHECK_THROWS(epstein_continued(pole, 1.0, 20));

    EpsteinSpec bad;
    bad.gram = {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}};  // indefinite
    bad.shift = {Rat(1, 2), Rat(0)};
    bad.poly[{0, 0}] = Rat(1);
    bad.s = {2.0, 0.0};
    CHECK_THROWS(epstein_continued(bad, 1.0, 20));

    EpsteinSpec inhom;
    inhom.gram = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    inhom.shift = {Rat(1, 2), Rat(0)};
    inhom.poly[{0, 0}] = Rat(1);
    inhom.poly[{1, 0}] = Rat(1);
    inhom.s = {2.0, 0.0};
    CHECK_THROWS(epstein_continued(inhom, 1.0, 20));
}
