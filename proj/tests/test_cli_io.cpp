#include <doctest.h>

#include "eiszeta/json_io.hpp"

using namespace eiszeta;

TEST_CASE("rational serialization round trip") {
    for (Rat q : {Rat(3, 10), Rat(-1, 12), Rat(7), Rat(0)}) {
        std::string s = rat_to_string(q);
        CHECK(rat_from_string(s) == q);
    }
    CHECK(rat_to_string(Rat(1, 2)) == "1/2");
    CHECK(rat_to_string(Rat(5)) == "5");
}

TEST_CASE("group ring and divided power JSON shapes") {
    auto Q = CoeffRing::rationals();
    GroupRingElement x(2, 3, Q);
    x.set({1, 0}, Rat(1, 2));
    x.set({0, 2}, Rat(-3));
    Json j = group_ring_json(x);
    CHECK(j["trunc"] == 3);
    CHECK(j["coeffs"]["1,0"] == "1/2");
    CHECK(j["coeffs"]["0,2"] == "-3");

    DividedPower d(2, 2, Q);
    d.set({1, 1}, Rat(6));
    Json jd = divided_power_json(d);
    CHECK(jd["k"] == 2);
    CHECK(jd["coeffs"]["1,1"] == "6");

    // keys serialize deterministically (sorted)
    std::string s1 = j.dump();
    Json reparsed = Json::parse(s1);
    CHECK(reparsed.dump() == s1);
}

TEST_CASE("p-adic valuation/unit serialization") {
    // 50 = 2 * 25 = 2 * 5^2 mod 5^4
    Json j = padic_json(Int(50), Int(5), 4);
    CHECK(j["val"] == 2);
    CHECK(j["unit"] == "2 mod 5^2");

    Json z = padic_json(Int(0), Int(5), 3);
    CHECK(z["val"] == 3);

    Json u = padic_json(Int(7), Int(5), 3);
    CHECK(u["val"] == 0);
    CHECK(u["unit"] == "7 mod 5^3");
}
