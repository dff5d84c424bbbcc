#ifndef EISZETA_JSON_IO_HPP
#define EISZETA_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "eiszeta/divided_power.hpp"
#include "eiszeta/group_ring.hpp"

namespace eiszeta {

using Json = nlohmann::json;

inline Json rat_json(const Rat& q) { return rat_to_string(q); }

inline std::string index_key(const MultiIndex& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s;
}

inline Json group_ring_json(const GroupRingElement& x) {
    Json coeffs = Json::object();
    for (const auto& [m, c] : x.coeffs()) coeffs[index_key(m)] = rat_to_string(c);
    return Json{{"trunc", x.truncation()}, {"coeffs", coeffs}};
}

inline Json divided_power_json(const DividedPower& x) {
    Json coeffs = Json::object();
    for (const auto& [m, c] : x.coeffs()) coeffs[index_key(m)] = rat_to_string(c);
    return Json{{"k", x.degree()}, {"coeffs", coeffs}};
}

/// p-adic residue as valuation/unit pair: x = p^val * u mod p^m.
inline Json padic_json(const Int& x, const Int& p, int rprime) {
    Int m = pow_int(p, static_cast<unsigned long>(rprime));
    Int v = x % m;
    if (v < 0) v += m;
    if (v == 0) return Json{{"val", rprime}, {"unit", "0 mod " + p.get_str() + "^0"}};
    int val = 0;
    while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
        v /= p;
        ++val;
    }
    int prec = rprime - val;
    Int mod = pow_int(p, static_cast<unsigned long>(prec));
    Int unit = v % mod;
    return Json{{"val", val},
                {"unit", unit.get_str() + " mod " + p.get_str() + "^" +
                             std::to_string(prec)}};
}

}  // namespace eiszeta

#endif
