#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace groupeq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Euclidean remainder: result is always in [0, |m|).
inline Int pos_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace groupeq
