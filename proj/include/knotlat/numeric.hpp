#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/integer.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace knotlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// g = a*x + b*y
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return abs_int(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// floor division (rounds toward negative infinity, unlike cpp_int's operator/)
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(r.numerator(), r.denominator()); }

// integer square root (floor)
inline Int isqrt(const Int& a) {
    if (a < 0) throw std::domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(a);
}

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline Rat rat(const Int& n) { return Rat(n, 1); }
inline Rat rat(long n) { return Rat(Int(n), 1); }

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

// parses "p" or "p/q"
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s), 1);
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

// representative of r mod 2 in [0, 2)
inline Rat mod2(const Rat& r) {
    Rat half = r / Rat(Int(2), 1);
    Int k = floor_rat(half);
    return r - Rat(Int(2) * k, 1);
}

}  // namespace knotlat
