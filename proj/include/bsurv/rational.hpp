#pragma once
// Exact rational arithmetic helpers. All real quantities in this library
// enter as rationals and every derived bound is computed with outward
// rounding, so results stay certified end to end.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "bsurv/errors.hpp"

namespace bsurv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

inline Rat rat_pow(const Rat& q, unsigned e) {
    return Rat(int_pow(rat_num(q), e), int_pow(rat_den(q), e));
}

// Floor of p/q for q > 0 (cpp_int division truncates toward zero).
inline Int rat_floor(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline Int rat_ceil(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int t = n / d;
    if (n > 0 && t * d != n) ++t;
    return t;
}

// Parses "p/q", plain integers, and decimal strings such as "2.125".
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw domain_error("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw domain_error("zero denominator in '" + s + "'");
        return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() || ip == "-" || ip == "+") ip += "0";
    for (char c : fp)
        if (c < '0' || c > '9') throw domain_error("bad decimal literal '" + s + "'");
    Rat r{Int(ip)};
    if (!fp.empty()) {
        Rat frac(Int(fp), int_pow(Int(10), static_cast<unsigned>(fp.size())));
        r += (r < 0 || ip[0] == '-') ? -frac : frac;
    }
    return r;
}

// Decimal rendering with directed rounding; `round_up` selects the upper
// endpoint of the enclosing decimal of the requested width.
inline std::string decimal_string(const Rat& q, unsigned digits, bool round_up) {
    bool neg = q < 0;
    Rat a = neg ? Rat(-q) : q;
    Int scale = int_pow(Int(10), digits);
    Int n = rat_num(a) * scale, d = rat_den(a);
    Int t = n / d;
    bool exact = (t * d == n);
    if (!exact && (round_up != neg)) ++t;
    std::string body = t.str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = body.substr(0, body.size() - digits);
    std::string frac = body.substr(body.size() - digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return neg ? "-" + out : out;
}

inline std::string rat_string(const Rat& q) {
    return rat_den(q) == 1 ? rat_num(q).str() : rat_num(q).str() + "/" + rat_den(q).str();
}

// A closed rational interval certified to contain the value in question.
struct ValueEnclosure {
    Rat lo, hi;
    bool exact = false;  // true when lo == hi equals the value, not a bound

    static ValueEnclosure point(const Rat& v) { return {v, v, true}; }
    static ValueEnclosure bounds(Rat a, Rat b) {
        if (a > b) std::swap(a, b);
        return {a, b, a == b};
    }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

}  // namespace bsurv
