#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace ptfhard {

using Rational = boost::multiprecision::cpp_rational;

// Small trait layer so Polynomial<> can treat double (approximate, with a
// zero epsilon) and Rational (exact) coefficients uniformly.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double c, double eps) { return std::abs(c) <= eps; }
    static double abs(double c) { return std::abs(c); }
    static double to_double(double c) { return c; }
    static std::string to_string(double c) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        return buf;
    }
    static double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
};

template <>
struct CoeffTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& c, double) { return c == 0; }
    static Rational abs(const Rational& c) { return c < 0 ? Rational(-c) : c; }
    static double to_double(const Rational& c) { return c.convert_to<double>(); }
    static std::string to_string(const Rational& c) {
        std::ostringstream os;
        os << c;
        return os.str();
    }
    static Rational parse(const std::string& s) { return Rational(s); }
};

} // namespace ptfhard
