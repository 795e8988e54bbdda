#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace oscillift {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using HighFloat = boost::multiprecision::mpfr_float;

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Decimal digits used by HighFloat. The first call reads OSCILLIFT_PRECISION.
unsigned working_digits();
void set_working_digits(unsigned digits);

template <class T>
struct NumTraits;

template <>
struct NumTraits<double> {
    static constexpr bool exact = false;
    static double zero_tol() { return 1e-10; }
    static double routing_tol() { return 1e-9; }
};

template <>
struct NumTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero_tol() { return Rational(0); }
    static Rational routing_tol() { return Rational(0); }
};

template <>
struct NumTraits<HighFloat> {
    static constexpr bool exact = false;
    // 1e-20 at the default 50 digits
    static HighFloat zero_tol();
    static HighFloat routing_tol() { return zero_tol(); }
};

template <class T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

// |x| <= tol * max(|scale|, 1); exact zero test for Rational.
template <class T>
bool negligible(const T& x, const T& scale, const T& tol) {
    if constexpr (NumTraits<T>::exact) {
        (void)scale;
        (void)tol;
        return x == 0;
    } else {
        T s = std::max(abs_value(scale), T(1));
        return abs_value(x) <= tol * s;
    }
}

template <class T>
bool is_zero(const T& x, const T& scale) {
    return negligible(x, scale, NumTraits<T>::zero_tol());
}

template <class T>
bool same_for_routing(const T& a, const T& b) {
    T scale = std::max(abs_value(a), abs_value(b));
    return negligible(T(a - b), scale, NumTraits<T>::routing_tol());
}

// Conversions between the three scalar types.
template <class To>
To convert(const Rational& x) {
    if constexpr (std::is_same_v<To, Rational>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return x.template convert_to<double>();
    } else {
        return HighFloat(x);
    }
}

template <class To>
To convert(const HighFloat& x) {
    if constexpr (std::is_same_v<To, HighFloat>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return x.template convert_to<double>();
    } else {
        return Rational(x);
    }
}

template <class To>
To convert(double x) {
    if constexpr (std::is_same_v<To, double>) {
        return x;
    } else {
        return To(x);
    }
}

// Accepts "p/q", integers, decimals and exponent notation; always exact.
Rational parse_rational(const std::string& text);
// Shortest decimal that round-trips the double, read as an exact decimal.
Rational rational_from_double(double x);

std::string to_decimal(double x);
std::string to_decimal(const HighFloat& x);
std::string to_decimal(const Rational& x);
std::string to_fraction(const Rational& x);

// Exact square root when x is the square of a rational.
bool rational_sqrt(const Rational& x, Rational& root);

// Best rational approximation with denominator bound, via continued fractions.
Rational rationalize(const HighFloat& x, const Integer& max_den);

}  // namespace oscillift
