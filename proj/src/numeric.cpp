#include "oscillift/numeric.hpp"

#include <charconv>
#include <cstdlib>
#include <cctype>

namespace oscillift {

namespace {

unsigned& digits_slot() {
    static unsigned digits = [] {
        unsigned d = 50;
        if (const char* env = std::getenv("OSCILLIFT_PRECISION")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 20 && v <= 2000) d = static_cast<unsigned>(v);
        }
        HighFloat::default_precision(d);
        return d;
    }();
    return digits;
}

}  // namespace

unsigned working_digits() { return digits_slot(); }

void set_working_digits(unsigned digits) {
    if (digits < 20) throw InputError("working precision must be at least 20 digits");
    digits_slot() = digits;
    HighFloat::default_precision(digits);
}

HighFloat NumTraits<HighFloat>::zero_tol() {
    long e = -static_cast<long>(working_digits() * 2 / 5);
    return boost::multiprecision::pow(HighFloat(10), e);
}

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) throw InputError("empty number");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + raw + "'");
        return num / den;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false, seen_digit = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw InputError("not a number: '" + raw + "'");
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw InputError("not a number: '" + raw + "'");
        const char* first = text.data() + pos + 1;
        const char* last = text.data() + text.size();
        if (first < last && *first == '+') ++first;
        long exponent = 0;
        auto [ptr, ec] = std::from_chars(first, last, exponent);
        if (ec != std::errc() || ptr != last) throw InputError("bad exponent in '" + raw + "'");
        scale += exponent;
    }
    // a leading zero would make the integer constructor read octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{Integer(digits)};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(scale)));
    if (scale >= 0)
        value *= Rational(ten_pow);
    else
        value /= Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite number");
    return parse_rational(to_decimal(x));
}

std::string to_decimal(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string to_decimal(const HighFloat& x) {
    return x.str(static_cast<std::streamsize>(working_digits()), std::ios_base::fmtflags(0));
}

std::string to_decimal(const Rational& x) { return to_decimal(HighFloat(x)); }

std::string to_fraction(const Rational& x) { return x.str(); }

bool rational_sqrt(const Rational& x, Rational& root) {
    if (x < 0) return false;
    Integer n = boost::multiprecision::numerator(x);
    Integer d = boost::multiprecision::denominator(x);
    Integer rn = boost::multiprecision::sqrt(n);
    Integer rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    root = Rational(rn, rd);
    return true;
}

Rational rationalize(const HighFloat& x, const Integer& max_den) {
    // convergents h/k of the continued fraction of x
    Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
    HighFloat rest = x;
    Rational best(0);
    for (int iter = 0; iter < 200; ++iter) {
        HighFloat fl = boost::multiprecision::floor(rest);
        Integer a = fl.convert_to<Integer>();
        Integer h_next = a * h_prev + h;
        Integer k_next = a * k_prev + k;
        if (k_next > max_den) break;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        best = Rational(h_prev, k_prev);
        HighFloat frac = rest - fl;
        if (frac == 0 || abs_value(HighFloat(x - HighFloat(best))) == 0) break;
        rest = 1 / frac;
    }
    return best;
}

}  // namespace oscillift
