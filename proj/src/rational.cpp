#include "ddeq/rational.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ddeq {

std::string to_string(const Rational& q) { return q.str(); }

namespace {

BigInt parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty())
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    BigInt value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

// Decimal with optional fraction and exponent, no sign.
Rational parse_decimal(std::string_view s, std::string_view whole) {
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view exp_text = s.substr(epos + 1);
        bool neg = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            neg = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        BigInt e = parse_digits(exp_text, whole);
        if (e > 4000) throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
        exponent = e.convert_to<long>() * (neg ? -1 : 1);
        s = s.substr(0, epos);
    }
    std::string_view int_part = s, frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::string digits(int_part);
    digits += frac_part;
    Rational value(parse_digits(digits, whole));
    long scale = exponent - static_cast<long>(frac_part.size());
    if (scale >= 0)
        value *= pow10(static_cast<unsigned>(scale));
    else
        value /= pow10(static_cast<unsigned>(-scale));
    return value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_digits(s.substr(0, slash), text);
        BigInt den = parse_digits(s.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = Rational(num, den);
    } else {
        value = parse_decimal(s, text);
    }
    return negative ? Rational(-value) : value;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    return Rational(v);
}

Rational decimal_rational(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    return parse_rational(std::string_view(buf, static_cast<size_t>(end - buf)));
}

Rational pow2(int e) {
    BigInt p = 1;
    p <<= static_cast<unsigned>(e < 0 ? -e : e);
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace ddeq
