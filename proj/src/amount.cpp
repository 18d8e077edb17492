#include "ammx/amount.hpp"

#include <algorithm>
#include <limits>

namespace ammx {

Amount parse_amount(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty amount");
    }
    if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("amount must be a non-negative decimal integer: '" +
                                    std::string(text) + "'");
    }
    // Parse into an unbounded integer first so overflow is reported cleanly.
    mp::cpp_int wide(std::string{text});
    if (wide > mp::cpp_int(std::numeric_limits<Amount>::max())) {
        throw std::out_of_range("amount exceeds 256 bits: '" + std::string(text) + "'");
    }
    return Amount(wide);
}

std::string to_string(const Amount& value) { return value.str(); }

Amount pow10(unsigned exp) {
    if (exp > 77) {
        throw std::out_of_range("pow10 exponent too large");
    }
    Amount result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        result *= 10;
    }
    return result;
}

std::string to_decimal_string(const Rational& value, unsigned places) {
    mp::cpp_int num = mp::numerator(value);
    mp::cpp_int den = mp::denominator(value);
    const bool negative = num < 0;
    if (negative) {
        num = -num;
    }
    mp::cpp_int scale = 1;
    for (unsigned i = 0; i < places; ++i) {
        scale *= 10;
    }
    mp::cpp_int scaled = num * scale / den;
    std::string digits = scaled.str();
    if (digits.size() <= places) {
        digits.insert(0, places + 1 - digits.size(), '0');
    }
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    return negative ? "-" + out : out;
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto dot = text.find('.');
    if (slash == std::string_view::npos && dot != std::string_view::npos) {
        const std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 77) {
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        }
        const mp::cpp_int whole = dot == 0 ? mp::cpp_int(0) : mp::cpp_int(parse_amount(text.substr(0, dot)));
        const mp::cpp_int scale(pow10(static_cast<unsigned>(frac.size())));
        return Rational(whole) + Rational(mp::cpp_int(parse_amount(frac)), scale);
    }
    if (slash == std::string_view::npos) {
        return Rational(mp::cpp_int(parse_amount(text)));
    }
    const mp::cpp_int num(parse_amount(text.substr(0, slash)));
    const mp::cpp_int den(parse_amount(text.substr(slash + 1)));
    if (den == 0) {
        throw std::invalid_argument("rational denominator is zero");
    }
    return Rational(num, den);
}

}  // namespace ammx
