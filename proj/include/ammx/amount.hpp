#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ammx {

namespace mp = boost::multiprecision;

/// Unsigned 256-bit token quantity in base units. Overflow and underflow
/// throw (std::overflow_error / std::range_error) instead of wrapping.
using Amount = mp::number<
    mp::cpp_int_backend<256, 256, mp::unsigned_magnitude, mp::checked, void>>;

/// Exact rational, used for USD prices and profit values.
using Rational = mp::cpp_rational;

/// A call that the simulated chain rejects. Carries a short reason string.
class Revert : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Strongly typed string identifier.
template <class Tag>
class Id {
  public:
    Id() = default;
    explicit Id(std::string value) : value_(std::move(value)) {}

    [[nodiscard]] const std::string& str() const noexcept { return value_; }
    [[nodiscard]] bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const Id&, const Id&) = default;
    friend bool operator==(const Id&, const Id&) = default;

  private:
    std::string value_;
};

using AccountId = Id<struct AccountTag>;
using TokenId = Id<struct TokenTag>;
using PoolId = Id<struct PoolTag>;

/// Parses a non-negative decimal integer. Rejects signs, whitespace,
/// empty input and values above 2^256 - 1.
Amount parse_amount(std::string_view text);

std::string to_string(const Amount& value);

/// 10^exp as an Amount; exp must be <= 77.
Amount pow10(unsigned exp);

/// Renders num/den as a decimal with `places` fractional digits, truncated.
std::string to_decimal_string(const Rational& value, unsigned places = 6);

/// Parses "N", "N.F" or "N/D" into a Rational (D > 0).
Rational parse_rational(std::string_view text);

}  // namespace ammx
