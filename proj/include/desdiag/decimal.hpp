#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace desdiag {

/// Exact decimal number: value = units * 10^-scale.
///
/// Observation costs are compared and summed exactly, so ties between
/// candidate event sets are decided by the declared values and never by
/// binary rounding. The representation is a normalized int64 mantissa
/// with up to kMaxScale fractional digits; arithmetic that would need
/// more than 18-19 significant digits throws std::overflow_error rather
/// than rounding.
class Decimal {
public:
    static constexpr std::int32_t kMaxScale = 30;

    Decimal() = default;

    static Decimal from_int(std::int64_t v) {
        Decimal d;
        d.units_ = v;
        d.scale_ = 0;
        return d;
    }

    /// Parse "[+-]digits[.digits][(e|E)[+-]digits]". Throws ParseError on
    /// malformed input, or when the value does not fit the representation.
    static Decimal parse(std::string_view text);

    bool is_zero() const { return units_ == 0; }
    bool is_negative() const { return units_ < 0; }

    /// Canonical form: no exponent, no trailing fractional zeros ("1.5", "38", "0.07").
    std::string str() const;

    /// Approximate value, for reporting only.
    double to_double() const;

    Decimal operator+(const Decimal& other) const;
    Decimal operator-(const Decimal& other) const;
    Decimal& operator+=(const Decimal& other) { return *this = *this + other; }

    bool operator==(const Decimal& other) const {
        return units_ == other.units_ && scale_ == other.scale_;
    }
    std::strong_ordering operator<=>(const Decimal& other) const;

private:
    static Decimal combine(const Decimal& a, const Decimal& b, bool subtract);
    static Decimal from_parts(__int128 units, std::int32_t scale);

    std::int64_t units_ = 0;
    std::int32_t scale_ = 0;  // 0..kMaxScale; units_ % 10 != 0 whenever scale_ > 0
};

}  // namespace desdiag
