#include "desdiag/decimal.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "desdiag/errors.hpp"

namespace desdiag {

namespace {

using int128 = __int128;

constexpr int128 kInt128Max = ~(int128{1} << 127);

int128 pow10_128(std::int32_t k) {
    int128 p = 1;
    for (std::int32_t i = 0; i < k; ++i) p *= 10;
    return p;
}

int128 abs128(int128 v) { return v < 0 ? -v : v; }

[[noreturn]] void bad_decimal(std::string_view text, const char* why) {
    throw ParseError("invalid decimal '" + std::string(text) + "': " + why);
}

}  // namespace

Decimal Decimal::from_parts(int128 units, std::int32_t scale) {
    while (scale > 0 && units != 0 && units % 10 == 0) {
        units /= 10;
        --scale;
    }
    if (units == 0) scale = 0;
    if (abs128(units) > int128{std::numeric_limits<std::int64_t>::max()})
        throw std::overflow_error("decimal overflow: more than 18 significant digits");
    Decimal d;
    d.units_ = static_cast<std::int64_t>(units);
    d.scale_ = scale;
    return d;
}

Decimal Decimal::parse(std::string_view text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }

    int128 mantissa = 0;
    std::size_t digits = 0;
    std::int64_t exp10 = 0;

    auto eat_digits = [&](bool fractional) {
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (mantissa > (kInt128Max - 9) / 10) bad_decimal(text, "too many digits");
            mantissa = mantissa * 10 + (text[i] - '0');
            if (fractional) --exp10;
            ++digits;
            ++i;
        }
    };

    eat_digits(false);
    if (i < n && text[i] == '.') {
        ++i;
        const std::size_t before = digits;
        eat_digits(true);
        if (digits == before) bad_decimal(text, "missing fractional digits");
    }
    if (digits == 0) bad_decimal(text, "missing digits");

    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            exp_neg = text[i] == '-';
            ++i;
        }
        std::int64_t e = 0;
        std::size_t exp_digits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            e = e * 10 + (text[i] - '0');
            if (e > 10000) bad_decimal(text, "exponent out of range");
            ++exp_digits;
            ++i;
        }
        if (exp_digits == 0) bad_decimal(text, "missing exponent digits");
        exp10 += exp_neg ? -e : e;
    }
    if (i != n) bad_decimal(text, "trailing characters");

    // Fold trailing zeros of the mantissa into the exponent before range checks.
    while (mantissa != 0 && mantissa % 10 == 0) {
        mantissa /= 10;
        ++exp10;
    }
    if (mantissa == 0) return Decimal{};

    if (exp10 > 0) {
        if (exp10 > 38) bad_decimal(text, "value out of range");
        const int128 p = pow10_128(static_cast<std::int32_t>(exp10));
        if (mantissa > kInt128Max / p) bad_decimal(text, "value out of range");
        mantissa *= p;
        exp10 = 0;
    }
    if (-exp10 > kMaxScale) bad_decimal(text, "more than 30 fractional digits");

    try {
        return from_parts(negative ? -mantissa : mantissa, static_cast<std::int32_t>(-exp10));
    } catch (const std::overflow_error&) {
        bad_decimal(text, "value out of range");
    }
}

std::string Decimal::str() const {
    if (scale_ == 0) return std::to_string(units_);
    const bool neg = units_ < 0;
    std::string digits = std::to_string(neg ? -static_cast<std::uint64_t>(units_)
                                            : static_cast<std::uint64_t>(units_));
    if (digits.size() <= static_cast<std::size_t>(scale_))
        digits.insert(0, static_cast<std::size_t>(scale_) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    return neg ? "-" + digits : digits;
}

double Decimal::to_double() const {
    double v = static_cast<double>(units_);
    for (std::int32_t i = 0; i < scale_; ++i) v /= 10.0;
    return v;
}

Decimal Decimal::combine(const Decimal& a, const Decimal& b, bool subtract) {
    const std::int32_t scale = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
    const int128 pa = pow10_128(scale - a.scale_);
    const int128 pb = pow10_128(scale - b.scale_);
    if (abs128(a.units_) > kInt128Max / pa || abs128(b.units_) > kInt128Max / pb)
        throw std::overflow_error("decimal overflow in addition");
    const int128 ua = int128{a.units_} * pa;
    const int128 ub = int128{b.units_} * pb;
    return from_parts(subtract ? ua - ub : ua + ub, scale);
}

Decimal Decimal::operator+(const Decimal& other) const { return combine(*this, other, false); }
Decimal Decimal::operator-(const Decimal& other) const { return combine(*this, other, true); }

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
    if (units_ == 0 || other.units_ == 0 || (units_ < 0) != (other.units_ < 0)) {
        const int sa = units_ < 0 ? -1 : units_ > 0 ? 1 : 0;
        const int sb = other.units_ < 0 ? -1 : other.units_ > 0 ? 1 : 0;
        return sa <=> sb;
    }
    const bool neg = units_ < 0;

    // Same sign, both nonzero. Compare the position of the leading digit first
    // so that mantissa alignment below never shifts by more than 18 places.
    auto digits10 = [](std::int64_t u) {
        std::uint64_t m = u < 0 ? -static_cast<std::uint64_t>(u) : static_cast<std::uint64_t>(u);
        std::int32_t d = 0;
        while (m != 0) {
            m /= 10;
            ++d;
        }
        return d;
    };
    const std::int32_t mag_a = digits10(units_) - scale_;
    const std::int32_t mag_b = digits10(other.units_) - other.scale_;
    if (mag_a != mag_b) return neg ? (mag_b <=> mag_a) : (mag_a <=> mag_b);

    const std::int32_t scale = scale_ > other.scale_ ? scale_ : other.scale_;
    const int128 ua = int128{units_} * pow10_128(scale - scale_);
    const int128 ub = int128{other.units_} * pow10_128(scale - other.scale_);
    if (ua == ub) return std::strong_ordering::equal;
    return ua < ub ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace desdiag
