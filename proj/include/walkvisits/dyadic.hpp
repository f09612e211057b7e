#ifndef WALKVISITS_DYADIC_HPP
#define WALKVISITS_DYADIC_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "walkvisits/error.hpp"

namespace walkvisits {

// Expression templates off so that `auto` and ?: see plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Exact dyadic rational mantissa / 2^exponent.
///
/// The pair is kept canonical: the mantissa is odd, or the value is zero and
/// stored as (0, 0). Canonical form makes structural equality coincide with
/// numeric equality. Every probability of the lattice walk lives in this
/// class; signed values and negative exponents are allowed so that
/// differences and moments can be formed without leaving the type.
class Dyadic {
public:
    Dyadic() = default;

    Dyadic(BigInt mantissa, std::int64_t exponent)
        : mantissa_(std::move(mantissa)), exponent_(exponent) {
        normalize();
    }

    static Dyadic integer(long long value) { return Dyadic(BigInt(value), 0); }
    static Dyadic one() { return integer(1); }
    /// 1 / 2^exponent
    static Dyadic inverse_pow2(std::int64_t exponent) { return Dyadic(BigInt(1), exponent); }

    const BigInt& mantissa() const noexcept { return mantissa_; }
    std::int64_t exponent() const noexcept { return exponent_; }

    bool is_zero() const noexcept { return mantissa_.is_zero(); }
    int sign() const noexcept { return mantissa_.sign(); }

    bool is_probability() const { return sign() >= 0 && *this <= one(); }

    Dyadic& operator+=(const Dyadic& rhs) {
        if (rhs.is_zero()) {
            return *this;
        }
        if (is_zero()) {
            return *this = rhs;
        }
        if (exponent_ >= rhs.exponent_) {
            mantissa_ += rhs.mantissa_ << static_cast<unsigned>(exponent_ - rhs.exponent_);
        } else {
            mantissa_ <<= static_cast<unsigned>(rhs.exponent_ - exponent_);
            mantissa_ += rhs.mantissa_;
            exponent_ = rhs.exponent_;
        }
        normalize();
        return *this;
    }

    Dyadic& operator-=(const Dyadic& rhs) { return *this += -rhs; }

    Dyadic& operator*=(const Dyadic& rhs) {
        mantissa_ *= rhs.mantissa_;
        exponent_ += rhs.exponent_;
        normalize();
        return *this;
    }

    Dyadic operator-() const {
        Dyadic out = *this;
        out.mantissa_ = -out.mantissa_;
        return out;
    }

    /// Multiplies by 2^-shift (shift may be negative).
    Dyadic scaled_pow2(std::int64_t shift) const {
        if (is_zero()) {
            return *this;
        }
        Dyadic out = *this;
        out.exponent_ += shift;
        return out;
    }

    Dyadic half() const { return scaled_pow2(1); }

    friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
    friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
    friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        const Dyadic d = a - b;
        if (d.sign() < 0) {
            return std::strong_ordering::less;
        }
        if (d.sign() > 0) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    BigRational to_rational() const {
        if (exponent_ >= 0) {
            return BigRational(mantissa_, BigInt(1) << static_cast<unsigned>(exponent_));
        }
        return BigRational(mantissa_ << static_cast<unsigned>(-exponent_));
    }

    /// Correctly rounded (round-to-nearest-even) conversion.
    double to_double() const {
        if (is_zero()) {
            return 0.0;
        }
        BigInt mag = boost::multiprecision::abs(mantissa_);
        const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(mag)) + 1;
        std::int64_t shift = 0;
        if (bits > 64) {
            // Keep the top 63 bits and fold everything below into a sticky bit.
            shift = bits - 63;
            const bool sticky = boost::multiprecision::lsb(mag) < static_cast<unsigned>(shift);
            mag >>= static_cast<unsigned>(shift);
            if (sticky) {
                mag |= 1;
            }
        }
        const double head = static_cast<double>(mag.convert_to<std::uint64_t>());
        const double value = std::ldexp(head, static_cast<int>(clamp_exp(shift - exponent_)));
        return sign() < 0 ? -value : value;
    }

    /// Exact text form "m/2^e" (e.g. "3/2^2", "0/2^0", "-1/2^5").
    std::string str() const {
        return mantissa_.str() + "/2^" + std::to_string(exponent_);
    }

    static Dyadic parse(std::string_view text) {
        const auto slash = text.find("/2^");
        require(slash != std::string_view::npos, "malformed dyadic literal: " + std::string(text));
        BigInt mantissa;
        try {
            mantissa = BigInt(std::string(text.substr(0, slash)));
        } catch (const std::exception&) {
            throw domain_error("malformed dyadic mantissa: " + std::string(text));
        }
        const auto exp_text = text.substr(slash + 3);
        std::int64_t exponent = 0;
        const auto [ptr, ec] =
            std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        require(ec == std::errc{} && ptr == exp_text.data() + exp_text.size(),
                "malformed dyadic exponent: " + std::string(text));
        return Dyadic(std::move(mantissa), exponent);
    }

    friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

private:
    static std::int64_t clamp_exp(std::int64_t e) {
        // ldexp saturates to 0 / inf well inside these bounds.
        return std::clamp<std::int64_t>(e, -100000, 100000);
    }

    void normalize() {
        if (mantissa_.is_zero()) {
            exponent_ = 0;
            return;
        }
        const auto tz = static_cast<std::int64_t>(
            boost::multiprecision::lsb(boost::multiprecision::abs(mantissa_)));
        if (tz > 0) {
            mantissa_ >>= static_cast<unsigned>(tz);
            exponent_ -= tz;
        }
    }

    BigInt mantissa_{0};
    std::int64_t exponent_ = 0;
};

/// Probability-valued dyadic (mantissa >= 0, value <= 1 where produced).
using DyadicProb = Dyadic;

}  // namespace walkvisits

#endif  // WALKVISITS_DYADIC_HPP
