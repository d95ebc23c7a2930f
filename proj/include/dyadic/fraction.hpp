#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace dyadic {

using BigInt = boost::multiprecision::cpp_int;

/// Exact non-negative rational in lowest terms.
///
/// Values coming out of `to_fraction` always lie in [0, 1]; intermediate
/// arithmetic (differences of endpoints, sums of plateau lengths) is allowed
/// to leave that range.
class Fraction {
public:
    Fraction() = default;
    Fraction(BigInt num, BigInt den) : value_(make(std::move(num), std::move(den))) {}
    explicit Fraction(const boost::multiprecision::cpp_rational& q) : value_(q) {}

    /// Parses "num/den" (or a bare integer). Decimal points are rejected.
    static Fraction parse(std::string_view text) {
        auto slash = text.find('/');
        auto digits_only = [](std::string_view s) {
            if (s.empty()) return false;
            for (char ch : s)
                if (ch < '0' || ch > '9') return false;
            return true;
        };
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den))
            throw DomainError("not a fraction: '" + std::string(text) + "'");
        BigInt n{std::string(num)};
        BigInt d{std::string(den)};
        if (d == 0) throw DomainError("fraction with zero denominator");
        return Fraction(std::move(n), std::move(d));
    }

    BigInt num() const { return boost::multiprecision::numerator(value_); }
    BigInt den() const { return boost::multiprecision::denominator(value_); }

    double to_double() const { return value_.convert_to<double>(); }
    const boost::multiprecision::cpp_rational& rational() const { return value_; }

    std::string str() const { return num().str() + "/" + den().str(); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) { return Fraction(a.value_ + b.value_); }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return Fraction(a.value_ - b.value_); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.value_ * b.value_); }

    friend bool operator==(const Fraction& a, const Fraction& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static boost::multiprecision::cpp_rational make(BigInt num, BigInt den) {
        if (den == 0) throw DomainError("fraction with zero denominator");
        return boost::multiprecision::cpp_rational(std::move(num), std::move(den));
    }

    boost::multiprecision::cpp_rational value_{0};
};

} // namespace dyadic
