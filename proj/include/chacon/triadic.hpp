#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace chacon {

using BigInt = boost::multiprecision::cpp_int;

/// Exact nonnegative position on the half-line whose denominator is a
/// power of 3: value = num / 3^exp.  Canonical form keeps exp = 0 or
/// num not divisible by 3.  Closed under +, - (when the result stays
/// nonnegative), * and under scaling by powers of 3; division by a
/// general value is deliberately not provided.
class TriadicRational {
public:
    TriadicRational() : num_(0), exp_(0) {}
    TriadicRational(BigInt numerator, int exponent);

    static TriadicRational from_int(long long v);
    /// num / 3^k with both given directly.
    static TriadicRational scaled(long long num, int k);

    const BigInt& numerator() const { return num_; }
    int exponent() const { return exp_; }
    bool is_zero() const { return num_ == 0; }

    TriadicRational operator+(const TriadicRational& o) const;
    /// Throws std::domain_error if the result would be negative.
    TriadicRational operator-(const TriadicRational& o) const;
    TriadicRational operator*(const TriadicRational& o) const;
    TriadicRational& operator+=(const TriadicRational& o) { return *this = *this + o; }
    TriadicRational& operator-=(const TriadicRational& o) { return *this = *this - o; }

    /// value * 3^k, k of either sign (k < 0 divides).
    TriadicRational scaled_by_pow3(int k) const;

    /// floor(value * 3^k), exact; k of either sign.
    BigInt floor_scaled(int k) const;

    std::strong_ordering operator<=>(const TriadicRational& o) const;
    bool operator==(const TriadicRational& o) const;

    double to_double() const;

    /// "num" when exp = 0, else "num/3^exp".
    std::string to_string() const;
    /// "num" when exp = 0, else "num/den" with the power of 3 evaluated.
    std::string to_fraction_string() const;
    /// Accepts "num", "num/3^exp" and "num/den" with den a power of 3.
    static TriadicRational parse(const std::string& text);

private:
    void normalize();

    BigInt num_;
    int exp_;
};

BigInt pow3(int k);

} // namespace chacon
