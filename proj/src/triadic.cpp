#include "chacon/triadic.hpp"

#include <utility>

namespace chacon {

BigInt pow3(int k) {
    if (k < 0) throw std::invalid_argument("pow3: negative exponent");
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r *= 3;
    return r;
}

TriadicRational::TriadicRational(BigInt numerator, int exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    if (num_ < 0) throw std::domain_error("TriadicRational must be nonnegative");
    if (exp_ < 0) throw std::invalid_argument("TriadicRational exponent must be nonnegative");
    normalize();
}

void TriadicRational::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && num_ % 3 == 0) {
        num_ /= 3;
        --exp_;
    }
}

TriadicRational TriadicRational::from_int(long long v) {
    return TriadicRational(BigInt(v), 0);
}

TriadicRational TriadicRational::scaled(long long num, int k) {
    return TriadicRational(BigInt(num), k);
}

TriadicRational TriadicRational::operator+(const TriadicRational& o) const {
    int e = std::max(exp_, o.exp_);
    BigInt a = num_ * pow3(e - exp_);
    BigInt b = o.num_ * pow3(e - o.exp_);
    return TriadicRational(a + b, e);
}

TriadicRational TriadicRational::operator-(const TriadicRational& o) const {
    int e = std::max(exp_, o.exp_);
    BigInt a = num_ * pow3(e - exp_);
    BigInt b = o.num_ * pow3(e - o.exp_);
    if (a < b) throw std::domain_error("TriadicRational subtraction below zero");
    return TriadicRational(a - b, e);
}

TriadicRational TriadicRational::operator*(const TriadicRational& o) const {
    return TriadicRational(num_ * o.num_, exp_ + o.exp_);
}

TriadicRational TriadicRational::scaled_by_pow3(int k) const {
    if (k >= 0) return TriadicRational(num_ * pow3(k), exp_);
    return TriadicRational(num_, exp_ - k);
}

BigInt TriadicRational::floor_scaled(int k) const {
    // floor(num * 3^(k - exp)); cpp_int division truncates toward zero,
    // which is floor for nonnegative operands.
    if (k >= exp_) return num_ * pow3(k - exp_);
    return num_ / pow3(exp_ - k);
}

std::strong_ordering TriadicRational::operator<=>(const TriadicRational& o) const {
    int e = std::max(exp_, o.exp_);
    BigInt a = num_ * pow3(e - exp_);
    BigInt b = o.num_ * pow3(e - o.exp_);
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool TriadicRational::operator==(const TriadicRational& o) const {
    // Canonical form makes equality componentwise.
    return exp_ == o.exp_ && num_ == o.num_;
}

double TriadicRational::to_double() const {
    double d = num_.convert_to<double>();
    for (int i = 0; i < exp_; ++i) d /= 3.0;
    return d;
}

std::string TriadicRational::to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/3^" + std::to_string(exp_);
}

std::string TriadicRational::to_fraction_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/" + pow3(exp_).str();
}

TriadicRational TriadicRational::parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("cannot parse triadic rational: '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw bad();

    auto slash = s.find('/');
    std::string num_part = s.substr(0, slash == std::string::npos ? s.size() : slash);
    if (num_part.empty() || num_part.find_first_not_of("0123456789") != std::string::npos)
        throw bad();
    BigInt num(num_part);
    if (slash == std::string::npos) return TriadicRational(num, 0);

    std::string den_part = s.substr(slash + 1);
    if (den_part.rfind("3^", 0) == 0) {
        std::string e = den_part.substr(2);
        if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos) throw bad();
        return TriadicRational(num, std::stoi(e));
    }
    if (den_part.empty() || den_part.find_first_not_of("0123456789") != std::string::npos)
        throw bad();
    BigInt den(den_part);
    int e = 0;
    while (den > 1 && den % 3 == 0) {
        den /= 3;
        ++e;
    }
    if (den != 1) throw std::invalid_argument("denominator is not a power of 3: '" + text + "'");
    return TriadicRational(num, e);
}

} // namespace chacon
