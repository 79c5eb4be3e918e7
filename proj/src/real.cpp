#include "tpc/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tpc {

namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 checked_mul(i128 a, i128 b) { return a * b; }

}  // namespace

Real Real::make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Real: division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("Real: overflow");
    Real r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Real::Real(long long n) : num_(n), den_(1) {}

Real::Real(long long n, long long d) { *this = make(n, d); }

Real Real::infinity() {
    Real r;
    r.inf_ = 1;
    return r;
}

Real Real::neg_infinity() {
    Real r;
    r.inf_ = -1;
    return r;
}

Real Real::parse(std::string_view text) {
    auto fail = [&]() -> Real {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) return fail();
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "Infinity") return infinity();
    if (text == "-inf" || text == "-infinity" || text == "-Infinity") return neg_infinity();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Real a = parse(text.substr(0, slash));
        Real b = parse(text.substr(slash + 1));
        if (!a.is_finite() || !b.is_finite()) return fail();
        return a / b;
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    i128 mantissa = 0;
    int frac_digits = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (in_fraction) return fail();
            in_fraction = true;
            continue;
        }
        if (c < '0' || c > '9') break;
        any_digit = true;
        mantissa = mantissa * 10 + (c - '0');
        if (mantissa > kMax) throw std::overflow_error("Real: literal too long: " + std::string(text));
        if (in_fraction) ++frac_digits;
    }
    if (!any_digit) return fail();
    int exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return fail();
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i == text.size()) return fail();
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') return fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 40) throw std::overflow_error("Real: exponent too large");
        }
        if (eneg) exponent = -exponent;
    }
    int scale = exponent - frac_digits;
    i128 num = negative ? -mantissa : mantissa;
    i128 den = 1;
    for (int k = 0; k < scale; ++k) {
        num *= 10;
        if (num > kMax || num < -kMax) throw std::overflow_error("Real: overflow");
    }
    for (int k = 0; k < -scale; ++k) {
        den *= 10;
        if (den > kMax * 10) throw std::overflow_error("Real: overflow");
    }
    return make(num, den);
}

Real Real::from_double(double x, int decimals) {
    if (std::isinf(x)) return x > 0 ? infinity() : neg_infinity();
    if (std::isnan(x)) throw std::invalid_argument("Real: NaN");
    double scale = std::pow(10.0, decimals);
    double scaled = std::nearbyint(x * scale);
    if (std::fabs(scaled) > 9.0e18) throw std::overflow_error("Real: double out of range");
    i128 den = 1;
    for (int k = 0; k < decimals; ++k) den *= 10;
    return make(static_cast<i128>(static_cast<long long>(scaled)), den);
}

double Real::to_double() const {
    if (inf_ > 0) return std::numeric_limits<double>::infinity();
    if (inf_ < 0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Real::is_decimal() const {
    if (!is_finite()) return false;
    std::int64_t d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

std::string Real::str() const {
    if (inf_ > 0) return "inf";
    if (inf_ < 0) return "-inf";
    if (den_ == 1) return std::to_string(num_);
    if (!is_decimal()) return std::to_string(num_) + "/" + std::to_string(den_);
    int twos = 0, fives = 0;
    std::int64_t d = den_;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    int k = std::max(twos, fives);
    i128 factor = 1;
    for (int i = twos; i < k; ++i) factor *= 2;
    for (int i = fives; i < k; ++i) factor *= 5;
    i128 scaled = static_cast<i128>(num_) * factor;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits;
    while (scaled > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
        scaled /= 10;
    }
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
    return negative ? "-" + out : out;
}

Real Real::operator-() const {
    Real r = *this;
    r.inf_ = static_cast<std::int8_t>(-inf_);
    r.num_ = -num_;
    return r;
}

Real& Real::operator+=(const Real& o) {
    if (!is_finite() || !o.is_finite()) {
        if (!is_finite() && !o.is_finite() && inf_ != o.inf_)
            throw std::domain_error("Real: inf - inf");
        if (is_finite()) *this = o;
        return *this;
    }
    *this = make(checked_mul(num_, o.den_) + checked_mul(o.num_, den_), checked_mul(den_, o.den_));
    return *this;
}

Real& Real::operator-=(const Real& o) { return *this += -o; }

Real& Real::operator*=(const Real& o) {
    if (!is_finite() || !o.is_finite()) {
        int sa = inf_ != 0 ? inf_ : (num_ > 0) - (num_ < 0);
        int sb = o.inf_ != 0 ? o.inf_ : (o.num_ > 0) - (o.num_ < 0);
        if (sa == 0 || sb == 0) throw std::domain_error("Real: 0 * inf");
        *this = sa * sb > 0 ? infinity() : neg_infinity();
        return *this;
    }
    *this = make(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    return *this;
}

Real& Real::operator/=(const Real& o) {
    if (!o.is_finite()) {
        if (!is_finite()) throw std::domain_error("Real: inf / inf");
        *this = Real();
        return *this;
    }
    if (o.num_ == 0) throw std::domain_error("Real: division by zero");
    if (!is_finite()) {
        if (o.num_ < 0) inf_ = static_cast<std::int8_t>(-inf_);
        return *this;
    }
    *this = make(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
    return *this;
}

std::strong_ordering operator<=>(const Real& a, const Real& b) {
    if (a.inf_ != b.inf_) {
        if (a.inf_ == 0) return b.inf_ > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (b.inf_ == 0) return a.inf_ > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        return a.inf_ <=> b.inf_;
    }
    if (a.inf_ != 0) return std::strong_ordering::equal;
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

}  // namespace tpc
