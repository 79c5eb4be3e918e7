#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tpc {

/// Exact extended rational used for every filtration value.
///
/// Decimal input such as "0.1" is stored without rounding, so shifting a
/// complex by r and then by -r gives back the same complex bit for bit.
/// Arithmetic throws std::overflow_error instead of wrapping.
class Real {
public:
    constexpr Real() = default;
    Real(long long n);  // NOLINT(google-explicit-constructor)
    Real(long long n, long long d);

    static Real infinity();
    static Real neg_infinity();

    /// Accepts "12", "-0.25", "1e-3", "3/8", "inf", "-inf".
    static Real parse(std::string_view text);
    /// Rounds x to a multiple of 10^-decimals.
    static Real from_double(double x, int decimals = 12);

    bool is_finite() const { return inf_ == 0; }
    bool is_pos_inf() const { return inf_ > 0; }
    bool is_neg_inf() const { return inf_ < 0; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const;
    /// Shortest exact text: integer, terminating decimal, or "n/d".
    std::string str() const;
    /// True when str() is a plain terminating decimal.
    bool is_decimal() const;

    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    Real half() const { return *this / Real(2); }
    Real abs() const { return *this < Real() ? -*this : *this; }

    friend bool operator==(const Real& a, const Real& b) {
        return a.inf_ == b.inf_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Real& a, const Real& b);

private:
    static Real make(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::int8_t inf_ = 0;
};

Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

}  // namespace tpc
