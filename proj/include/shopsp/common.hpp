#ifndef SHOPSP_COMMON_HPP
#define SHOPSP_COMMON_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shopsp {

// Processing times, weights and makespans are nonnegative 64-bit integers.
using Time = std::int64_t;

// Thrown when an input exceeds a configured enumeration/size cap.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an instance admits no s-t path.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Time checked_add(Time a, Time b) {
    Time r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("time addition overflow");
    return r;
}

inline Time checked_mul(Time a, Time b) {
    Time r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("time multiplication overflow");
    return r;
}

// Exact nonnegative rational, used for eps and rho so that threshold
// comparisons never depend on floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
        if (num < 0) throw std::invalid_argument("rational must be nonnegative");
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool positive() const { return num > 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
};

// lhs >= r * rhs, evaluated exactly.
inline bool geq_scaled(Time lhs, const Rational& r, Time rhs) {
    return static_cast<__int128>(lhs) * r.den >= static_cast<__int128>(r.num) * rhs;
}

// lhs <= r * rhs, evaluated exactly.
inline bool leq_scaled(Time lhs, const Rational& r, Time rhs) {
    return static_cast<__int128>(lhs) * r.den <= static_cast<__int128>(r.num) * rhs;
}

// floor(value * num / den) with 128-bit intermediates.
inline Time floor_scale(Time value, std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("floor_scale: nonpositive denominator");
    const __int128 p = static_cast<__int128>(value) * num;
    const __int128 q = p / den;
    if (q > INT64_MAX || q < INT64_MIN) throw std::overflow_error("floor_scale overflow");
    return static_cast<Time>(q);
}

// Parses "3", "3/4", "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t n = std::stoll(text.substr(0, slash));
        const std::int64_t d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text), 1);
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("rational literal too precise: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den = checked_mul(den, 10);
    const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
    const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    return Rational(checked_add(checked_mul(w, den), f), den);
}

}  // namespace shopsp

#endif  // SHOPSP_COMMON_HPP
