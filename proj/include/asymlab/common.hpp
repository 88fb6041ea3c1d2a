#ifndef ASYMLAB_COMMON_HPP
#define ASYMLAB_COMMON_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace asymlab {

// Thrown when a generator or operation receives parameters outside its
// documented range (invalid k, n too small, ...).
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when state-space search exceeds its explored-state cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by asym_ratio when the conjunction of goals is unreachable.
struct UnsolvableTask : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InapplicableAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when exhaustive enumeration would exceed the configured cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the naive GEQ expansion would exceed the clause cap.
struct SizeGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidReduction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational with normalized sign and gcd-reduced terms. Values stay
// tiny (plan lengths), so int64 never overflows here.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0)
            throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline int ceil_log2(long x) {
    int r = 0;
    long p = 1;
    while (p < x) {
        p *= 2;
        ++r;
    }
    return r;
}

} // namespace asymlab

#endif
