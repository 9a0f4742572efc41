#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace solenoid {

// Exact arithmetic everywhere. Matrix powers grow exponentially with the
// iteration count, so fixed-width integers are not an option.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct SolenoidError : std::runtime_error {
    explicit SolenoidError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an identity that must hold for every valid input fails.
// Signals a bug in this library, not bad user input.
struct InternalInconsistency : SolenoidError {
    explicit InternalInconsistency(const std::string& msg)
        : SolenoidError("internal inconsistency: " + msg) {}
};

inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw InternalInconsistency("non-exact division " + a.str() + " / " + b.str());
    return q;
}

// Floor division, used when reducing entries into [0, d).
inline BigInt floor_div(const BigInt& a, const BigInt& d) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, d, q, r);
    if (r != 0 && ((r < 0) != (d < 0)))
        --q;
    return q;
}

inline BigInt vector_gcd(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, x);
    return boost::multiprecision::abs(g);
}

inline bool is_zero_vector(const std::vector<BigInt>& v) {
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

inline BigInt denominator_lcm(const std::vector<BigRat>& v) {
    BigInt l = 1;
    for (const auto& x : v) {
        BigInt d = boost::multiprecision::denominator(x);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    return l;
}

}  // namespace solenoid
