#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace factlab {

// Arbitrary-precision nonnegative integer used for all exact counts
// (Bell/Fubini numbers, factorization counts, moment sums).
using ExactInt = boost::multiprecision::cpp_int;

// Natural logarithm of a positive ExactInt, accurate to ~2^-62 relative.
// Works far beyond double range (B_5000 and friends).
inline long double log_exact(const ExactInt& v) {
    if (v <= 0)
        throw std::domain_error("log_exact: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits < 63)
        return logl(v.convert_to<unsigned long long>());
    // top 63 bits as the mantissa, remainder as a power of two
    const ExactInt top = v >> (bits - 62);
    const long double ln2 = 0.6931471805599453094172321214581766L;
    return logl(top.convert_to<unsigned long long>()) +
           static_cast<long double>(bits - 62) * ln2;
}

}  // namespace factlab
