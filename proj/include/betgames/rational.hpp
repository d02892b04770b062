#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace betgames {

using Rational = boost::multiprecision::mpq_rational;

// Always "p/q", integers included ("1/1", "0/1").
std::string to_string(const Rational& r);

// Accepts "p/q", "p" and an optional leading sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// 2^e for any integer e.
Rational pow2(int e);

inline const Rational& zero_q() {
    static const Rational z{0};
    return z;
}

}  // namespace betgames
