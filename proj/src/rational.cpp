#include "betgames/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace betgames {

std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

boost::multiprecision::mpz_int parse_int(std::string_view s) {
    if (!is_integer_literal(s))
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    std::string owned(s);
    if (owned[0] == '+') owned.erase(0, 1);
    return boost::multiprecision::mpz_int(owned);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational pow2(int e) {
    boost::multiprecision::mpz_int p = 1;
    p <<= (e < 0 ? -e : e);
    return e < 0 ? Rational(1, p) : Rational(p);
}

}  // namespace betgames
