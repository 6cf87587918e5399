#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace extdiv {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    return q.str();
}

// "p/q" or "p"; throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s) {
    return Rational(s);
}

}  // namespace extdiv
