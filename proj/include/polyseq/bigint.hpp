#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace polyseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& value) { return value.str(); }

} // namespace polyseq
