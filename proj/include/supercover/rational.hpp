#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace supercover {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders as "p" or "p/q" with q > 0.
std::string rational_to_string(const Rational& r);

/// Accepts "p" or "p/q" with optional leading '-'; throws std::invalid_argument otherwise.
Rational rational_from_string(const std::string& s);

} // namespace supercover
