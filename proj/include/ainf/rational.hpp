#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ainf {

// Exact scalar: arbitrary-precision rational, always canonical (reduced, positive
// denominator).
using Scalar = boost::multiprecision::cpp_rational;

// Accepts "p", "-p", "p/q" with optional sign on p; q > 0 after reduction.
Scalar parse_scalar(const std::string& text);

// Inverse of parse_scalar: "p" when the denominator is 1, else "p/q".
std::string format_scalar(const Scalar& x);

inline bool is_zero(const Scalar& x) { return x.is_zero(); }

} // namespace ainf
