#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace horocp {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational parse_rational(const std::string& text);

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector to_rational(const std::vector<std::int64_t>& v);

/// Reduced row echelon form over Q. Returns the pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Unique solution of a square system, or nullopt-like empty vector when singular.
RationalVector solve_square(RationalMatrix a, RationalVector b);

/// Basis of the right null space {x : m x = 0}.
RationalMatrix null_space(RationalMatrix m, std::size_t cols);

/// Scales a rational vector to the primitive integer vector with the same
/// direction (first nonzero entry positive).
std::vector<std::int64_t> primitive_integer(const RationalVector& v);

}  // namespace horocp
