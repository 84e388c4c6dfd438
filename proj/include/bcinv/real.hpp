#pragma once

#include <boost/multiprecision/float128.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bcinv {

// Quad precision is needed: the weakest singular direction of the connecting
// operator at N=5, T=1 sits ~1e-17 below the strongest one.
using Real = boost::multiprecision::float128;
using Vec = std::vector<Real>;

using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::cosh;
using boost::multiprecision::sin;
using boost::multiprecision::sinh;
using boost::multiprecision::sqrt;

inline double to_double(const Real& x) { return static_cast<double>(x); }

Vec to_real(const std::vector<double>& v);
std::vector<double> to_double(const Vec& v);

// 36 significant digits: parse(format(x)) == x bit for bit.
std::string format_real(const Real& x);
Real parse_real(std::string_view s);

Real pi();

} // namespace bcinv
