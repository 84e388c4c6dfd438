#pragma once

#include "bcinv/real.hpp"

namespace bcinv {

// Weights w with sum_k w_k x_k^q = moments[q], q = 0..K-1.
Vec moment_weights(const Vec& nodes, const Vec& moments);

constexpr int kStencilPoints = 11;

// R(t_i) = integral_0^{t_i} r, local degree-10 interpolation per interval.  The
// left end uses the odd extension r(-t) = -r(t); the right end shifts the
// stencil inward.
Vec cumulative_integral_odd(const Vec& r, const Real& h, int points = kStencilPoints);

// r'(t_i) with the same extension rules.
Vec derivative_odd(const Vec& r, const Real& h, int points = kStencilPoints);

// f'(t_last) from the last `points` samples (5 points: 4th order).
Real one_sided_derivative_end(const Vec& f, const Real& h, int points = 5);

// f''(0) from the first `points` samples.
Real one_sided_second_derivative_start(const Vec& f, const Real& h, int points = 6);

} // namespace bcinv
