#pragma once

#include "bcinv/model.hpp"
#include "bcinv/rng.hpp"

#include <cstdint>

namespace bcinv {

struct Interval {
    double lo;
    double hi;
};

// Draw order: off-diagonal first, then diagonal (lengths then masses).
JacobiSystem random_jacobi(SplitMix64& rng, std::size_t n, Interval a = {0.5, 2.0}, Interval b = {-1.0, 1.0});
StieltjesString random_string(SplitMix64& rng, std::size_t n, Interval l = {0.5, 2.0}, Interval m = {0.5, 3.0});

inline JacobiSystem random_jacobi(std::uint64_t seed, std::size_t n)
{
    SplitMix64 rng(seed);
    return random_jacobi(rng, n);
}
inline StieltjesString random_string(std::uint64_t seed, std::size_t n)
{
    SplitMix64 rng(seed);
    return random_string(rng, n);
}

} // namespace bcinv
