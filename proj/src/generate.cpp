#include "bcinv/generate.hpp"

#include "bcinv/error.hpp"

namespace bcinv {

namespace {

void check(Interval r, bool positive, const char* what)
{
    if (!(r.lo <= r.hi) || (positive && r.lo <= 0))
        throw Error(ErrorCode::InvalidInput, std::string("bad range for ") + what);
}

Vec draw(SplitMix64& rng, std::size_t count, Interval r)
{
    Vec v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(Real(rng.uniform(r.lo, r.hi)));
    return v;
}

} // namespace

JacobiSystem random_jacobi(SplitMix64& rng, std::size_t n, Interval a, Interval b)
{
    if (n == 0) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    check(a, true, "a");
    check(b, false, "b");
    Vec off = draw(rng, n - 1, a);
    Vec diag = draw(rng, n, b);
    return JacobiSystem(std::move(off), std::move(diag));
}

StieltjesString random_string(SplitMix64& rng, std::size_t n, Interval l, Interval m)
{
    if (n == 0) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    check(l, true, "l");
    check(m, true, "m");
    Vec len = draw(rng, n + 1, l);
    Vec mass = draw(rng, n, m);
    return StieltjesString(std::move(len), std::move(mass));
}

} // namespace bcinv
