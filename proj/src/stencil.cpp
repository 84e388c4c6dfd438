#include "bcinv/stencil.hpp"
#include "bcinv/error.hpp"
#include "bcinv/linalg.hpp"

#include <map>

namespace bcinv {

Vec moment_weights(const Vec& nodes, const Vec& moments)
{
    const std::size_t K = nodes.size();
    Matrix v(K, K);
    for (std::size_t k = 0; k < K; ++k) {
        Real p = 1;
        for (std::size_t q = 0; q < K; ++q) {
            v(q, k) = p;
            p *= nodes[k];
        }
    }
    return solve_linear(std::move(v), moments);
}

namespace {

Real odd_at(const Vec& r, long m) { return m < 0 ? -r[static_cast<std::size_t>(-m)] : r[static_cast<std::size_t>(m)]; }

// Weights for offsets lo..lo+P-1 relative to the interval start (integration
// over [0,1]) or to the node itself (first derivative).
Vec cached_weights(std::map<long, Vec>& cache, long rel_lo, int P, bool integral)
{
    auto it = cache.find(rel_lo);
    if (it != cache.end()) return it->second;
    Vec nodes(P), mom(P, Real(0));
    for (int k = 0; k < P; ++k) nodes[k] = Real(rel_lo + k);
    if (integral)
        for (int q = 0; q < P; ++q) mom[q] = Real(1) / (q + 1);
    else
        mom[1] = 1;
    Vec w = moment_weights(nodes, mom);
    cache.emplace(rel_lo, w);
    return w;
}

} // namespace

Vec cumulative_integral_odd(const Vec& r, const Real& h, int P)
{
    const long last = static_cast<long>(r.size()) - 1;
    if (last < P) throw Error(ErrorCode::InvalidInput, "signal too short for the integration stencil");
    std::map<long, Vec> cache;
    Vec R(r.size(), Real(0));
    for (long i = 0; i < last; ++i) {
        long lo = i - (P / 2 - 1);
        if (lo + P - 1 > last) lo = last - (P - 1);
        Vec w = cached_weights(cache, lo - i, P, true);
        Real s = 0;
        for (int k = 0; k < P; ++k) s += w[k] * odd_at(r, lo + k);
        R[i + 1] = R[i] + h * s;
    }
    return R;
}

Vec derivative_odd(const Vec& r, const Real& h, int P)
{
    const long last = static_cast<long>(r.size()) - 1;
    if (last < P) throw Error(ErrorCode::InvalidInput, "signal too short for the derivative stencil");
    std::map<long, Vec> cache;
    Vec d(r.size());
    for (long i = 0; i <= last; ++i) {
        long lo = i - P / 2;
        if (lo + P - 1 > last) lo = last - (P - 1);
        Vec w = cached_weights(cache, lo - i, P, false);
        Real s = 0;
        for (int k = 0; k < P; ++k) s += w[k] * odd_at(r, lo + k);
        d[i] = s / h;
    }
    return d;
}

Real one_sided_derivative_end(const Vec& f, const Real& h, int P)
{
    if (static_cast<int>(f.size()) < P) throw Error(ErrorCode::InvalidInput, "signal too short for end derivative");
    Vec nodes(P), mom(P, Real(0));
    for (int k = 0; k < P; ++k) nodes[k] = Real(-k);
    mom[1] = 1;
    Vec w = moment_weights(nodes, mom);
    Real s = 0;
    for (int k = 0; k < P; ++k) s += w[k] * f[f.size() - 1 - k];
    return s / h;
}

Real one_sided_second_derivative_start(const Vec& f, const Real& h, int P)
{
    if (static_cast<int>(f.size()) < P) throw Error(ErrorCode::InvalidInput, "signal too short for start derivative");
    Vec nodes(P), mom(P, Real(0));
    for (int k = 0; k < P; ++k) nodes[k] = Real(k);
    mom[2] = 2;
    Vec w = moment_weights(nodes, mom);
    Real s = 0;
    for (int k = 0; k < P; ++k) s += w[k] * f[k];
    return s / (h * h);
}

} // namespace bcinv
