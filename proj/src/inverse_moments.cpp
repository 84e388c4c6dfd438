#include "bcinv/inverse_moments.hpp"
#include "bcinv/error.hpp"

#include <algorithm>

namespace bcinv {

MomentSequence::MomentSequence(Vec s, Vec err) : values(std::move(s)), errors(std::move(err))
{
    if (values.empty()) throw Error(ErrorCode::InvalidInput, "moment sequence is empty");
    if (!errors.empty() && errors.size() != values.size())
        throw Error(ErrorCode::InvalidInput, "moment error estimates do not match the moments");
}

JacobiSystem jacobi_from_moments(const MomentSequence& m, const MomentOptions& opt)
{
    const Vec& s = m.values;
    const std::size_t J = s.size() - 1;
    const std::size_t nmax = (J + 1) / 2;
    if (nmax == 0) throw Error(ErrorCode::InvalidInput, "need at least s_0 and s_1");
    if (opt.n_target && (*opt.n_target == 0 || *opt.n_target > nmax))
        throw Error(ErrorCode::InvalidInput, "target size needs moments up to s_{2N-1}");
    if (!(s[0] > 0)) throw Error(ErrorCode::IndefiniteHankel, "s_0 must be positive");
    const std::size_t want = opt.n_target ? *opt.n_target : nmax;

    // sigma_{k}(l) = L(pi_k x^l); Chebyshev's algorithm as in Gautschi.
    std::size_t L = 2 * want; // uses s_0..s_{2 want - 1}
    Vec alpha, beta;
    Vec sig_prev(L, Real(0)), sig(s.begin(), s.begin() + L);
    alpha.push_back(s[1] / s[0]);
    beta.push_back(s[0]);
    Real scale = std::max(Real(1), Real(alpha[0] * alpha[0]));
    for (std::size_t k = 1; k < want; ++k) {
        Vec sig_next(L, Real(0));
        for (std::size_t l = k; l + k < L; ++l)
            sig_next[l] = sig[l + 1] - alpha[k - 1] * sig[l] - beta[k - 1] * sig_prev[l];
        Real bk = sig_next[k] / sig[k - 1];
        if (bk < -opt.tol * scale)
            throw Error(ErrorCode::IndefiniteHankel, "Hankel matrix is indefinite at order " + std::to_string(k));
        if (bk <= opt.tol * scale) {
            if (opt.n_target)
                throw Error(ErrorCode::SizeExhausted, "measure supported on " + std::to_string(k) + " points");
            break;
        }
        Real ak = sig_next[k + 1] / sig_next[k] - sig[k] / sig[k - 1];
        alpha.push_back(ak);
        beta.push_back(bk);
        scale = std::max({scale, Real(ak * ak), bk});
        sig_prev = std::move(sig);
        sig = std::move(sig_next);
    }
    Vec a, b(alpha);
    for (std::size_t k = 1; k < beta.size(); ++k) a.push_back(sqrt(beta[k]));
    return JacobiSystem(a, b);
}

MomentSequence estimate_derivatives_at_zero(const SampledSignal& r, std::size_t count)
{
    if (count == 0) throw Error(ErrorCode::InvalidInput, "count must be positive");
    const Vec& v = r.values;
    const long last = static_cast<long>(v.size()) - 1;
    auto at = [&](long m) { return m < 0 ? -v[static_cast<std::size_t>(-m)] : v[static_cast<std::size_t>(m)]; };
    const Real h = r.grid.step();
    Vec vals(count), errs(count);
    for (std::size_t j = 0; j < count; ++j) {
        const long p = static_cast<long>(2 * j + 1);
        // Central difference of order p with an even number s of grid steps:
        // sum_i (-1)^i C(p,i) f((p - 2i) s/2 h) / (s h)^p, error series in (s h)^2.
        auto central = [&](long s) {
            Real acc = 0, binom = 1;
            for (long i = 0; i <= p; ++i) {
                acc += (i % 2 == 0 ? binom : -binom) * at((p - 2 * i) * (s / 2));
                binom = binom * Real(p - i) / Real(i + 1);
            }
            Real H = Real(s) * h, Hp = 1;
            for (long i = 0; i < p; ++i) Hp *= H;
            return acc / Hp;
        };
        long s0 = 2 * std::max(1L, static_cast<long>(to_double(Real(0.005) / h)));
        int levels = 5;
        while (levels > 1 && p * (s0 << (levels - 1)) / 2 > last) --levels;
        while (p * s0 / 2 > last && s0 > 2) s0 -= 2;
        if (p * s0 / 2 > last) throw Error(ErrorCode::InsufficientHorizon, "signal too short for derivative order");
        Vec d(levels);
        for (int m = 0; m < levels; ++m) d[m] = central(s0 << m);
        Real prev = d[0];
        Real f = 4;
        for (int c = 1; c < levels; ++c, f *= 4) {
            prev = d[0];
            for (int m = 0; m + c < levels; ++m) d[m] = d[m] + (d[m] - d[m + 1]) / (f - 1);
        }
        vals[j] = d[0];
        errs[j] = levels > 1 ? Real(abs(d[0] - prev)) : Real(abs(d[0]));
    }
    return MomentSequence(vals, errs);
}

MomentsRoundtripReport moments_roundtrip(const JacobiSystem& sys)
{
    auto [sd, basis] = eigen_jacobi(sys);
    const std::size_t N = sys.n();
    MomentsRoundtripReport rep;
    rep.moments = moments_from_spectral(sd, 2 * N - 1);
    MomentOptions opt;
    opt.n_target = N;
    rep.recovered = jacobi_from_moments(MomentSequence(rep.moments), opt);
    auto upd = [&](const Real& x, const Real& y) {
        Real e = abs(x - y);
        rep.max_abs_error = std::max(rep.max_abs_error, e);
        rep.max_rel_error = std::max(rep.max_rel_error, y == 0 ? e : Real(e / abs(y)));
    };
    for (std::size_t i = 0; i < N; ++i) upd(rep.recovered.diag[i], sys.diag[i]);
    for (std::size_t i = 0; i + 1 < N; ++i) upd(rep.recovered.offdiag[i], sys.offdiag[i]);
    if (N >= 2) {
        Vec pert = rep.moments;
        const Real eps = Real(1e-20);
        pert.back() += eps;
        try {
            JacobiSystem p = jacobi_from_moments(MomentSequence(pert), opt);
            rep.amplification = abs(p.offdiag[N - 2] - rep.recovered.offdiag[N - 2]) / eps;
            Real db = abs(p.diag[N - 1] - rep.recovered.diag[N - 1]) / eps;
            rep.amplification = std::max(rep.amplification, db);
        } catch (const Error&) {
            rep.amplification = -1;
        }
    }
    return rep;
}

} // namespace bcinv
