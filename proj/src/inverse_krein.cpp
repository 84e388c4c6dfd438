#include "bcinv/inverse_krein.hpp"
#include "bcinv/error.hpp"
#include "bcinv/stencil.hpp"

#include <algorithm>

namespace bcinv {

namespace {

// [(D q_j, q_i)] on the range; unsymmetrized.
Matrix project_second(const ConnectingOperator& C, const RangeSubspace& sub)
{
    const std::size_t m = sub.rank;
    Matrix D(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        Vec c = sub.coords(C.grid, C.apply_second(sub.basis.col(j)));
        for (std::size_t i = 0; i < m; ++i) D(i, j) = c[i];
    }
    return D;
}

Matrix symmetrized(const Matrix& a)
{
    Matrix s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = (a(i, j) + a(j, i)) / 2;
    return s;
}

Real sigma_form(const Vec& sigma, const Vec& x, const Vec& y)
{
    Real s = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) s += sigma[i] * x[i] * y[i];
    return s;
}

// |v|^2 in the C^{-1} norm for v = Q gamma.
Real inverse_norm(const Vec& sigma, const Vec& g)
{
    Real s = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) s += g[i] * g[i] / sigma[i];
    return sqrt(s);
}

Real bilinear(const Matrix& D, const Vec& x, const Vec& y) { return dot(x, D * y); }

struct Setup {
    RangeSubspace sub;
    Matrix d_raw, d_sym;
    Vec alpha1;
};

Setup prepare(const ConnectingOperator& C, const SampledSignal& r, const KreinOptions& opt)
{
    if (!C.second) throw Error(ErrorCode::InvalidInput, "connecting operator lacks the second-derivative kernel");
    Setup s;
    s.sub = effective_range(C, opt.rank_tol, opt.range);
    Vec rhs = reversed_response(r, C.grid);
    s.alpha1 = solve_on_range_coords(C, s.sub, rhs, opt.range_tol);
    Real n1 = 0;
    for (const auto& x : s.alpha1) n1 += x * x;
    if (n1 == 0) throw Error(ErrorCode::NotInRange, "first control vanishes (zero data)");
    s.d_raw = project_second(C, s.sub);
    s.d_sym = symmetrized(s.d_raw);
    return s;
}

void fill_state(const ConnectingOperator& C, const RangeSubspace& sub, const std::vector<Vec>& alphas, KreinState& st)
{
    for (const auto& a : alphas) {
        st.controls.emplace_back(C.grid, sub.from_coords(a));
        Vec sa(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) sa[i] = sub.singular_values[i] * a[i];
        st.images.emplace_back(C.grid, sub.from_coords(sa));
    }
}

Vec combine(const Vec& d, const Real& c1, const Vec& sigma, const Vec& a1, const Real& c2, const Vec& a2)
{
    Vec g(d);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= sigma[i] * (c1 * a1[i] + c2 * a2[i]);
    return g;
}

} // namespace

SampledSignal krein_first_control(const ConnectingOperator& C, const RangeSubspace& sub, const SampledSignal& r,
                                  const Real& range_tol)
{
    Vec rhs = reversed_response(r, C.grid);
    Vec alpha = solve_on_range_coords(C, sub, rhs, range_tol);
    Real n = 0;
    for (const auto& x : alpha) n += x * x;
    if (n == 0) throw Error(ErrorCode::NotInRange, "first control vanishes (zero data)");
    return SampledSignal(C.grid, sub.from_coords(alpha));
}

JacobiKreinResult reconstruct_jacobi_krein(const ConnectingOperator& C, const SampledSignal& r, const KreinOptions& opt)
{
    Setup s = prepare(C, r, opt);
    const Vec& sig = s.sub.singular_values;
    const std::size_t cap = s.sub.rank;
    JacobiKreinResult res;
    KreinDiagnostics& dg = res.diagnostics;
    dg.detected_rank = cap;
    dg.singular_values = sig;
    dg.first_form = sigma_form(sig, s.alpha1, s.alpha1);

    std::vector<Vec> alphas{s.alpha1};
    Vec a, b;
    Vec zero(cap, Real(0));
    for (std::size_t k = 1;; ++k) {
        const Vec& ak = alphas.back();
        const Vec& aprev = k > 1 ? alphas[alphas.size() - 2] : zero;
        Real a_prev = k > 1 ? a.back() : Real(0);
        Real bk = bilinear(s.d_sym, ak, ak);
        b.push_back(bk);
        Vec d = s.d_sym * ak;
        Vec gamma = combine(d, a_prev, sig, aprev, bk, ak);
        Real ng = inverse_norm(sig, gamma), nd = inverse_norm(sig, d);
        Real ratio = nd > 0 ? ng / nd : Real(0);
        dg.residual_history.push_back(ratio);
        if (ratio <= opt.term_tol) {
            dg.termination_residual = ratio;
            break;
        }
        if (k == cap) {
            dg.stopped_by_rank = true;
            dg.termination_residual = ratio;
            if (ratio > opt.cap_residual_tol)
                throw Error(ErrorCode::NoTermination, "recursion reached the detected rank " + std::to_string(cap) +
                                                          " with residual " + format_real(ratio));
            break;
        }
        Real ak2 = ng * ng;
        if (!(ak2 > 0)) throw Error(ErrorCode::NonPositiveA, "a_" + std::to_string(k) + "^2 <= 0");
        Real akv = sqrt(ak2);
        Vec next(cap);
        for (std::size_t i = 0; i < cap; ++i) next[i] = gamma[i] / (sig[i] * akv);
        a.push_back(akv);
        alphas.push_back(std::move(next));
    }

    for (std::size_t k = 0; k < a.size(); ++k) {
        Real x = bilinear(s.d_raw, alphas[k + 1], alphas[k]);
        Real y = bilinear(s.d_raw, alphas[k], alphas[k + 1]);
        dg.symmetry_error = std::max(dg.symmetry_error, Real(abs(x - y) / a[k]));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            Real g = sigma_form(sig, alphas[i], alphas[j]) - (i == j ? Real(1) : Real(0));
            dg.orthogonality_error = std::max(dg.orthogonality_error, Real(abs(g)));
        }
    res.system = JacobiSystem(a, b);
    res.state.recovered_a = a;
    res.state.recovered_b = b;
    fill_state(C, s.sub, alphas, res.state);
    return res;
}

JacobiKreinResult reconstruct_jacobi_krein(const SampledSignal& r, const KreinOptions& opt)
{
    ConnectingOperator C = connecting_dynamic(r, Real(1), SystemKind::Jacobi);
    return reconstruct_jacobi_krein(C, r, opt);
}

StringKreinResult reconstruct_string_krein(const ConnectingOperator& C, const SampledSignal& r, const KreinOptions& opt)
{
    Setup s = prepare(C, r, opt);
    const Vec& sig = s.sub.singular_values;
    const std::size_t cap = s.sub.rank;
    StringKreinResult res;
    KreinDiagnostics& dg = res.diagnostics;
    dg.detected_rank = cap;
    dg.singular_values = sig;
    dg.first_form = sigma_form(sig, s.alpha1, s.alpha1);

    Real m1 = 1 / dg.first_form;
    if (!(m1 > 0)) throw Error(ErrorCode::NonPositiveMass, "m_1 <= 0");
    Vec f1 = s.sub.from_coords(s.alpha1);
    Real fnorm2 = inner(C.grid, f1, f1);
    Real fpT = one_sided_derivative_end(f1, C.grid.step(), 5);
    Real l1 = -fnorm2 / fpT;
    if (!(l1 > 0)) throw Error(ErrorCode::NonPositiveLength, "l_1 = " + format_real(l1));

    std::vector<Vec> alphas{s.alpha1};
    Vec masses{m1}, lengths{l1}, a, b;
    Real a_prev = 1 / l1;
    Vec zero(cap, Real(0));
    for (std::size_t k = 1;; ++k) {
        const Vec& ak = alphas.back();
        const Vec& aprev = k > 1 ? alphas[alphas.size() - 2] : zero;
        Real mk = masses.back();
        Real bk = mk * mk * bilinear(s.d_sym, ak, ak);
        b.push_back(bk);
        Vec d = s.d_sym * ak;
        for (auto& x : d) x *= mk;
        Vec gamma = combine(d, k > 1 ? a_prev : Real(0), sig, aprev, bk, ak);
        Real ng = inverse_norm(sig, gamma), nd = inverse_norm(sig, d);
        Real ratio = nd > 0 ? ng / nd : Real(0);
        dg.residual_history.push_back(ratio);
        bool last = ratio <= opt.term_tol;
        if (!last && k == cap) {
            dg.stopped_by_rank = true;
            if (ratio > opt.cap_residual_tol)
                throw Error(ErrorCode::NoTermination, "recursion reached the detected rank " + std::to_string(cap) +
                                                          " with residual " + format_real(ratio));
            last = true;
        }
        Real next_a = -bk - a_prev; // 1/l_{k+1}
        if (!(next_a > 0))
            throw Error(ErrorCode::NonPositiveLength, "l_" + std::to_string(k + 1) + " from 1/l = " + format_real(next_a));
        lengths.push_back(1 / next_a);
        if (last) {
            dg.termination_residual = ratio;
            break;
        }
        Vec next(cap);
        for (std::size_t i = 0; i < cap; ++i) next[i] = gamma[i] / (sig[i] * next_a);
        Real mnext = 1 / sigma_form(sig, next, next);
        if (!(mnext > 0)) throw Error(ErrorCode::NonPositiveMass, "m_" + std::to_string(k + 1) + " <= 0");
        Real alt = mk * mnext * bilinear(s.d_raw, next, ak);
        res.coeff_residual = std::max(res.coeff_residual, Real(abs(alt - next_a) / next_a));
        Real alt2 = mk * mnext * bilinear(s.d_raw, ak, next);
        dg.symmetry_error = std::max(dg.symmetry_error, Real(abs(alt - alt2) / next_a));
        a.push_back(next_a);
        a_prev = next_a;
        masses.push_back(mnext);
        alphas.push_back(std::move(next));
    }
    if (res.coeff_residual > Real(1e-3))
        throw Error(ErrorCode::InconsistentB, "coefficient consistency residual " + format_real(res.coeff_residual));

    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            Real g = sigma_form(sig, alphas[i], alphas[j]) - (i == j ? 1 / masses[i] : Real(0));
            dg.orthogonality_error = std::max(dg.orthogonality_error, Real(abs(g)));
        }
    res.string = StieltjesString(lengths, masses);
    res.state.recovered_a = a;
    res.state.recovered_b = b;
    res.state.recovered_m = masses;
    fill_state(C, s.sub, alphas, res.state);
    return res;
}

StringKreinResult reconstruct_string_krein(const SampledSignal& r, const KreinOptions& opt, const Real& scale)
{
    ConnectingOperator C = connecting_dynamic(r, scale, SystemKind::String);
    return reconstruct_string_krein(C, r, opt);
}

std::vector<SampledSignal> special_controls(const SpectralData& sd, const EigenBasis& basis, const TimeGrid& grid)
{
    const std::size_t N = sd.n();
    Vec mass(N, Real(1));
    if (sd.kind == SystemKind::String)
        for (std::size_t j = 0; j < N; ++j) {
            Real s = 0;
            for (std::size_t k = 0; k < N; ++k) s += basis.vectors(j, k) * basis.vectors(j, k) / sd.rhos[k];
            mass[j] = 1 / s;
        }
    std::vector<SampledSignal> out;
    for (std::size_t k = 0; k < N; ++k) {
        Vec target(N, Real(0));
        target[k] = 1 / mass[k];
        out.push_back(solve_control(sd, basis, target, grid));
    }
    return out;
}

const char* failure_name(Failure f)
{
    switch (f) {
    case Failure::FormMismatch: return "FormMismatch";
    case Failure::NormalizationViolated: return "NormalizationViolated";
    case Failure::RankDeficient: return "RankDeficient";
    case Failure::NotIsomorphic: return "NotIsomorphic";
    case Failure::RoundTripMismatch: return "RoundTripMismatch";
    }
    return "Unknown";
}

bool CharacterizationReport::has(Failure f) const
{
    return std::find(failures.begin(), failures.end(), f) != failures.end();
}

CharacterizationReport characterize_response(const SampledSignal& r, SystemKind kind, const CharacterizeOptions& opt)
{
    CharacterizationReport rep;
    auto fail = [&](Failure f, const std::string& why) {
        if (!rep.has(f)) rep.failures.push_back(f);
        rep.notes.push_back(std::string(failure_name(f)) + ": " + why);
    };
    for (const auto& v : r.values)
        if (!boost::multiprecision::isfinite(v)) {
            fail(Failure::FormMismatch, "non-finite samples");
            return rep;
        }
    const Real rmax = max_abs(r.values);
    const Real h = r.grid.step();
    if (rmax == 0) {
        fail(Failure::RankDeficient, "zero response gives the zero operator");
        return rep;
    }

    // An odd C^2 extension forces r(0) = 0 and r''(0) = 0.
    Real r2 = one_sided_second_derivative_start(r.values, h, 6);
    rep.odd_defect = std::max(Real(abs(r.values[0])), Real(abs(r2))) / rmax;
    if (rep.odd_defect > opt.odd_tol) fail(Failure::FormMismatch, "r(0) or r''(0) does not vanish");

    ConnectingOperator C;
    RangeSubspace sub;
    try {
        C = connecting_dynamic(r, opt.scale, kind);
        sub = effective_range(C, opt.rank_tol, opt.range);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ZeroOperator) {
            fail(Failure::RankDeficient, "connecting operator vanishes");
            return rep;
        }
        throw;
    }
    rep.detected_n = sub.rank;
    rep.singular_values = sub.singular_values;
    rep.psd_defect = sub.psd_defect;
    if (sub.psd_defect < -opt.psd_tol) fail(Failure::FormMismatch, "connecting operator is not positive semidefinite");
    if (sub.exhausted) fail(Failure::RankDeficient, "no finite rank within the pivot cap");

    const std::size_t N = sub.rank;
    Matrix D = symmetrized(project_second(C, sub));
    Matrix P(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            P(i, j) = D(i, j) / sqrt(sub.singular_values[i] * sub.singular_values[j]);
    Vec lam = symmetric_eigen_jacobi(P).values;

    bool distinct = true;
    Real spread = lam.empty() ? Real(0) : Real(abs(lam.back() - lam.front()));
    for (std::size_t k = 1; k < N; ++k)
        if (!(lam[k] - lam[k - 1] > Real(1e-10) * (1 + spread))) distinct = false;
    if (!distinct) fail(Failure::NotIsomorphic, "fitted eigenvalues are not distinct");

    // Linear fit of the weights over the whole sample range.
    const std::size_t m = r.grid.size();
    Matrix A(m, N);
    Vec colnorm(N, Real(0));
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < m; ++i) A(i, k) = kernel_S(r.grid.point(i), lam[k]);
        colnorm[k] = norm2(A.col(k));
        for (std::size_t i = 0; i < m; ++i) A(i, k) /= colnorm[k];
    }
    Vec w(N, Real(0));
    try {
        w = least_squares(A, r.values);
    } catch (const Error&) {
        fail(Failure::NotIsomorphic, "fit design matrix is rank deficient");
    }
    for (std::size_t k = 0; k < N; ++k) w[k] /= colnorm[k];
    Real res = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Real s = 0;
        for (std::size_t k = 0; k < N; ++k) s += w[k] * kernel_S(r.grid.point(i), lam[k]);
        res = std::max(res, Real(abs(s - r.values[i])));
    }
    rep.fit_residual = res / rmax;
    rep.fitted_weights = w;
    if (rep.fit_residual > opt.fit_tol) fail(Failure::FormMismatch, "fit residual " + format_real(rep.fit_residual));
    bool positive = std::all_of(w.begin(), w.end(), [](const Real& x) { return x > 0; });
    if (!positive) fail(Failure::FormMismatch, "negative spectral weight");
    if (kind == SystemKind::String)
        for (const auto& l : lam)
            if (!(l < 0)) {
                fail(Failure::FormMismatch, "string spectrum must be negative");
                break;
            }
    Real total = 0;
    for (const auto& x : w) total += x;
    rep.normalization_sum = total;
    if (kind == SystemKind::Jacobi && abs(total - 1) > opt.normalization_tol)
        fail(Failure::NormalizationViolated, "sum of weights " + format_real(total));

    if (positive && distinct && N > 0) {
        SpectralData sd;
        sd.kind = kind;
        sd.lambdas = lam;
        sd.scale = kind == SystemKind::String ? opt.scale : Real(1);
        for (const auto& x : w) sd.rhos.push_back(1 / (sd.scale * x));
        // Isomorphism on the range: the fitted kernels S(T - ., lambda_k) must stay independent.
        Matrix G(N, N);
        const TimeGrid& g = C.grid;
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t l = 0; l <= k; ++l) {
                Real s = 0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    Real t = g.point(g.steps - i);
                    s += g.weight(i) * kernel_S(t, lam[k]) * kernel_S(t, lam[l]);
                }
                G(k, l) = G(l, k) = s;
            }
        Vec ge = symmetric_eigen_jacobi(G).values;
        if (!(ge.front() > opt.rank_tol * ge.back())) fail(Failure::NotIsomorphic, "fitted kernels are dependent on [0, T]");
        rep.fitted_spectral = sd;
    }
    rep.admissible = rep.failures.empty();
    return rep;
}

} // namespace bcinv
