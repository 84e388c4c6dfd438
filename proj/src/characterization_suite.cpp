#include "bcinv/characterization_suite.hpp"
#include "bcinv/error.hpp"

#include <chrono>

namespace bcinv {

Real max_relative_error(const Vec& got, const Vec& want)
{
    if (got.size() != want.size()) return Real(std::numeric_limits<double>::infinity());
    Real e = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        Real d = abs(got[i] - want[i]);
        e = std::max(e, want[i] == 0 ? d : Real(d / abs(want[i])));
    }
    return e;
}

Real max_relative_error(const JacobiSystem& got, const JacobiSystem& want)
{
    if (got.n() != want.n()) return Real(std::numeric_limits<double>::infinity());
    return std::max(max_relative_error(got.offdiag, want.offdiag), max_relative_error(got.diag, want.diag));
}

Real max_relative_error(const StieltjesString& got, const StieltjesString& want)
{
    if (got.n() != want.n()) return Real(std::numeric_limits<double>::infinity());
    return std::max(max_relative_error(got.lengths, want.lengths), max_relative_error(got.masses, want.masses));
}

JacobiSystem complete_from_spectral(const SpectralData& sd, std::size_t n)
{
    // weights renormalized to unit mass first
    Real total = 0;
    for (const auto& x : sd.rhos) total += 1 / x;
    SpectralData norm = sd;
    norm.kind = SystemKind::Jacobi;
    for (auto& x : norm.rhos) x *= total;
    MomentOptions mo;
    mo.n_target = n;
    return jacobi_from_moments(MomentSequence(moments_from_spectral(norm, 2 * n - 1)), mo);
}

namespace {

template <class F>
MethodOutcome timed(const std::string& name, const JacobiSystem& truth, F&& run)
{
    MethodOutcome out;
    out.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        run(out);
        if (out.recovered) out.max_rel_error = max_relative_error(*out.recovered, truth);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace

MethodComparison compare_methods(const JacobiSystem& sys, const TimeGrid& grid, const CompareOptions& opt)
{
    MethodComparison mc{sys, grid, {}, {}};
    auto [sd, basis] = eigen_jacobi(sys);
    SampledSignal r = response_function(sd, grid.doubled());
    const std::size_t N = sys.n();

    mc.methods.push_back(timed("krein", sys, [&](MethodOutcome& o) {
        o.recovered = reconstruct_jacobi_krein(r, opt.krein).system;
    }));
    mc.methods.push_back(timed("moments_spectral", sys, [&](MethodOutcome& o) {
        MomentOptions mo;
        mo.n_target = N;
        o.recovered = jacobi_from_moments(MomentSequence(moments_from_spectral(sd, 2 * N - 1)), mo);
    }));
    mc.methods.push_back(timed("moments_derivative", sys, [&](MethodOutcome& o) {
        std::size_t count = std::max(opt.derivative_count, 2 * N);
        MomentSequence ms = estimate_derivatives_at_zero(r, count);
        MomentOptions mo;
        mo.n_target = N;
        MomentSequence use(Vec(ms.values.begin(), ms.values.begin() + 2 * N));
        o.recovered = jacobi_from_moments(use, mo);
    }));
    mc.methods.push_back(timed("variational", sys, [&](MethodOutcome& o) {
        ConnectingOperator C = connecting_dynamic(r, Real(1), grid);
        FlatBasis fb = build_flat_basis(grid, opt.variational_per_mode * N);
        VariationalResult vr = recover_spectrum_variational(C, r, fb, N);
        o.spectral = vr.spectral;
        o.recovered = complete_from_spectral(vr.spectral, N);
    }));
    try {
        mc.characterization = characterize_response(r, SystemKind::Jacobi, opt.characterize);
    } catch (const std::exception& e) {
        mc.characterization.notes.push_back(e.what());
    }
    return mc;
}

CharacterizationReport certify(const SampledSignal& r, SystemKind kind, const Real& tol, const CertifyOptions& opt)
{
    CharacterizationReport rep = characterize_response(r, kind, opt.characterize);
    if (!rep.admissible) return rep;
    try {
        SpectralData sd;
        if (kind == SystemKind::Jacobi) {
            JacobiKreinResult k = reconstruct_jacobi_krein(r, opt.krein);
            sd = eigen_jacobi(k.system).first;
        } else {
            StringKreinResult k = reconstruct_string_krein(r, opt.krein, opt.characterize.scale);
            sd = eigen_string(k.string).first;
        }
        SampledSignal rt = response_function(sd, r.grid);
        Real err = 0;
        for (std::size_t i = 0; i < r.values.size(); ++i) err = std::max(err, Real(abs(rt.values[i] - r.values[i])));
        rep.roundtrip_error = err;
        if (err > tol) {
            rep.failures.push_back(Failure::RoundTripMismatch);
            rep.notes.push_back("RoundTripMismatch: re-synthesis error " + format_real(err));
        }
    } catch (const std::exception& e) {
        rep.failures.push_back(Failure::RoundTripMismatch);
        rep.notes.push_back(std::string("RoundTripMismatch: reconstruction failed: ") + e.what());
    }
    rep.admissible = rep.failures.empty();
    return rep;
}

} // namespace bcinv
