#include "bcinv/inverse_variational.hpp"
#include "bcinv/error.hpp"

#include <algorithm>

namespace bcinv {

FlatBasis build_flat_basis(const TimeGrid& grid, std::size_t count)
{
    if (count < 1) throw Error(ErrorCode::InvalidInput, "flat basis needs at least one function");
    FlatBasis fb;
    fb.grid = grid;
    fb.count = count;
    const Real w = pi() / grid.horizon;
    for (std::size_t m = 1; m <= count; ++m) {
        const Real mm = Real(m);
        Vec f(grid.size()), f2(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            Real x = w * grid.point(i);
            Real s1 = sin(x), s2 = sin(2 * x), c2 = cos(2 * x);
            Real sm = sin(mm * x), cm = cos(mm * x);
            f[i] = s1 * s1 * sm;
            // (sin^2 x)'' = 2 cos 2x, (sin^2 x)' = sin 2x
            f2[i] = w * w * (2 * c2 * sm + 2 * mm * s2 * cm - mm * mm * s1 * s1 * sm);
        }
        f[0] = f[grid.steps] = 0;
        fb.functions.emplace_back(grid, std::move(f));
        fb.second_derivatives.emplace_back(grid, std::move(f2));
    }
    return fb;
}

VariationalResult recover_spectrum_variational(const ConnectingOperator& C, const SampledSignal& r,
                                               const FlatBasis& basis, std::size_t n_target,
                                               const VariationalOptions& opt)
{
    if (basis.grid != C.grid) throw Error(ErrorCode::GridMismatch, "flat basis grid differs from operator grid");
    if (n_target < 1) throw Error(ErrorCode::InvalidInput, "n_target must be positive");
    const std::size_t M = basis.count;
    const TimeGrid& g = C.grid;

    std::vector<Vec> cpsi(M), kpsi(M);
    for (std::size_t n = 0; n < M; ++n) {
        cpsi[n] = C.apply(basis.functions[n].values);
        if (opt.assembly == StiffnessAssembly::SecondDerivativeKernel && C.second)
            kpsi[n] = C.apply_second(basis.functions[n].values);
        else
            kpsi[n] = C.apply(basis.second_derivatives[n].values);
    }
    Matrix K(M, M), G(M, M);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < M; ++n) {
            K(m, n) = inner(g, kpsi[n], basis.functions[m].values);
            G(m, n) = inner(g, cpsi[n], basis.functions[m].values);
        }
    VariationalResult res;
    Real knorm = 0, kasym = 0;
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < M; ++n) {
            knorm = std::max(knorm, Real(abs(K(m, n))));
            kasym = std::max(kasym, Real(abs(K(m, n) - K(n, m))));
        }
    res.stiffness_asymmetry = knorm > 0 ? kasym / knorm : Real(0);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < m; ++n) {
            K(m, n) = K(n, m) = (K(m, n) + K(n, m)) / 2;
            G(m, n) = G(n, m) = (G(m, n) + G(n, m)) / 2;
        }

    // Restrict to the nondegenerate part of G: G = V diag(d) V^T, keep d > tol d_max.
    SymEig ge = symmetric_eigen_jacobi(G);
    const Real dmax = ge.values.back();
    if (!(dmax > 0)) throw Error(ErrorCode::DegenerateGram, "Gram matrix vanishes");
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < M; ++k)
        if (ge.values[k] > opt.gram_tol * dmax) keep.push_back(k);
    res.gram_rank = keep.size();
    if (keep.size() < n_target)
        throw Error(ErrorCode::DegenerateGram, "Gram rank " + std::to_string(keep.size()) + " below target " +
                                                   std::to_string(n_target));
    const std::size_t p = keep.size();
    Matrix Z(M, p); // V_r D^{-1/2}
    for (std::size_t c = 0; c < p; ++c)
        for (std::size_t m = 0; m < M; ++m) Z(m, c) = ge.vectors(m, keep[c]) / sqrt(ge.values[keep[c]]);
    Matrix Kt = Z.transpose() * K * Z;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) Kt(i, j) = Kt(j, i) = (Kt(i, j) + Kt(j, i)) / 2;
    SymEig ke = symmetric_eigen_jacobi(Kt);

    SpectralData sd;
    sd.kind = SystemKind::Jacobi;
    sd.scale = 1;
    for (std::size_t k = 0; k < n_target; ++k) {
        Vec y = ke.vectors.col(k);
        Vec v = Z * y; // (C f, f) = v^T G v = 1
        Vec f(g.size(), Real(0));
        for (std::size_t m = 0; m < M; ++m) axpy(v[m], basis.functions[m].values, f);
        Real kappa = apply_response_at_end(r, SampledSignal(g, f));
        if (kappa < 0) {
            kappa = -kappa;
            for (auto& x : f) x = -x;
            for (auto& x : v) x = -x;
        }
        // Ritz residual |K v - mu G v| / (|K| |v|)
        Vec kv = K * v, gv = G * v;
        Real rr = 0, kn = 0;
        for (std::size_t m = 0; m < M; ++m) rr += (kv[m] - ke.values[k] * gv[m]) * (kv[m] - ke.values[k] * gv[m]);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t n = 0; n < M; ++n) kn = std::max(kn, Real(abs(K(m, n))));
        res.ritz_residuals.push_back(kn > 0 ? sqrt(rr) / (kn * norm2(v)) : Real(0));
        sd.lambdas.push_back(ke.values[k]);
        res.kappas.push_back(kappa);
        sd.rhos.push_back(kappa > 0 ? 1 / (kappa * kappa) : Real(0));
        res.minimizers.emplace_back(g, std::move(f));
    }
    res.spectral = sd;
    return res;
}

} // namespace bcinv
