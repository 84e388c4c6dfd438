#include "bcinv/bc_ops.hpp"
#include "bcinv/error.hpp"
#include "bcinv/stencil.hpp"

#include <fftw3.h>

#include <algorithm>

namespace bcinv {

namespace {

__float128 q(const Real& x) { return x.backend().value(); }

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftBuffers {
    std::size_t L;
    __float128* real;
    fftwq_complex* spec;
    explicit FftBuffers(std::size_t len) : L(len)
    {
        real = static_cast<__float128*>(fftwq_malloc(sizeof(__float128) * L));
        spec = static_cast<fftwq_complex*>(fftwq_malloc(sizeof(fftwq_complex) * (L / 2 + 1)));
    }
    ~FftBuffers()
    {
        fftwq_free(real);
        fftwq_free(spec);
    }
    FftBuffers(const FftBuffers&) = delete;
    FftBuffers& operator=(const FftBuffers&) = delete;

    void forward()
    {
        fftwq_plan p = fftwq_plan_dft_r2c_1d(static_cast<int>(L), real, spec, FFTW_ESTIMATE);
        fftwq_execute(p);
        fftwq_destroy_plan(p);
    }
    void backward()
    {
        fftwq_plan p = fftwq_plan_dft_c2r_1d(static_cast<int>(L), spec, real, FFTW_ESTIMATE);
        fftwq_execute(p);
        fftwq_destroy_plan(p);
    }
};

bool same_step(const TimeGrid& a, const TimeGrid& b)
{
    Real ha = a.step(), hb = b.step();
    return abs(ha - hb) <= Real(1e-30) * hb;
}

} // namespace

struct KernelMatrix::Spectra {
    std::size_t L = 0;
    std::vector<__float128> hankel; // interleaved re, im
    std::vector<__float128> toeplitz;
};

KernelMatrix KernelMatrix::dense(Matrix k)
{
    if (k.rows() != k.cols()) throw Error(ErrorCode::InvalidInput, "kernel must be square");
    KernelMatrix m;
    m.form_ = Form::Dense;
    m.n_ = k.rows();
    m.dense_ = std::move(k);
    return m;
}

KernelMatrix KernelMatrix::low_rank(Matrix factor, Vec weights)
{
    if (factor.cols() != weights.size()) throw Error(ErrorCode::InvalidInput, "factor/weight mismatch");
    KernelMatrix m;
    m.form_ = Form::LowRank;
    m.n_ = factor.rows();
    m.factor_ = std::move(factor);
    m.fw_ = std::move(weights);
    return m;
}

KernelMatrix KernelMatrix::hankel_toeplitz(Vec g, Real coeff)
{
    if (g.size() % 2 == 0) throw Error(ErrorCode::InvalidInput, "Hankel-Toeplitz generator needs 2n+1 entries");
    KernelMatrix m;
    m.form_ = Form::HankelToeplitz;
    const std::size_t steps = (g.size() - 1) / 2;
    m.n_ = steps + 1;
    m.coeff_ = coeff;

    auto sp = std::make_shared<Spectra>();
    sp->L = next_pow2(3 * steps + 2);
    FftBuffers buf(sp->L);
    auto grab = [&](std::vector<__float128>& dst) {
        dst.resize(2 * (sp->L / 2 + 1));
        for (std::size_t k = 0; k <= sp->L / 2; ++k) {
            dst[2 * k] = buf.spec[k][0];
            dst[2 * k + 1] = buf.spec[k][1];
        }
    };
    std::fill(buf.real, buf.real + sp->L, __float128(0));
    for (std::size_t i = 0; i < g.size(); ++i) buf.real[i] = q(g[i]);
    buf.forward();
    grab(sp->hankel);
    std::fill(buf.real, buf.real + sp->L, __float128(0));
    for (std::size_t d = 0; d < g.size(); ++d) {
        long off = static_cast<long>(d) - static_cast<long>(steps);
        buf.real[d] = q(g[static_cast<std::size_t>(off < 0 ? -off : off)]);
    }
    buf.forward();
    grab(sp->toeplitz);
    m.spectra_ = sp;
    m.g_ = std::move(g);
    return m;
}

Real KernelMatrix::entry(std::size_t i, std::size_t j) const
{
    switch (form_) {
    case Form::Dense: return dense_(i, j);
    case Form::LowRank: {
        Real s = 0;
        for (std::size_t p = 0; p < fw_.size(); ++p) s += factor_(i, p) * fw_[p] * factor_(j, p);
        return s;
    }
    case Form::HankelToeplitz: {
        const std::size_t m = n_ - 1;
        std::size_t d = i > j ? i - j : j - i;
        return coeff_ * (g_[2 * m - i - j] - g_[d]);
    }
    }
    return Real(0);
}

Vec KernelMatrix::column(std::size_t j) const
{
    Vec c(n_);
    if (form_ == Form::LowRank) {
        Vec t(fw_.size());
        for (std::size_t p = 0; p < fw_.size(); ++p) t[p] = fw_[p] * factor_(j, p);
        for (std::size_t i = 0; i < n_; ++i) {
            Real s = 0;
            for (std::size_t p = 0; p < t.size(); ++p) s += factor_(i, p) * t[p];
            c[i] = s;
        }
        return c;
    }
    for (std::size_t i = 0; i < n_; ++i) c[i] = entry(i, j);
    return c;
}

Vec KernelMatrix::diagonal() const
{
    Vec d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = entry(i, i);
    return d;
}

Vec KernelMatrix::apply(const Vec& x) const
{
    if (x.size() != n_) throw Error(ErrorCode::GridMismatch, "kernel apply: size mismatch");
    Vec y(n_, Real(0));
    switch (form_) {
    case Form::Dense: return dense_ * x;
    case Form::LowRank: {
        Vec t(fw_.size(), Real(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t p = 0; p < t.size(); ++p) t[p] += factor_(i, p) * x[i];
        for (std::size_t p = 0; p < t.size(); ++p) t[p] *= fw_[p];
        for (std::size_t i = 0; i < n_; ++i) {
            Real s = 0;
            for (std::size_t p = 0; p < t.size(); ++p) s += factor_(i, p) * t[p];
            y[i] = s;
        }
        return y;
    }
    case Form::HankelToeplitz: {
        const std::size_t m = n_ - 1, L = spectra_->L;
        FftBuffers buf(L);
        std::fill(buf.real, buf.real + L, __float128(0));
        for (std::size_t i = 0; i < n_; ++i) buf.real[i] = q(x[i]);
        buf.forward();
        std::vector<__float128> X(2 * (L / 2 + 1));
        for (std::size_t k = 0; k <= L / 2; ++k) {
            X[2 * k] = buf.spec[k][0];
            X[2 * k + 1] = buf.spec[k][1];
        }
        auto convolve = [&](const std::vector<__float128>& H, Vec& out) {
            for (std::size_t k = 0; k <= L / 2; ++k) {
                __float128 a = X[2 * k], b = X[2 * k + 1], c = H[2 * k], d = H[2 * k + 1];
                buf.spec[k][0] = a * c - b * d;
                buf.spec[k][1] = a * d + b * c;
            }
            buf.backward();
            out.assign(L, Real(0));
            for (std::size_t i = 0; i < L; ++i) out[i] = Real(buf.real[i]) / Real(L);
        };
        Vec h1, h2;
        convolve(spectra_->hankel, h1);
        convolve(spectra_->toeplitz, h2);
        for (std::size_t i = 0; i < n_; ++i) y[i] = coeff_ * (h1[2 * m - i] - h2[i + m]);
        return y;
    }
    }
    return y;
}

Matrix KernelMatrix::to_dense() const
{
    Matrix k(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j <= i; ++j) k(i, j) = k(j, i) = entry(i, j);
    return k;
}

Real inner(const TimeGrid& g, const Vec& x, const Vec& y)
{
    Real s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * x[i] * y[i];
    return s;
}

Vec ConnectingOperator::apply(const Vec& f) const
{
    if (f.size() != grid.size()) throw Error(ErrorCode::GridMismatch, "control length does not match operator grid");
    Vec wf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) wf[i] = grid.weight(i) * f[i];
    return kernel.apply(wf);
}

Vec ConnectingOperator::apply_second(const Vec& f) const
{
    if (!second) throw Error(ErrorCode::InvalidInput, "operator carries no second-derivative kernel");
    if (f.size() != grid.size()) throw Error(ErrorCode::GridMismatch, "control length does not match operator grid");
    Vec wf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) wf[i] = grid.weight(i) * f[i];
    return second->apply(wf);
}

Real ConnectingOperator::form(const Vec& f, const Vec& g) const { return inner(grid, apply(f), g); }

namespace {

// r restricted to [0, 2T] (plus a few samples beyond, when present, so the
// stencils stay centred), then integrated / differentiated.
std::pair<Vec, Vec> dynamic_generators(const SampledSignal& r, const TimeGrid& grid)
{
    if (!same_step(r.grid, grid)) throw Error(ErrorCode::GridMismatch, "response step differs from the control grid step");
    const std::size_t need = 2 * grid.steps + 1;
    if (r.values.size() < need)
        throw Error(ErrorCode::InsufficientHorizon, "response must cover [0, 2T]; it covers [0, " +
                                                        format_real(r.grid.horizon) + "] for T = " +
                                                        format_real(grid.horizon));
    std::size_t take = std::min(r.values.size(), need + kStencilPoints);
    Vec rr(r.values.begin(), r.values.begin() + take);
    const Real h = grid.step();
    Vec R = cumulative_integral_odd(rr, h);
    Vec rp = derivative_odd(rr, h);
    R.resize(need);
    rp.resize(need);
    return {R, rp};
}

} // namespace

ConnectingOperator connecting_dynamic(const SampledSignal& r, const Real& scale, const TimeGrid& grid, SystemKind kind)
{
    if (!(scale > 0)) throw Error(ErrorCode::InvalidInput, "scale must be positive");
    auto [R, rp] = dynamic_generators(r, grid);
    const Real kappa = 1 / (2 * scale);
    ConnectingOperator C;
    C.grid = grid;
    C.kind = kind;
    C.scale = scale;
    C.provenance = Provenance::Dynamic;
    C.kernel = KernelMatrix::hankel_toeplitz(std::move(R), kappa);
    C.second = KernelMatrix::hankel_toeplitz(std::move(rp), kappa);
    return C;
}

ConnectingOperator connecting_dynamic(const SampledSignal& r, const Real& scale, SystemKind kind)
{
    if (r.grid.steps % 2 != 0)
        throw Error(ErrorCode::InsufficientHorizon, "response grid must have an even number of steps to split [0, 2T]");
    TimeGrid g(r.grid.horizon / 2, r.grid.steps / 2);
    return connecting_dynamic(r, scale, g, kind);
}

ConnectingOperator connecting_spectral(const SpectralData& sd, const TimeGrid& grid)
{
    const std::size_t N = sd.n(), n = grid.size();
    Matrix F(n, N);
    Vec w(N), w2(N);
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < n; ++i) F(i, k) = kernel_S(grid.point(grid.steps - i), sd.lambdas[k]);
        w[k] = 1 / (sd.rhos[k] * sd.scale * sd.scale);
        w2[k] = sd.lambdas[k] * w[k];
    }
    ConnectingOperator C;
    C.grid = grid;
    C.kind = sd.kind;
    C.scale = sd.scale;
    C.provenance = Provenance::Spectral;
    C.kernel = KernelMatrix::low_rank(F, w);
    C.second = KernelMatrix::low_rank(F, w2);
    return C;
}

Vec RangeSubspace::coords(const TimeGrid& g, const Vec& f) const
{
    Vec a(rank, Real(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        Real wf = g.weight(i) * f[i];
        for (std::size_t k = 0; k < rank; ++k) a[k] += basis(i, k) * wf;
    }
    return a;
}

Vec RangeSubspace::from_coords(const Vec& alpha) const { return basis * alpha; }

namespace {

// Two passes of modified Gram-Schmidt; columns of `a` become orthonormal,
// returns R.
Matrix mgs_qr(Matrix& a)
{
    const std::size_t m = a.rows(), p = a.cols();
    Matrix R(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                Real s = 0;
                for (std::size_t i = 0; i < m; ++i) s += a(i, k) * a(i, j);
                for (std::size_t i = 0; i < m; ++i) a(i, j) -= s * a(i, k);
                R(k, j) += s;
            }
        Real nrm = 0;
        for (std::size_t i = 0; i < m; ++i) nrm += a(i, j) * a(i, j);
        nrm = sqrt(nrm);
        R(j, j) = nrm;
        if (nrm > 0)
            for (std::size_t i = 0; i < m; ++i) a(i, j) /= nrm;
    }
    return R;
}

RangeSubspace finish_range(const TimeGrid& grid, const Vec& sqw, Matrix U, Vec sigma, const Real& rank_tol)
{
    RangeSubspace sub;
    sub.resolved_values = sigma;
    const Real s1 = sigma.empty() ? Real(0) : sigma[0];
    if (!(s1 > 0)) throw Error(ErrorCode::ZeroOperator, "connecting operator vanishes");
    std::size_t keep = 0;
    while (keep < sigma.size() && sigma[keep] >= rank_tol * s1) ++keep;
    sub.rank = keep;
    sub.singular_values.assign(sigma.begin(), sigma.begin() + keep);
    sub.basis = Matrix(grid.size(), keep);
    for (std::size_t k = 0; k < keep; ++k) {
        // Fix the sign so that q(0) >= 0, for reproducible output.
        Real sgn = U(0, k) < 0 ? Real(-1) : Real(1);
        for (std::size_t i = 0; i < grid.size(); ++i) sub.basis(i, k) = sgn * U(i, k) / sqw[i];
    }
    return sub;
}

RangeSubspace range_from_factor(const TimeGrid& grid, const Vec& sqw, Matrix L, const Real& rank_tol)
{
    Matrix R = mgs_qr(L);
    Svd svd = jacobi_svd(R);
    const std::size_t p = R.rows();
    Matrix U = L * svd.u;
    Vec sigma(p);
    for (std::size_t k = 0; k < p; ++k) sigma[k] = svd.s[k] * svd.s[k];
    return finish_range(grid, sqw, std::move(U), std::move(sigma), rank_tol);
}

} // namespace

RangeSubspace effective_range(const ConnectingOperator& C, const Real& rank_tol, const RangeOptions& opt)
{
    if (!(rank_tol > 0) || !(rank_tol < 1)) throw Error(ErrorCode::InvalidInput, "rank_tol must lie in (0, 1)");
    const TimeGrid& grid = C.grid;
    const std::size_t n = grid.size();
    if (C.kernel.size() != n) throw Error(ErrorCode::GridMismatch, "kernel size does not match grid");
    Vec sqw(n);
    for (std::size_t i = 0; i < n; ++i) sqw[i] = sqrt(grid.weight(i));

    const KernelMatrix& K = C.kernel;
    if (K.form() == KernelMatrix::Form::LowRank &&
        std::all_of(K.factor_weights().begin(), K.factor_weights().end(), [](const Real& w) { return w > 0; })) {
        const std::size_t p = K.factor_weights().size();
        Matrix L(n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < p; ++k) L(i, k) = sqw[i] * K.factor()(i, k) * sqrt(K.factor_weights()[k]);
        return range_from_factor(grid, sqw, std::move(L), rank_tol);
    }

    if (K.form() == KernelMatrix::Form::Dense && n <= opt.dense_eig_limit) {
        Matrix B(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) B(i, j) = B(j, i) = sqw[i] * (K.entry(i, j) + K.entry(j, i)) / 2 * sqw[j];
        SymEig e = symmetric_eigen(B);
        Matrix U(n, n);
        Vec sigma(n);
        for (std::size_t k = 0; k < n; ++k) {
            sigma[k] = e.values[n - 1 - k];
            for (std::size_t i = 0; i < n; ++i) U(i, k) = e.vectors(i, n - 1 - k);
        }
        Real s1 = sigma[0];
        std::size_t pos = 0;
        while (pos < n && sigma[pos] > 0) ++pos;
        Vec positive(sigma.begin(), sigma.begin() + pos);
        RangeSubspace sub = finish_range(grid, sqw, std::move(U), positive, rank_tol);
        sub.psd_defect = std::min(Real(0), e.values[0] / s1);
        return sub;
    }

    // Pivoted Cholesky on the weighted kernel, entries generated on demand.
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = sqw[i] * sqw[i] * K.entry(i, i);
    Real d0 = *std::max_element(d.begin(), d.end());
    if (!(d0 > 0)) throw Error(ErrorCode::ZeroOperator, "connecting operator vanishes");
    const Real stop = rank_tol * Real(1e-4) * d0;
    std::vector<Vec> cols;
    std::vector<std::size_t> pivots;
    while (cols.size() < opt.max_rank) {
        std::size_t piv = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
        if (!(d[piv] > stop)) break;
        Vec c = K.column(piv);
        for (std::size_t i = 0; i < n; ++i) c[i] *= sqw[i] * sqw[piv];
        for (const auto& prev : cols) {
            Real f = prev[piv];
            for (std::size_t i = 0; i < n; ++i) c[i] -= f * prev[i];
        }
        Real root = sqrt(d[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] /= root;
            d[i] -= c[i] * c[i];
        }
        d[piv] = 0;
        for (auto p : pivots) d[p] = 0;
        pivots.push_back(piv);
        cols.push_back(std::move(c));
    }
    Real dmin = *std::min_element(d.begin(), d.end());
    Matrix L(n, cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) L(i, k) = cols[k][i];
    RangeSubspace sub = range_from_factor(grid, sqw, std::move(L), rank_tol);
    sub.psd_defect = std::min(Real(0), dmin / sub.resolved_values[0]);
    sub.exhausted = cols.size() == opt.max_rank && sub.rank == opt.max_rank;
    return sub;
}

Vec solve_on_range_coords(const ConnectingOperator& C, const RangeSubspace& sub, const Vec& rhs, const Real& range_tol)
{
    const TimeGrid& g = C.grid;
    if (rhs.size() != g.size()) throw Error(ErrorCode::GridMismatch, "rhs length does not match operator grid");
    Vec beta = sub.coords(g, rhs);
    Real nrm = sqrt(inner(g, rhs, rhs));
    if (nrm == 0) return Vec(sub.rank, Real(0));
    Vec res = rhs;
    Vec proj = sub.from_coords(beta);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= proj[i];
    Real rel = sqrt(inner(g, res, res)) / nrm;
    if (rel > range_tol)
        throw Error(ErrorCode::NotInRange, "component outside the range is " + format_real(rel) + " of the norm");
    for (std::size_t k = 0; k < sub.rank; ++k) beta[k] /= sub.singular_values[k];
    return beta;
}

SampledSignal solve_on_range(const ConnectingOperator& C, const RangeSubspace& sub, const SampledSignal& rhs,
                             const Real& range_tol)
{
    if (rhs.grid != C.grid) throw Error(ErrorCode::GridMismatch, "rhs grid differs from operator grid");
    Vec alpha = solve_on_range_coords(C, sub, rhs.values, range_tol);
    return SampledSignal(C.grid, sub.from_coords(alpha));
}

SampledSignal solve_control(const SpectralData& sd, const EigenBasis& basis, const Vec& target, const TimeGrid& grid,
                            const Real& cond_limit)
{
    const std::size_t N = sd.n(), n = grid.size();
    if (target.size() != N) throw Error(ErrorCode::InvalidInput, "target size must equal N");
    const Matrix& phi = basis.vectors;
    // Masses from completeness: sum_k phi_k phi_k^T / rho_k = M^{-1}.
    Vec mass(N, Real(1));
    if (sd.kind == SystemKind::String)
        for (std::size_t j = 0; j < N; ++j) {
            Real s = 0;
            for (std::size_t k = 0; k < N; ++k) s += phi(j, k) * phi(j, k) / sd.rhos[k];
            mass[j] = 1 / s;
        }
    // u(T) = sum_k h_k phi_k,  h_k = (1/(scale rho_k)) int f S_k(T - .)
    Vec moments(N);
    for (std::size_t k = 0; k < N; ++k) {
        Real c = 0;
        for (std::size_t j = 0; j < N; ++j) c += mass[j] * phi(j, k) * target[j];
        moments[k] = sd.scale * c; // c / rho_k * scale * rho_k
    }
    Matrix S(n, N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t i = 0; i < n; ++i) S(i, k) = kernel_S(grid.point(grid.steps - i), sd.lambdas[k]);
    Matrix G(N, N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
            Real s = 0;
            for (std::size_t i = 0; i < n; ++i) s += grid.weight(i) * S(i, k) * S(i, l);
            G(k, l) = G(l, k) = s;
        }
    SymEig e = symmetric_eigen_jacobi(G);
    if (!(e.values.front() > 0) || e.values.back() / e.values.front() > cond_limit)
        throw Error(ErrorCode::IllConditionedGram, "Gram condition number " +
                                                       format_real(e.values.back() / e.values.front()));
    // beta = G^{-1} moments via the eigendecomposition.
    Vec beta(N, Real(0));
    for (std::size_t p = 0; p < N; ++p) {
        Real c = 0;
        for (std::size_t k = 0; k < N; ++k) c += e.vectors(k, p) * moments[k];
        c /= e.values[p];
        for (std::size_t k = 0; k < N; ++k) beta[k] += c * e.vectors(k, p);
    }
    return SampledSignal(grid, S * beta);
}

SampledSignal ct_second_derivative(const SampledSignal& r, const SampledSignal& f, const Real& scale)
{
    auto gens = dynamic_generators(r, f.grid);
    KernelMatrix D = KernelMatrix::hankel_toeplitz(std::move(gens.second), 1 / (2 * scale));
    Vec wf(f.values.size());
    for (std::size_t i = 0; i < wf.size(); ++i) wf[i] = f.grid.weight(i) * f.values[i];
    return SampledSignal(f.grid, D.apply(wf));
}

Vec reversed_response(const SampledSignal& r, const TimeGrid& grid)
{
    if (!same_step(r.grid, grid)) throw Error(ErrorCode::GridMismatch, "response step differs from the control grid step");
    if (r.grid.steps < grid.steps) throw Error(ErrorCode::InsufficientHorizon, "response shorter than the control horizon");
    Vec out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = r.values[grid.steps - i];
    return out;
}

} // namespace bcinv
