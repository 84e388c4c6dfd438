#include "bcinv/dynamics.hpp"
#include "bcinv/error.hpp"

namespace bcinv {

TimeGrid::TimeGrid(Real T, std::size_t n) : horizon(T), steps(n)
{
    if (!(T > 0) || !boost::multiprecision::isfinite(T)) throw Error(ErrorCode::InvalidInput, "grid horizon must be positive");
    if (n < 1) throw Error(ErrorCode::InvalidInput, "grid needs at least one step");
}

Vec TimeGrid::points() const
{
    Vec p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = point(i);
    return p;
}

Vec TimeGrid::weights() const
{
    Vec w(size());
    for (std::size_t i = 0; i < size(); ++i) w[i] = weight(i);
    return w;
}

SampledSignal::SampledSignal(TimeGrid g, Vec v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.size()) throw Error(ErrorCode::GridMismatch, "signal length does not match grid");
}

SampledSignal SampledSignal::truncated(std::size_t m) const
{
    if (m > grid.steps || m == 0) throw Error(ErrorCode::InsufficientHorizon, "cannot truncate signal");
    TimeGrid g(grid.point(m), m);
    return SampledSignal(g, Vec(values.begin(), values.begin() + m + 1));
}

SampledSignal sample(const TimeGrid& g, const std::function<Real(const Real&)>& fn)
{
    Vec v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.point(i));
    return SampledSignal(g, std::move(v));
}

Real kernel_S(const Real& t, const Real& lambda)
{
    Real x = lambda * t * t;
    if (abs(x) < Real(1e-8)) {
        // t (1 + x/6 + x^2/120 + x^3/5040 + x^4/362880)
        return t * (1 + x / 6 * (1 + x / 20 * (1 + x / 42 * (1 + x / 72))));
    }
    if (lambda > 0) {
        Real w = sqrt(lambda);
        return sinh(w * t) / w;
    }
    Real w = sqrt(-lambda);
    return sin(w * t) / w;
}

Real kernel_C(const Real& t, const Real& lambda)
{
    Real x = lambda * t * t;
    if (abs(x) < Real(1e-8)) return 1 + x / 2 * (1 + x / 12 * (1 + x / 30 * (1 + x / 56)));
    if (lambda > 0) return cosh(sqrt(lambda) * t);
    return cos(sqrt(-lambda) * t);
}

Trajectory forward_spectral(const SpectralData& sd, const EigenBasis& basis, const SampledSignal& f)
{
    const std::size_t N = sd.n(), n = f.grid.size();
    if (basis.vectors.rows() != N || basis.vectors.cols() != N)
        throw Error(ErrorCode::InvalidInput, "eigenbasis does not match spectral data");
    const Real h = f.grid.step();
    Trajectory tr{f.grid, Matrix(n, N)};
    Vec hk(n);
    for (std::size_t k = 0; k < N; ++k) {
        const Real& lam = sd.lambdas[k];
        // Trapezoid of f(tau) S(t_i - tau) via the addition formula:
        // sum_j' f_j [S(t_i) C(t_j) - C(t_i) S(t_j)].
        Vec Sv(n), Cv(n);
        for (std::size_t i = 0; i < n; ++i) {
            Sv[i] = kernel_S(f.grid.point(i), lam);
            Cv[i] = kernel_C(f.grid.point(i), lam);
        }
        Real sumC = 0, sumS = 0;
        const Real coef = 1 / (sd.scale * sd.rhos[k]);
        for (std::size_t i = 0; i < n; ++i) {
            Real fc = f.values[i] * Cv[i], fs = f.values[i] * Sv[i];
            sumC += fc;
            sumS += fs;
            if (i == 0) {
                hk[i] = 0;
                continue;
            }
            Real fc0 = f.values[0] * Cv[0], fs0 = f.values[0] * Sv[0];
            Real A = h * (sumC - (fc0 + fc) / 2);
            Real B = h * (sumS - (fs0 + fs) / 2);
            hk[i] = coef * (Sv[i] * A - Cv[i] * B);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < N; ++j) tr.states(i, j) += hk[i] * basis.vectors(j, k);
    }
    return tr;
}

namespace {

// u'' = M^{-1}(A u + e_1 g(t)); A tridiagonal.
Trajectory rk4(const Tridiagonal& A, const Vec& mass, const SampledSignal& f, const Real& gain)
{
    const std::size_t N = A.diag.size(), n = f.grid.size();
    const Real h = f.grid.step();
    Trajectory tr{f.grid, Matrix(n, N)};
    Vec u(N, Real(0)), v(N, Real(0));
    auto accel = [&](const Vec& x, const Real& force, Vec& out) {
        for (std::size_t i = 0; i < N; ++i) {
            Real s = A.diag[i] * x[i];
            if (i > 0) s += A.offdiag[i - 1] * x[i - 1];
            if (i + 1 < N) s += A.offdiag[i] * x[i + 1];
            if (i == 0) s += gain * force;
            out[i] = s / mass[i];
        }
    };
    Vec k1u(N), k1v(N), k2u(N), k2v(N), k3u(N), k3v(N), k4u(N), k4v(N), tmp(N);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        Real f0 = f.values[s], f1 = f.values[s + 1], fm = (f0 + f1) / 2;
        k1u = v;
        accel(u, f0, k1v);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = u[i] + h / 2 * k1u[i];
        for (std::size_t i = 0; i < N; ++i) k2u[i] = v[i] + h / 2 * k1v[i];
        accel(tmp, fm, k2v);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = u[i] + h / 2 * k2u[i];
        for (std::size_t i = 0; i < N; ++i) k3u[i] = v[i] + h / 2 * k2v[i];
        accel(tmp, fm, k3v);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = u[i] + h * k3u[i];
        for (std::size_t i = 0; i < N; ++i) k4u[i] = v[i] + h * k3v[i];
        accel(tmp, f1, k4v);
        for (std::size_t i = 0; i < N; ++i) {
            u[i] += h / 6 * (k1u[i] + 2 * k2u[i] + 2 * k3u[i] + k4u[i]);
            v[i] += h / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
        }
        for (std::size_t i = 0; i < N; ++i) tr.states(s + 1, i) = u[i];
    }
    return tr;
}

} // namespace

Trajectory forward_ode_oracle(const JacobiSystem& sys, const SampledSignal& f)
{
    Tridiagonal A{sys.diag, sys.offdiag};
    return rk4(A, Vec(sys.n(), Real(1)), f, Real(1));
}

Trajectory forward_ode_oracle(const StieltjesString& s, const SampledSignal& f)
{
    auto [A, m] = string_to_matrices(s);
    return rk4(A, m, f, 1 / s.lengths[0]);
}

SampledSignal response_function(const SpectralData& sd, const TimeGrid& grid)
{
    Vec r(grid.size(), Real(0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Real t = grid.point(i), s = 0;
        for (std::size_t k = 0; k < sd.n(); ++k) s += kernel_S(t, sd.lambdas[k]) / sd.rhos[k];
        r[i] = s / sd.scale;
    }
    return SampledSignal(grid, std::move(r));
}

namespace {

void check_response_grid(const SampledSignal& r, const SampledSignal& f)
{
    if (r.grid.step() != f.grid.step() && abs(r.grid.step() - f.grid.step()) > Real(1e-30) * f.grid.step())
        throw Error(ErrorCode::GridMismatch, "response and control use different steps");
    if (r.grid.steps < f.grid.steps) throw Error(ErrorCode::GridMismatch, "response grid is shorter than the control grid");
}

} // namespace

SampledSignal apply_response(const SampledSignal& r, const SampledSignal& f)
{
    check_response_grid(r, f);
    const std::size_t n = f.grid.size();
    const Real h = f.grid.step();
    Vec out(n, Real(0));
    for (std::size_t i = 1; i < n; ++i) {
        Real s = 0;
        for (std::size_t j = 0; j <= i; ++j) s += r.values[i - j] * f.values[j];
        s -= (r.values[i] * f.values[0] + r.values[0] * f.values[i]) / 2;
        out[i] = h * s;
    }
    return SampledSignal(f.grid, std::move(out));
}

Real apply_response_at_end(const SampledSignal& r, const SampledSignal& f)
{
    check_response_grid(r, f);
    const std::size_t i = f.grid.steps;
    Real s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += r.values[i - j] * f.values[j];
    s -= (r.values[i] * f.values[0] + r.values[0] * f.values[i]) / 2;
    return f.grid.step() * s;
}

Vec moments_from_spectral(const SpectralData& sd, std::size_t j_max)
{
    if (sd.kind != SystemKind::Jacobi) throw Error(ErrorCode::WrongKind, "moments need Jacobi spectral data");
    Vec s(j_max + 1, Real(0));
    for (std::size_t k = 0; k < sd.n(); ++k) {
        Real p = 1 / sd.rhos[k];
        for (std::size_t j = 0; j <= j_max; ++j) {
            s[j] += p;
            p *= sd.lambdas[k];
        }
    }
    return s;
}

} // namespace bcinv
