#include "bcinv/model.hpp"
#include "bcinv/error.hpp"

#include <algorithm>

namespace bcinv {

const char* kind_name(SystemKind k) { return k == SystemKind::Jacobi ? "jacobi" : "string"; }

JacobiSystem::JacobiSystem(Vec a, Vec b) : offdiag(std::move(a)), diag(std::move(b))
{
    if (diag.empty()) throw Error(ErrorCode::InvalidInput, "Jacobi system needs n >= 1");
    if (offdiag.size() + 1 != diag.size())
        throw Error(ErrorCode::InvalidInput, "Jacobi system needs n-1 off-diagonal entries");
    for (const auto& x : offdiag)
        if (!(x > 0)) throw Error(ErrorCode::InvalidInput, "off-diagonal entries must be positive");
    for (const auto& x : diag)
        if (!boost::multiprecision::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite diagonal entry");
}

StieltjesString::StieltjesString(Vec l, Vec m) : lengths(std::move(l)), masses(std::move(m))
{
    if (masses.empty()) throw Error(ErrorCode::InvalidInput, "string needs at least one mass");
    if (lengths.size() != masses.size() + 1)
        throw Error(ErrorCode::InvalidInput, "string needs n+1 lengths for n masses");
    for (const auto& x : lengths)
        if (!(x > 0) || !boost::multiprecision::isfinite(x)) throw Error(ErrorCode::InvalidInput, "lengths must be positive");
    for (const auto& x : masses)
        if (!(x > 0) || !boost::multiprecision::isfinite(x)) throw Error(ErrorCode::InvalidInput, "masses must be positive");
    total_length = 0;
    for (const auto& x : lengths) total_length += x;
}

void SpectralData::validate() const
{
    if (lambdas.empty() || lambdas.size() != rhos.size())
        throw Error(ErrorCode::InvalidInput, "spectral data: size mismatch");
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        if (!(rhos[k] > 0)) throw Error(ErrorCode::InvalidInput, "spectral data: rho must be positive");
        if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
            throw Error(ErrorCode::InvalidInput, "spectral data: lambdas must be strictly increasing");
    }
    if (!(scale > 0)) throw Error(ErrorCode::InvalidInput, "spectral data: scale must be positive");
    if (kind == SystemKind::Jacobi) {
        Real s = 0;
        for (const auto& r : rhos) s += 1 / r;
        if (abs(s - 1) > Real(1e-10)) throw Error(ErrorCode::InvalidInput, "spectral data: sum 1/rho != 1");
    } else {
        for (const auto& l : lambdas)
            if (!(l < 0)) throw Error(ErrorCode::InvalidInput, "string spectral data: lambdas must be negative");
    }
}

Vec eval_poly_jacobi(const JacobiSystem& sys, const Real& lambda)
{
    const std::size_t n = sys.n();
    Vec phi(n + 1);
    phi[0] = 1;
    Real prev = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Real a_prev = k == 0 ? Real(1) : sys.offdiag[k - 1];
        Real a_k = k + 1 < n ? sys.offdiag[k] : Real(1);
        Real next = ((lambda - sys.diag[k]) * phi[k] - (k == 0 ? Real(0) : a_prev * prev)) / a_k;
        prev = phi[k];
        phi[k + 1] = next;
    }
    return phi;
}

// phi_0 = 0, phi_1 = 1, a_k phi_{k+1} = lambda m_k phi_k - b_k phi_k - a_{k-1} phi_{k-1};
// a_N := 1 for the trailing entry.
Vec eval_poly_string(const StieltjesString& s, const Real& lambda)
{
    auto [tri, m] = string_to_matrices(s);
    const std::size_t n = s.n();
    Vec phi(n + 1);
    phi[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        Real a_k = k + 1 < n ? tri.offdiag[k] : Real(1);
        Real back = k == 0 ? Real(0) : tri.offdiag[k - 1] * phi[k - 1];
        phi[k + 1] = ((lambda * m[k] - tri.diag[k]) * phi[k] - back) / a_k;
    }
    return phi;
}

namespace {

bool flag_degenerate(const Vec& lam)
{
    if (lam.size() < 2) return false;
    Real spread = lam.back() - lam.front();
    for (std::size_t k = 1; k < lam.size(); ++k)
        if (lam[k] - lam[k - 1] <= Real(1e-12) * spread || lam[k] == lam[k - 1]) return true;
    return false;
}

} // namespace

std::pair<SpectralData, EigenBasis> eigen_jacobi(const JacobiSystem& sys)
{
    const std::size_t n = sys.n();
    SpectralData sd;
    sd.kind = SystemKind::Jacobi;
    sd.scale = 1;
    sd.lambdas = tridiagonal_eigenvalues(sys.diag, sys.offdiag);
    sd.near_degenerate = flag_degenerate(sd.lambdas);
    EigenBasis basis{Matrix(n, n)};
    sd.rhos.resize(n);
    Real total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Vec phi = eval_poly_jacobi(sys, sd.lambdas[k]);
        Real rho = 0;
        for (std::size_t j = 0; j < n; ++j) {
            basis.vectors(j, k) = phi[j];
            rho += phi[j] * phi[j];
        }
        sd.rhos[k] = rho;
        total += 1 / rho;
    }
    if (abs(total - 1) > Real(1e-10))
        throw Error(ErrorCode::EigenFailure, "normalization sum 1/rho = " + format_real(total));
    return {sd, basis};
}

std::pair<Tridiagonal, Vec> string_to_matrices(const StieltjesString& s)
{
    const std::size_t n = s.n();
    Tridiagonal t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Real& li = s.lengths[i];
        const Real& lj = s.lengths[i + 1];
        t.diag[i] = -(li + lj) / (li * lj);
        if (i + 1 < n) t.offdiag[i] = 1 / lj;
    }
    return {t, s.masses};
}

std::pair<SpectralData, EigenBasis> eigen_string(const StieltjesString& s)
{
    const std::size_t n = s.n();
    auto [tri, m] = string_to_matrices(s);
    Vec dm(n), om(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) dm[i] = tri.diag[i] / m[i];
    for (std::size_t i = 0; i + 1 < n; ++i) om[i] = tri.offdiag[i] / sqrt(m[i] * m[i + 1]);

    SpectralData sd;
    sd.kind = SystemKind::String;
    sd.scale = s.lengths[0];
    sd.lambdas = tridiagonal_eigenvalues(dm, om);
    sd.near_degenerate = flag_degenerate(sd.lambdas);
    for (const auto& l : sd.lambdas)
        if (!(l < 0)) throw Error(ErrorCode::NotNegativeDefinite, "string eigenvalue " + format_real(l) + " >= 0");
    EigenBasis basis{Matrix(n, n)};
    sd.rhos.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec phi = eval_poly_string(s, sd.lambdas[k]);
        Real rho = 0;
        for (std::size_t j = 0; j < n; ++j) {
            basis.vectors(j, k) = phi[j];
            rho += m[j] * phi[j] * phi[j];
        }
        sd.rhos[k] = rho;
    }
    return {sd, basis};
}

Real spectral_function(const SpectralData& sd, const Real& lambda)
{
    Real s = 0;
    for (std::size_t k = 0; k < sd.n(); ++k)
        if (sd.lambdas[k] < lambda) s += 1 / sd.rhos[k];
    return s;
}

Matrix jacobi_matrix(const JacobiSystem& sys)
{
    const std::size_t n = sys.n();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = sys.diag[i];
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = sys.offdiag[i];
    }
    return a;
}

} // namespace bcinv
