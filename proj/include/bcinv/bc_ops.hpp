#pragma once

#include "bcinv/dynamics.hpp"

#include <memory>
#include <optional>

namespace bcinv {

// Symmetric (n+1) x (n+1) kernel matrix in one of three storage forms.
class KernelMatrix {
public:
    enum class Form { Dense, LowRank, HankelToeplitz };

    static KernelMatrix dense(Matrix k);
    // K = F diag(w) F^T, F is (n+1) x p.
    static KernelMatrix low_rank(Matrix factor, Vec weights);
    // K_ij = coeff * (g[2n-i-j] - g[|i-j|]), g has 2n+1 entries.
    static KernelMatrix hankel_toeplitz(Vec g, Real coeff);

    Form form() const { return form_; }
    std::size_t size() const { return n_; }
    Real entry(std::size_t i, std::size_t j) const;
    Vec column(std::size_t j) const;
    Vec diagonal() const;
    Vec apply(const Vec& x) const; // K x
    Matrix to_dense() const;

    const Matrix& factor() const { return factor_; }
    const Vec& factor_weights() const { return fw_; }

private:
    struct Spectra;
    Form form_ = Form::Dense;
    std::size_t n_ = 0;
    Matrix dense_;
    Matrix factor_;
    Vec fw_;
    Vec g_;
    Real coeff_ = 0;
    std::shared_ptr<const Spectra> spectra_;
};

enum class Provenance { Dynamic, Spectral };

struct ConnectingOperator {
    TimeGrid grid;
    SystemKind kind = SystemKind::Jacobi;
    Real scale = 1;
    Provenance provenance = Provenance::Spectral;
    KernelMatrix kernel;                // c(t_i, t_j)
    std::optional<KernelMatrix> second; // d^2/dt^2 c(t_i, t_j)

    // (C f)(t_i) = sum_j K_ij w_j f_j
    Vec apply(const Vec& f) const;
    Vec apply_second(const Vec& f) const;
    Real form(const Vec& f, const Vec& g) const; // (C f, g)
};

Real inner(const TimeGrid& g, const Vec& x, const Vec& y); // trapezoid (x, y)

// Kernel constant 1/(2 scale): 1/2 for Jacobi, 1/(2 l_1) for strings.
ConnectingOperator connecting_dynamic(const SampledSignal& r, const Real& scale, const TimeGrid& grid,
                                      SystemKind kind = SystemKind::Jacobi);
// Uses grid = first half of r's grid.
ConnectingOperator connecting_dynamic(const SampledSignal& r, const Real& scale,
                                      SystemKind kind = SystemKind::Jacobi);

ConnectingOperator connecting_spectral(const SpectralData& sd, const TimeGrid& grid);

struct RangeOptions {
    std::size_t max_rank = 64;
    std::size_t dense_eig_limit = 700; // full eigendecomposition for dense kernels up to this size
};

struct RangeSubspace {
    std::size_t rank = 0;
    Matrix basis;          // (n+1) x rank, orthonormal under the trapezoid product
    Vec singular_values;   // descending
    Vec resolved_values;   // all values found before truncation
    Real psd_defect = 0;   // most negative eigenvalue / sigma_1 (<= 0)
    bool exhausted = false; // hit max_rank with no decay

    Vec coords(const TimeGrid& g, const Vec& f) const;   // Q^T W f
    Vec from_coords(const Vec& alpha) const;             // Q alpha
};

RangeSubspace effective_range(const ConnectingOperator& C, const Real& rank_tol, const RangeOptions& opt = {});

SampledSignal solve_on_range(const ConnectingOperator& C, const RangeSubspace& sub, const SampledSignal& rhs,
                             const Real& range_tol = Real(1e-6));
// Coordinates of the solution, alpha with f = Q alpha.
Vec solve_on_range_coords(const ConnectingOperator& C, const RangeSubspace& sub, const Vec& rhs,
                          const Real& range_tol = Real(1e-6));

// Control steering the system to `target` at time T.
SampledSignal solve_control(const SpectralData& sd, const EigenBasis& basis, const Vec& target, const TimeGrid& grid,
                            const Real& cond_limit = Real(1e30));

// (C f)'' through the kernel r'(2T-t-s) - r'(|t-s|); r must cover [0, 2T].
SampledSignal ct_second_derivative(const SampledSignal& r, const SampledSignal& f, const Real& scale = Real(1));

// r(T - t_i) on the control grid.
Vec reversed_response(const SampledSignal& r, const TimeGrid& grid);

} // namespace bcinv
