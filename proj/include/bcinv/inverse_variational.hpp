#pragma once

#include "bcinv/bc_ops.hpp"

namespace bcinv {

struct FlatBasis {
    TimeGrid grid;
    std::size_t count = 0;
    std::vector<SampledSignal> functions;
    std::vector<SampledSignal> second_derivatives;
};

// psi_m(t) = sin^2(pi t/T) sin(m pi t/T), m = 1..M.
FlatBasis build_flat_basis(const TimeGrid& grid, std::size_t count);

enum class StiffnessAssembly {
    SecondDerivativeKernel, // (D psi_n, psi_m) with the r' kernel
    ApplyToSecondDerivative // (C psi_n'', psi_m)
};

struct VariationalOptions {
    Real gram_tol = Real(1e-24); // relative eigenvalue floor of G
    StiffnessAssembly assembly = StiffnessAssembly::SecondDerivativeKernel;
};

struct VariationalResult {
    SpectralData spectral;
    Vec kappas;          // (R f_k)(T) > 0
    Vec ritz_residuals;  // |K v - mu G v| / (|K| |v|)
    std::size_t gram_rank = 0;
    Real stiffness_asymmetry = 0; // |K - K^T| / |K| before symmetrization
    std::vector<SampledSignal> minimizers;
};

VariationalResult recover_spectrum_variational(const ConnectingOperator& C, const SampledSignal& r,
                                               const FlatBasis& basis, std::size_t n_target,
                                               const VariationalOptions& opt = {});

} // namespace bcinv
