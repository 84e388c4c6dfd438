#pragma once

#include "bcinv/bc_ops.hpp"

#include <optional>
#include <string>

namespace bcinv {

struct KreinOptions {
    Real rank_tol = Real(1e-24);
    Real term_tol = Real(1e-6);
    Real range_tol = Real(1e-6);
    // Residual tolerated when the recursion is stopped by the rank cap.
    Real cap_residual_tol = Real(1e-3);
    RangeOptions range;
};

struct KreinState {
    std::vector<SampledSignal> controls; // f^1..f^k
    std::vector<SampledSignal> images;   // C f^j
    Vec recovered_a;
    Vec recovered_b;
    Vec recovered_m; // strings only
};

struct KreinDiagnostics {
    std::size_t detected_rank = 0;
    Vec singular_values;
    Real first_form = 0;          // (C f^1, f^1)
    Real orthogonality_error = 0; // max |(C f^i, f^j) - delta_ij (/ m_i)|
    Real symmetry_error = 0;      // b-symmetry / alternate a_k mismatch, relative
    Real termination_residual = 0;
    bool stopped_by_rank = false;
    Vec residual_history; // relative |h^{k+1}| per step
};

struct JacobiKreinResult {
    JacobiSystem system;
    KreinState state;
    KreinDiagnostics diagnostics;
};

struct StringKreinResult {
    StieltjesString string;
    KreinState state;
    KreinDiagnostics diagnostics;
    Real coeff_residual = 0; // InconsistentB measure
};

SampledSignal krein_first_control(const ConnectingOperator& C, const RangeSubspace& sub, const SampledSignal& r,
                                  const Real& range_tol = Real(1e-6));

JacobiKreinResult reconstruct_jacobi_krein(const ConnectingOperator& C, const SampledSignal& r,
                                           const KreinOptions& opt = {});
// r on [0, 2T]; dynamic-form operator.
JacobiKreinResult reconstruct_jacobi_krein(const SampledSignal& r, const KreinOptions& opt = {});

StringKreinResult reconstruct_string_krein(const ConnectingOperator& C, const SampledSignal& r,
                                           const KreinOptions& opt = {});
// r on [0, 2T]; dynamic-form operator built with the given l_1 (r does not
// determine it: (l, m) -> (c l, m / c) leaves r unchanged).
StringKreinResult reconstruct_string_krein(const SampledSignal& r, const KreinOptions& opt = {},
                                           const Real& scale = Real(1));

std::vector<SampledSignal> special_controls(const SpectralData& sd, const EigenBasis& basis, const TimeGrid& grid);

enum class Failure { FormMismatch, NormalizationViolated, RankDeficient, NotIsomorphic, RoundTripMismatch };
const char* failure_name(Failure f);

struct CharacterizationReport {
    bool admissible = false;
    std::size_t detected_n = 0;
    std::optional<SpectralData> fitted_spectral;
    std::vector<Failure> failures;
    std::vector<std::string> notes;

    // diagnostics
    Vec singular_values;
    Vec fitted_weights; // coefficients of S(t, lambda_k)
    Real fit_residual = 0;
    Real normalization_sum = 0;
    Real psd_defect = 0;
    Real odd_defect = 0;
    std::optional<Real> roundtrip_error;

    bool has(Failure f) const;
};

struct CharacterizeOptions {
    Real rank_tol = Real(1e-24);
    Real fit_tol = Real(1e-6);
    Real normalization_tol = Real(1e-6);
    Real psd_tol = Real(1e-9);
    Real odd_tol = Real(1e-6);
    Real scale = 1; // l_1 gauge for strings
    RangeOptions range;
};

CharacterizationReport characterize_response(const SampledSignal& r, SystemKind kind,
                                             const CharacterizeOptions& opt = {});
inline CharacterizationReport characterize_response(const SampledSignal& r, const Real& rank_tol, SystemKind kind)
{
    CharacterizeOptions o;
    o.rank_tol = rank_tol;
    return characterize_response(r, kind, o);
}

} // namespace bcinv
