#pragma once

#include "bcinv/dynamics.hpp"

#include <optional>

namespace bcinv {

struct MomentSequence {
    Vec values; // s_0..s_J
    Vec errors; // per-entry error estimates, empty when exact

    MomentSequence() = default;
    explicit MomentSequence(Vec s, Vec err = {});

    std::size_t order() const { return values.size() - 1; } // J
    bool normalized(const Real& tol = Real(1e-9)) const { return abs(values[0] - 1) <= tol; }
};

struct MomentOptions {
    std::optional<std::size_t> n_target;
    Real tol = Real(1e-20); // relative threshold on a_k^2
};

// Chebyshev algorithm: recurrence coefficients of the orthogonal polynomials
// of the moment functional.
JacobiSystem jacobi_from_moments(const MomentSequence& m, const MomentOptions& opt = {});

// s_j = r^{(2j+1)}(0), j < count, by Richardson-extrapolated central
// differences on the odd extension.
MomentSequence estimate_derivatives_at_zero(const SampledSignal& r, std::size_t count);

struct MomentsRoundtripReport {
    JacobiSystem recovered;
    Vec moments;
    Real max_abs_error = 0;
    Real max_rel_error = 0;
    Real amplification = 0; // |delta a_{N-1}| / eps after perturbing s_{2N-1}
};

MomentsRoundtripReport moments_roundtrip(const JacobiSystem& sys);

} // namespace bcinv
