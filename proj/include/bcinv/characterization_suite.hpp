#pragma once

#include "bcinv/inverse_krein.hpp"
#include "bcinv/inverse_moments.hpp"
#include "bcinv/inverse_variational.hpp"

#include <optional>
#include <string>

namespace bcinv {

struct MethodOutcome {
    std::string name;
    std::optional<JacobiSystem> recovered;
    std::optional<SpectralData> spectral;
    std::string error; // empty on success
    Real max_rel_error = -1;
    double wall_seconds = 0;
};

struct CompareOptions {
    KreinOptions krein;
    std::size_t variational_per_mode = 8; // M = 8 N
    std::size_t derivative_count = 4;
    CharacterizeOptions characterize;
};

struct MethodComparison {
    JacobiSystem truth;
    TimeGrid grid;
    std::vector<MethodOutcome> methods;
    CharacterizationReport characterization;
};

// Max relative entrywise error, absolute where the reference entry is zero.
Real max_relative_error(const JacobiSystem& got, const JacobiSystem& want);
Real max_relative_error(const StieltjesString& got, const StieltjesString& want);
Real max_relative_error(const Vec& got, const Vec& want);

// Matrix completion of spectral data through the moments of its measure.
JacobiSystem complete_from_spectral(const SpectralData& sd, std::size_t n);

MethodComparison compare_methods(const JacobiSystem& sys, const TimeGrid& grid, const CompareOptions& opt = {});

struct CertifyOptions {
    CharacterizeOptions characterize;
    KreinOptions krein;
};

// characterize_response plus reconstruction and re-synthesis: |r - r~|_sup <= tol.
CharacterizationReport certify(const SampledSignal& r, SystemKind kind, const Real& tol,
                               const CertifyOptions& opt = {});

} // namespace bcinv
