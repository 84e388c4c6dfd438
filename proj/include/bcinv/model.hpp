#pragma once

#include "bcinv/linalg.hpp"
#include "bcinv/real.hpp"

#include <utility>

namespace bcinv {

enum class SystemKind { Jacobi, String };

const char* kind_name(SystemKind k);

struct JacobiSystem {
    Vec offdiag; // a_1..a_{N-1}, all > 0
    Vec diag;    // b_1..b_N

    JacobiSystem() = default;
    JacobiSystem(Vec a, Vec b); // validates

    std::size_t n() const { return diag.size(); }
};

struct StieltjesString {
    Vec lengths; // l_1..l_{N+1}
    Vec masses;  // m_1..m_N
    Real total_length = 0;

    StieltjesString() = default;
    StieltjesString(Vec l, Vec m); // validates

    std::size_t n() const { return masses.size(); }
};

struct SpectralData {
    SystemKind kind = SystemKind::Jacobi;
    Vec lambdas; // strictly increasing
    Vec rhos;
    Real scale = 1;             // l_1 for strings
    bool near_degenerate = false;

    std::size_t n() const { return lambdas.size(); }
    void validate() const;
};

// Column k holds phi(lambda_k), first row all ones.
struct EigenBasis {
    Matrix vectors;
};

struct Tridiagonal {
    Vec diag;
    Vec offdiag;
};

Vec eval_poly_jacobi(const JacobiSystem& sys, const Real& lambda);
Vec eval_poly_string(const StieltjesString& s, const Real& lambda);

std::pair<SpectralData, EigenBasis> eigen_jacobi(const JacobiSystem& sys);

std::pair<Tridiagonal, Vec> string_to_matrices(const StieltjesString& s);
std::pair<SpectralData, EigenBasis> eigen_string(const StieltjesString& s);

Real spectral_function(const SpectralData& sd, const Real& lambda);

// Dense A for a Jacobi system (tests, moments).
Matrix jacobi_matrix(const JacobiSystem& sys);

} // namespace bcinv
