#pragma once

#include "bcinv/characterization_suite.hpp"
#include "bcinv/error.hpp"
#include "bcinv/generate.hpp"

#include <doctest.h>

#include <functional>

namespace testing {

using namespace bcinv;

inline bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }
inline bool near(const Real& a, double b, double tol) { return abs(a - Real(b)) <= Real(tol); }

inline Real sup_diff(const Vec& a, const Vec& b)
{
    REQUIRE(a.size() == b.size());
    Real e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, Real(abs(a[i] - b[i])));
    return e;
}

inline Vec column_of(const Trajectory& tr, std::size_t k) { return tr.states.col(k); }

// Independent RK4 for S'' = lambda S, S(0) = 0, S'(0) = 1.
inline Real rk4_S(const Real& t, const Real& lambda, int steps = 2000)
{
    Real y = 0, v = 1, h = t / steps;
    for (int i = 0; i < steps; ++i) {
        Real k1y = v, k1v = lambda * y;
        Real k2y = v + h / 2 * k1v, k2v = lambda * (y + h / 2 * k1y);
        Real k3y = v + h / 2 * k2v, k3v = lambda * (y + h / 2 * k2y);
        Real k4y = v + h * k3v, k4v = lambda * (y + h * k3y);
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return y;
}

inline JacobiSystem jac(std::vector<double> a, std::vector<double> b) { return JacobiSystem(to_real(a), to_real(b)); }
inline StieltjesString str(std::vector<double> l, std::vector<double> m)
{
    return StieltjesString(to_real(l), to_real(m));
}

inline SampledSignal signal(const TimeGrid& g, const std::function<Real(const Real&)>& f) { return sample(g, f); }

} // namespace testing
