#pragma once

#include "bcinv/linalg.hpp"
#include "bcinv/model.hpp"

#include <functional>

namespace bcinv {

struct TimeGrid {
    Real horizon = 1;
    std::size_t steps = 2048;

    TimeGrid() = default;
    TimeGrid(Real T, std::size_t n); // validates

    std::size_t size() const { return steps + 1; }
    Real step() const { return horizon / steps; }
    Real point(std::size_t i) const { return i == steps ? horizon : horizon * Real(i) / Real(steps); }
    Real weight(std::size_t i) const { return (i == 0 || i == steps) ? step() / 2 : step(); }
    Vec points() const;
    Vec weights() const;

    // Same step, twice the horizon.
    TimeGrid doubled() const { return TimeGrid(2 * horizon, 2 * steps); }

    bool operator==(const TimeGrid& o) const { return steps == o.steps && horizon == o.horizon; }
    bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

struct SampledSignal {
    TimeGrid grid;
    Vec values;

    SampledSignal() = default;
    SampledSignal(TimeGrid g, Vec v); // validates length

    // First m+1 samples, as a signal on [0, m h].
    SampledSignal truncated(std::size_t m) const;
};

SampledSignal sample(const TimeGrid& g, const std::function<Real(const Real&)>& fn);

struct Trajectory {
    TimeGrid grid;
    Matrix states; // (n_t+1) x N, row i = u(t_i)
};

Real kernel_S(const Real& t, const Real& lambda);
// C = dS/dt, so S(t - s) = S(t) C(s) - C(t) S(s).
Real kernel_C(const Real& t, const Real& lambda);

Trajectory forward_spectral(const SpectralData& sd, const EigenBasis& basis, const SampledSignal& f);

Trajectory forward_ode_oracle(const JacobiSystem& sys, const SampledSignal& f);
Trajectory forward_ode_oracle(const StieltjesString& s, const SampledSignal& f);

SampledSignal response_function(const SpectralData& sd, const TimeGrid& grid);

// (R f)(t_i) = trapezoid of r(t_i - s) f(s) over [0, t_i].  r may live on a
// longer grid with the same step.
SampledSignal apply_response(const SampledSignal& r, const SampledSignal& f);
// Only the value at t = horizon(f).
Real apply_response_at_end(const SampledSignal& r, const SampledSignal& f);

Vec moments_from_spectral(const SpectralData& sd, std::size_t j_max);

} // namespace bcinv
