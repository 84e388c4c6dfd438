#include "support.hpp"

using namespace testing;

namespace {

Vec dense_apply(const KernelMatrix& k, const Vec& x)
{
    Vec y(k.size(), Real(0));
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j) y[i] += k.entry(i, j) * x[j];
    return y;
}

} // namespace

TEST_SUITE("bc_ops") {

TEST_CASE("kernel storage forms apply consistently")
{
    SplitMix64 rng(9);
    const std::size_t n = 40;
    Vec g(2 * n + 1), x(n + 1);
    for (auto& v : g) v = Real(rng.uniform(-1, 1));
    for (auto& v : x) v = Real(rng.uniform(-1, 1));
    KernelMatrix ht = KernelMatrix::hankel_toeplitz(g, Real(0.5));
    CHECK(near(ht.entry(3, 5), Real(0.5) * (g[2 * n - 8] - g[2]), Real(0)));
    CHECK(sup_diff(ht.apply(x), dense_apply(ht, x)) < Real(1e-30));
    KernelMatrix d = KernelMatrix::dense(ht.to_dense());
    CHECK(sup_diff(d.apply(x), ht.apply(x)) < Real(1e-30));

    Matrix F(n + 1, 3);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < 3; ++k) F(i, k) = Real(rng.uniform(-1, 1));
    KernelMatrix lr = KernelMatrix::low_rank(F, to_real({1, 2, 3}));
    CHECK(sup_diff(lr.apply(x), dense_apply(lr, x)) < Real(1e-30));
    CHECK(sup_diff(lr.diagonal(), KernelMatrix::dense(lr.to_dense()).diagonal()) < Real(1e-30));
}

TEST_CASE("connecting_dynamic for r = t")
{
    TimeGrid g(Real(1), 256);
    SampledSignal r = response_function(eigen_jacobi(jac({}, {0})).first, g.doubled());
    ConnectingOperator C = connecting_dynamic(r, Real(1), g);
    CHECK(near(C.kernel.entry(0, 0), 1.0, 1e-28));
    for (std::size_t i = 0; i < g.size(); i += 17)
        for (std::size_t j = 0; j < g.size(); j += 13) {
            Real t = g.point(i), s = g.point(j);
            CHECK(near(C.kernel.entry(i, j), (1 - s) * (1 - t), Real(1e-28)));
            CHECK(near(C.kernel.entry(256, j), 0.0, 1e-28));
        }
    CHECK_THROWS_AS(connecting_dynamic(r.truncated(300), Real(1), g), Error);
    try {
        connecting_dynamic(r.truncated(300), Real(1), g);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientHorizon);
    }
}

TEST_CASE("dynamic and spectral forms agree")
{
    TimeGrid g(Real(1), 2048);
    auto [sd, basis] = eigen_jacobi(jac({1}, {0, 0}));
    SampledSignal r = response_function(sd, g.doubled());
    ConnectingOperator Cd = connecting_dynamic(r, Real(1), g);
    ConnectingOperator Cs = connecting_spectral(sd, g);
    Real e = 0;
    for (std::size_t i = 0; i < g.size(); i += 8)
        for (std::size_t j = 0; j < g.size(); j += 8) e = std::max(e, Real(abs(Cd.kernel.entry(i, j) - Cs.kernel.entry(i, j))));
    CHECK(e <= Real(1e-6));
}

TEST_CASE("connecting_spectral examples")
{
    TimeGrid g(Real(1), 64);
    ConnectingOperator C1 = connecting_spectral(eigen_jacobi(jac({}, {0})).first, g);
    ConnectingOperator C2 = connecting_spectral(eigen_jacobi(jac({1}, {0, 0})).first, g);
    ConnectingOperator C3 = connecting_spectral(eigen_string(str({1, 1}, {1})).first, g);
    // closed form evaluates to 1.0445856
    CHECK(near(C2.kernel.entry(0, 0), 1.0445856, 1e-7));
    CHECK(near(C2.kernel.entry(0, 0), (sinh(Real(1)) * sinh(Real(1)) + sin(Real(1)) * sin(Real(1))) / 2, Real(1e-30)));
    const Real r2 = sqrt(Real(2));
    for (std::size_t i = 0; i < g.size(); i += 7)
        for (std::size_t j = 0; j < g.size(); j += 5) {
            Real t = g.point(i), s = g.point(j);
            CHECK(near(C1.kernel.entry(i, j), (1 - t) * (1 - s), Real(1e-30)));
            CHECK(near(C3.kernel.entry(i, j), sin(r2 * (1 - t)) * sin(r2 * (1 - s)) / 2, Real(1e-30)));
        }
}

TEST_CASE("kernel invariants on seeded systems")
{
    TimeGrid g(Real(1), 300);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        SampledSignal r = response_function(eigen_jacobi(random_jacobi(seed, 3)).first, g.doubled());
        ConnectingOperator C = connecting_dynamic(r, Real(1), g);
        Matrix K = C.kernel.to_dense();
        Real kmax = max_abs(K.data()), asym = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) asym = std::max(asym, Real(abs(K(i, j) - K(j, i))));
        CHECK(asym <= Real(1e-12) * kmax);
        // W^1/2 K W^1/2 PSD
        Matrix B(g.size(), g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) B(i, j) = sqrt(g.weight(i)) * K(i, j) * sqrt(g.weight(j));
        SymEig e = symmetric_eigen(B);
        CHECK(e.values.front() >= Real(-1e-9) * e.values.back());

        RangeSubspace sub = effective_range(C, Real(1e-24));
        CHECK(sub.rank == 3);
        for (std::size_t a = 0; a < sub.rank; ++a) {
            Vec qa = sub.basis.col(a);
            CHECK(abs(qa.back()) <= Real(1e-6) * max_abs(qa));
            for (std::size_t b = 0; b <= a; ++b)
                CHECK(near(inner(g, qa, sub.basis.col(b)), a == b ? 1.0 : 0.0, 1e-10));
        }
    }
}

TEST_CASE("effective_range examples")
{
    TimeGrid g(Real(1), 512);
    ConnectingOperator C1 = connecting_spectral(eigen_jacobi(jac({}, {0})).first, g);
    RangeSubspace s1 = effective_range(C1, Real(1e-10));
    CHECK(s1.rank == 1);
    Vec q = s1.basis.col(0);
    Real ratio = q[0]; // q = ratio * (1 - t)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(near(q[i], ratio * (1 - g.point(i)), Real(1e-28)));

    JacobiSystem s3 = random_jacobi(42, 3);
    auto sd3 = eigen_jacobi(s3).first;
    RangeSubspace r3 = effective_range(connecting_spectral(sd3, g), Real(1e-10));
    CHECK(r3.rank == 3);
    RangeSubspace r3d = effective_range(connecting_dynamic(response_function(sd3, g.doubled()), Real(1), g), Real(1e-10));
    CHECK(r3d.rank == 3);

    CHECK_THROWS_AS(effective_range(C1, Real(0)), Error);
    CHECK_THROWS_AS(effective_range(C1, Real(1)), Error);
    SampledSignal zero = signal(g.doubled(), [](const Real&) { return Real(0); });
    try {
        effective_range(connecting_dynamic(zero, Real(1), g), Real(1e-10));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroOperator);
    }
}

TEST_CASE("effective_range under kernel noise")
{
    // a horizon long enough that sigma_2 sits well above the perturbation
    TimeGrid g(Real(3.5), 256);
    JacobiSystem sys = random_jacobi(7, 2);
    ConnectingOperator C = connecting_spectral(eigen_jacobi(sys).first, g);
    Matrix K = C.kernel.to_dense();
    const Real kmax = max_abs(K.data());
    SplitMix64 rng(1234);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) K(i, j) = K(j, i) = K(i, j) + Real(1e-3 * rng.normal()) * kmax;
    ConnectingOperator noisy = C;
    noisy.kernel = KernelMatrix::dense(K);
    RangeSubspace sub = effective_range(noisy, Real(1e-2));
    CHECK(sub.rank == 2);
    CHECK(sub.psd_defect <= 0);
}

TEST_CASE("solve_on_range examples")
{
    TimeGrid g(Real(1), 1024);
    ConnectingOperator C = connecting_spectral(eigen_jacobi(jac({}, {0})).first, g);
    RangeSubspace sub = effective_range(C, Real(1e-10));
    SampledSignal rhs = signal(g, [](const Real& t) { return 1 - t; });
    SampledSignal f = solve_on_range(C, sub, rhs);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(near(f.values[i], 3 * (1 - g.point(i)), Real(1e-5)));
    SampledSignal zero = signal(g, [](const Real&) { return Real(0); });
    CHECK(max_abs(solve_on_range(C, sub, zero).values) == 0);
    SampledSignal off = signal(g, [](const Real&) { return Real(1); });
    try {
        solve_on_range(C, sub, off);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInRange);
    }

    auto sd2 = eigen_jacobi(jac({1}, {0, 0})).first;
    ConnectingOperator C2 = connecting_spectral(sd2, g);
    RangeSubspace sub2 = effective_range(C2, Real(1e-24));
    SampledSignal col(g, C2.kernel.column(256));
    SampledSignal f2 = solve_on_range(C2, sub2, col);
    CHECK(sup_diff(C2.apply(f2.values), col.values) <= Real(1e-8));
}

TEST_CASE("solve_control examples")
{
    TimeGrid g(Real(1), 2048);
    auto [sd1, b1] = eigen_jacobi(jac({}, {0}));
    CHECK(max_abs(solve_control(sd1, b1, to_real({0}), g).values) == 0);
    SampledSignal f = solve_control(sd1, b1, to_real({1}), g);
    for (std::size_t i = 0; i < g.size(); i += 64) CHECK(near(f.values[i], 3 * (1 - g.point(i)), Real(1e-6)));
    CHECK(near(forward_spectral(sd1, b1, f).states(2048, 0), 1.0, 1e-6));

    auto [sd2, b2] = eigen_jacobi(jac({1}, {0, 0}));
    Vec phi1 = b2.vectors.col(0);
    SampledSignal f2 = solve_control(sd2, b2, phi1, g);
    Trajectory tr = forward_spectral(sd2, b2, f2);
    CHECK(near(tr.states(2048, 0), phi1[0], Real(1e-6)));
    CHECK(near(tr.states(2048, 1), phi1[1], Real(1e-6)));

    auto [sd3, b3] = eigen_jacobi(random_jacobi(3, 3));
    try {
        solve_control(sd3, b3, to_real({1, 0, 0}), g, Real(10));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllConditionedGram);
    }
}

TEST_CASE("ct_second_derivative")
{
    TimeGrid g(Real(1), 1024);
    SampledSignal r1 = response_function(eigen_jacobi(jac({}, {0})).first, g.doubled());
    SampledSignal f = signal(g, [](const Real& t) { return cos(2 * t) + t * t; });
    CHECK(max_abs(ct_second_derivative(r1, f).values) <= Real(1e-25));

    auto sd = eigen_jacobi(random_jacobi(8, 2)).first;
    SampledSignal r = response_function(sd, g.doubled());
    ConnectingOperator Cs = connecting_spectral(sd, g);
    Vec cf = Cs.apply(f.values);
    Vec d2 = ct_second_derivative(r, f).values;
    const Real h = g.step();
    Real e = 0;
    for (std::size_t i = 8; i + 8 < g.size(); ++i) e = std::max(e, Real(abs((cf[i + 1] - 2 * cf[i] + cf[i - 1]) / (h * h) - d2[i])));
    CHECK(e <= Real(1e-4));

    SampledSignal gsig = signal(g, [](const Real& t) { return exp(-t) * sin(7 * t); });
    Real lhs = inner(g, ct_second_derivative(r, f).values, gsig.values);
    Real rhs = inner(g, f.values, ct_second_derivative(r, gsig).values);
    CHECK(abs(lhs - rhs) <= Real(1e-8));

    CHECK_THROWS_AS(ct_second_derivative(r.truncated(1500), f), Error);
}

} // TEST_SUITE
