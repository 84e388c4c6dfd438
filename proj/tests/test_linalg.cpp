#include "support.hpp"

#include "bcinv/stencil.hpp"

using namespace testing;

TEST_SUITE("linalg") {

TEST_CASE("tridiagonal eigenvalues vs characteristic polynomial roots")
{
    // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2
    Vec ev = tridiagonal_eigenvalues(to_real({2, 2, 2}), to_real({1, 1}));
    REQUIRE(ev.size() == 3);
    CHECK(near(ev[0], 2 - sqrt(Real(2)), Real(1e-30)));
    CHECK(near(ev[1], 2.0, 1e-30));
    CHECK(near(ev[2], 2 + sqrt(Real(2)), Real(1e-30)));
}

TEST_CASE("symmetric eigensolvers agree and reconstruct")
{
    SplitMix64 rng(3);
    const std::size_t n = 7;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = Real(rng.uniform(-1, 1));
    SymEig e1 = symmetric_eigen(a), e2 = symmetric_eigen_jacobi(a);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(near(e1.values[k], e2.values[k], Real(1e-30)));
        Vec v = e1.vectors.col(k);
        Vec av = a * v;
        for (std::size_t i = 0; i < n; ++i) CHECK(near(av[i], e1.values[k] * v[i], Real(1e-30)));
    }
}

TEST_CASE("jacobi svd")
{
    SplitMix64 rng(4);
    Matrix a(6, 3);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = Real(rng.uniform(-1, 1));
    Svd s = jacobi_svd(a);
    CHECK(s.s[0] >= s.s[1]);
    CHECK(s.s[1] >= s.s[2]);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            Real x = 0;
            for (std::size_t k = 0; k < 3; ++k) x += s.u(i, k) * s.s[k] * s.v(j, k);
            CHECK(near(x, a(i, j), Real(1e-30)));
        }
}

TEST_CASE("linear and least squares solves")
{
    Matrix a(2, 2);
    a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 3;
    Vec x = solve_linear(a, to_real({3, 5}));
    CHECK(near(x[0], Real(8) / 10, Real(1e-30)));
    CHECK(near(x[1], Real(14) / 10, Real(1e-30)));
    Matrix s(2, 2);
    CHECK_THROWS_AS(solve_linear(s, to_real({1, 1})), Error);

    // fit y = 1 + 2 t exactly
    Matrix m(4, 2);
    Vec y;
    for (int i = 0; i < 4; ++i) {
        m(i, 0) = 1;
        m(i, 1) = i;
        y.push_back(Real(1 + 2 * i));
    }
    Vec c = least_squares(m, y);
    CHECK(near(c[0], 1.0, 1e-30));
    CHECK(near(c[1], 2.0, 1e-30));
}

TEST_CASE("stencils integrate and differentiate odd signals")
{
    const std::size_t n = 200;
    const Real h = Real(1) / n;
    Vec r;
    for (std::size_t i = 0; i <= n; ++i) r.push_back(sin(h * i));
    Vec R = cumulative_integral_odd(r, h);
    Vec d = derivative_odd(r, h);
    Real ei = 0, ed = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        ei = std::max(ei, Real(abs(R[i] - (1 - cos(h * i)))));
        ed = std::max(ed, Real(abs(d[i] - cos(h * i))));
    }
    CHECK(ei < Real(1e-25));
    CHECK(ed < Real(1e-20));
    CHECK(near(one_sided_derivative_end(r, h), cos(Real(1)), Real(1e-9)));
    CHECK(near(one_sided_second_derivative_start(r, h), 0.0, 1e-8));
}

} // TEST_SUITE
