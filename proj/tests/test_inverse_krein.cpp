#include "support.hpp"

using namespace testing;

namespace {

SampledSignal synth(const SpectralData& sd, const TimeGrid& control)
{
    return response_function(sd, control.doubled());
}

} // namespace

TEST_SUITE("inverse_krein") {

TEST_CASE("krein_first_control single mass")
{
    TimeGrid g(Real(1), 1024);
    SampledSignal r = synth(eigen_jacobi(jac({}, {0})).first, g);
    ConnectingOperator C = connecting_dynamic(r, Real(1), g);
    RangeSubspace sub = effective_range(C, Real(1e-24));
    SampledSignal f1 = krein_first_control(C, sub, r);
    for (std::size_t i = 0; i < g.size(); i += 32) CHECK(near(f1.values[i], 3 * (1 - g.point(i)), Real(1e-5)));
    CHECK(near(C.form(f1.values, f1.values), 1.0, 1e-10));
}

TEST_CASE("krein_first_control single-mass string")
{
    TimeGrid g(Real(1), 1024);
    SampledSignal r = synth(eigen_string(str({1, 1}, {1})).first, g);
    ConnectingOperator C = connecting_dynamic(r, Real(1), g, SystemKind::String);
    RangeSubspace sub = effective_range(C, Real(1e-24));
    SampledSignal f1 = krein_first_control(C, sub, r);
    const Real r2 = sqrt(Real(2));
    Real c = f1.values[0] / sin(r2);
    for (std::size_t i = 0; i < g.size(); i += 32) CHECK(near(f1.values[i], c * sin(r2 * (1 - g.point(i))), Real(1e-8)));
    CHECK(near(C.form(f1.values, f1.values), 1.0, 1e-10));
}

TEST_CASE("zero data is rejected")
{
    TimeGrid g(Real(1), 256);
    SampledSignal zero = signal(g.doubled(), [](const Real&) { return Real(0); });
    CHECK_THROWS_AS(reconstruct_jacobi_krein(zero), Error);
    ConnectingOperator C = connecting_spectral(eigen_jacobi(jac({}, {0})).first, g);
    RangeSubspace sub = effective_range(C, Real(1e-10));
    try {
        krein_first_control(C, sub, zero);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInRange);
    }
}

TEST_CASE("reconstruct_jacobi_krein examples")
{
    TimeGrid g1(Real(1), 512);
    JacobiKreinResult one = reconstruct_jacobi_krein(synth(eigen_jacobi(jac({}, {0})).first, g1));
    REQUIRE(one.system.n() == 1);
    CHECK(near(one.system.diag[0], 0.0, 1e-10));

    TimeGrid g(Real(1), 4096);
    SampledSignal r = signal(g.doubled(), [](const Real& t) { return (sinh(t) + sin(t)) / 2; });
    JacobiKreinResult e1 = reconstruct_jacobi_krein(r);
    REQUIRE(e1.system.n() == 2);
    CHECK(near(e1.system.offdiag[0], 1.0, 1e-4));
    CHECK(near(e1.system.diag[0], 0.0, 1e-4));
    CHECK(near(e1.system.diag[1], 0.0, 1e-4));
    CHECK(e1.diagnostics.orthogonality_error <= Real(1e-6));
}

TEST_CASE("seeded Jacobi round trips, both forms")
{
    TimeGrid g(Real(1), 2048);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        JacobiSystem sys = random_jacobi(seed, 1 + seed);
        auto sd = eigen_jacobi(sys).first;
        SampledSignal r = synth(sd, g);
        JacobiKreinResult rs = reconstruct_jacobi_krein(connecting_spectral(sd, g), r);
        CHECK(max_relative_error(rs.system, sys) <= Real(1e-8));
        JacobiKreinResult rd = reconstruct_jacobi_krein(r);
        CHECK(max_relative_error(rd.system, sys) <= Real(1e-6));
        for (const auto& a : rd.system.offdiag) CHECK(a > 0);
        CHECK(rd.diagnostics.orthogonality_error <= Real(1e-6));
        CHECK(near(rd.diagnostics.first_form, 1.0, 1e-6));
        CHECK(rd.state.controls.size() == sys.n());
    }
}

TEST_CASE("reconstruct_string_krein examples")
{
    TimeGrid g(Real(1), 4096);
    SampledSignal e4 = signal(g.doubled(), [](const Real& t) { return sin(sqrt(Real(2)) * t) / sqrt(Real(2)); });
    StringKreinResult s4 = reconstruct_string_krein(e4);
    REQUIRE(s4.string.n() == 1);
    CHECK(near(s4.string.lengths[0], 1.0, 1e-4));
    CHECK(near(s4.string.lengths[1], 1.0, 1e-4));
    CHECK(near(s4.string.masses[0], 1.0, 1e-4));

    const Real r3 = sqrt(Real(3));
    SampledSignal e5 = signal(g.doubled(), [r3](const Real& t) { return (sin(t) + sin(r3 * t) / r3) / 2; });
    StringKreinResult s5 = reconstruct_string_krein(e5);
    CHECK(max_relative_error(s5.string, str({1, 1, 1}, {1, 1})) <= Real(1e-3));
    CHECK(s5.coeff_residual <= Real(1e-3));
}

TEST_CASE("seeded string round trips")
{
    TimeGrid g(Real(1), 2048);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        StieltjesString s = random_string(seed, 1 + seed);
        auto sd = eigen_string(s).first;
        SampledSignal r = synth(sd, g);
        StringKreinResult rs = reconstruct_string_krein(connecting_spectral(sd, g), r);
        CHECK(max_relative_error(rs.string, s) <= Real(1e-6));
        CHECK(near(rs.diagnostics.first_form * s.masses[0], 1.0, 1e-6));
        // dynamic form in the true gauge
        StringKreinResult rd = reconstruct_string_krein(r, KreinOptions{}, sd.scale);
        CHECK(max_relative_error(rd.string, s) <= Real(1e-6));
        // gauge freedom: l -> c l, m -> m / c leaves r unchanged
        StringKreinResult unit = reconstruct_string_krein(r);
        CHECK(near(unit.string.lengths[0], 1.0, 1e-6));
        CHECK(near(unit.string.masses[0] * unit.string.lengths[0], s.masses[0] * s.lengths[0], Real(1e-6)));
    }
}

TEST_CASE("special controls")
{
    TimeGrid g(Real(1), 2048);
    auto [sd1, b1] = eigen_jacobi(jac({}, {0}));
    auto f1 = special_controls(sd1, b1, g);
    REQUIRE(f1.size() == 1);
    for (std::size_t i = 0; i < g.size(); i += 64) CHECK(near(f1[0].values[i], 3 * (1 - g.point(i)), Real(1e-6)));

    auto [sd2, b2] = eigen_jacobi(jac({1}, {0, 0}));
    auto f2 = special_controls(sd2, b2, g);
    Vec k1;
    for (std::size_t i = 0; i < g.size(); ++i) k1.push_back(kernel_S(g.horizon - g.point(i), sd2.lambdas[0]));
    CHECK(near(inner(g, f2[1].values, k1), -1.0, 1e-6));

    ConnectingOperator C = connecting_spectral(sd2, g);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(near(C.form(f2[i].values, f2[j].values), i == j ? 1.0 : 0.0, 1e-6));

    StieltjesString s = random_string(4, 3);
    auto [sds, bs] = eigen_string(s);
    auto fs = special_controls(sds, bs, g);
    ConnectingOperator Cs = connecting_spectral(sds, g);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(near(Cs.form(fs[i].values, fs[j].values), i == j ? Real(1) / s.masses[i] : Real(0), Real(1e-6)));
}

TEST_CASE("Krein controls coincide with the special controls")
{
    TimeGrid g(Real(1), 2048);
    JacobiSystem sys = random_jacobi(21, 3);
    auto [sd, basis] = eigen_jacobi(sys);
    JacobiKreinResult k = reconstruct_jacobi_krein(connecting_spectral(sd, g), synth(sd, g));
    auto sc = special_controls(sd, basis, g);
    for (std::size_t j = 0; j < 3; ++j) {
        Real e = sup_diff(k.state.controls[j].values, sc[j].values) / max_abs(sc[j].values);
        CHECK(e <= Real(1e-6));
    }
}

TEST_CASE("inadmissible data fails the recursion")
{
    TimeGrid g(Real(1), 1024);
    SpectralData bad{SystemKind::Jacobi, to_real({-1, 1}), to_real({1 / 1.5, -2}), 1, false};
    SampledSignal r = signal(g.doubled(), [&](const Real& t) {
        return kernel_S(t, bad.lambdas[0]) / bad.rhos[0] + kernel_S(t, bad.lambdas[1]) / bad.rhos[1];
    });
    CHECK_THROWS_AS(reconstruct_jacobi_krein(r), Error);
}

TEST_CASE("characterize_response examples")
{
    TimeGrid g(Real(1), 1024);
    const TimeGrid d = g.doubled();
    CharacterizationReport ok = characterize_response(signal(d, [](const Real& t) { return t; }), Real(1e-24),
                                                      SystemKind::Jacobi);
    CHECK(ok.admissible);
    CHECK(ok.detected_n == 1);
    REQUIRE(ok.fitted_spectral);
    CHECK(near(ok.fitted_spectral->lambdas[0], 0.0, 1e-8));
    CHECK(near(ok.fitted_spectral->rhos[0], 1.0, 1e-8));

    CharacterizationReport two = characterize_response(signal(d, [](const Real& t) { return 2 * t; }), Real(1e-24),
                                                       SystemKind::Jacobi);
    CHECK_FALSE(two.admissible);
    CHECK(two.has(Failure::NormalizationViolated));
    CHECK(near(two.normalization_sum, 2.0, 1e-8));

    CharacterizationReport sq = characterize_response(signal(d, [](const Real& t) { return t * t; }), Real(1e-24),
                                                      SystemKind::Jacobi);
    CHECK_FALSE(sq.admissible);
    CHECK(sq.has(Failure::FormMismatch));

    SpectralData neg{SystemKind::Jacobi, to_real({-1, 1}), to_real({1 / 1.5, -2}), 1, false};
    CharacterizationReport nw = characterize_response(signal(d, [&](const Real& t) {
        return kernel_S(t, neg.lambdas[0]) / neg.rhos[0] + kernel_S(t, neg.lambdas[1]) / neg.rhos[1];
    }), Real(1e-24), SystemKind::Jacobi);
    CHECK_FALSE(nw.admissible);
    CHECK(nw.has(Failure::FormMismatch));
}

TEST_CASE("characterize_response on synthesized data")
{
    TimeGrid g(Real(1), 2048);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        JacobiSystem sys = random_jacobi(seed, 1 + seed % 4);
        auto sd = eigen_jacobi(sys).first;
        CharacterizationReport rep = characterize_response(synth(sd, g), SystemKind::Jacobi);
        CHECK(rep.admissible);
        CHECK(rep.detected_n == sys.n());
        REQUIRE(rep.fitted_spectral);
        CHECK(max_relative_error(rep.fitted_spectral->lambdas, sd.lambdas) <= Real(1e-8));
    }
    StieltjesString s = random_string(2, 2);
    auto sds = eigen_string(s).first;
    CharacterizeOptions co;
    co.scale = sds.scale;
    CharacterizationReport rs = characterize_response(synth(sds, g), SystemKind::String, co);
    CHECK(rs.admissible);
    // a positive eigenvalue cannot come from a string
    CharacterizationReport rj = characterize_response(synth(eigen_jacobi(jac({1}, {0, 0})).first, g), SystemKind::String);
    CHECK_FALSE(rj.admissible);
}

} // TEST_SUITE
