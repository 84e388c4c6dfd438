#include "support.hpp"

using namespace testing;

TEST_SUITE("characterization_suite") {

TEST_CASE("max_relative_error")
{
    CHECK(near(max_relative_error(to_real({1, 0}), to_real({2, 0})), 0.5, 0));
    CHECK(near(max_relative_error(to_real({1, 0.25}), to_real({1, 0})), 0.25, 0));
    CHECK_FALSE(max_relative_error(to_real({1}), to_real({1, 2})) < Real(1e300));
}

TEST_CASE("compare_methods single mass")
{
    MethodComparison mc = compare_methods(jac({}, {0}), TimeGrid(Real(1), 1024));
    REQUIRE(mc.methods.size() == 4);
    for (const auto& m : mc.methods) {
        INFO(m.name << " " << m.error);
        CHECK(m.error.empty());
        CHECK(m.max_rel_error <= Real(1e-8));
        CHECK(m.max_rel_error >= 0);
    }
    CHECK(mc.characterization.admissible);
}

TEST_CASE("compare_methods E1")
{
    MethodComparison mc = compare_methods(jac({1}, {0, 0}), TimeGrid(Real(1), 2048));
    auto get = [&](const std::string& n) {
        for (const auto& m : mc.methods)
            if (m.name == n) return m;
        FAIL("missing method " << n);
        return MethodOutcome{};
    };
    CHECK(get("krein").max_rel_error <= Real(1e-4));
    CHECK(get("moments_spectral").max_rel_error <= Real(1e-8));
    CHECK(get("variational").max_rel_error <= Real(1e-2));
    REQUIRE(get("variational").spectral);
}

TEST_CASE("compare_methods N=5 seeded")
{
    MethodComparison mc = compare_methods(random_jacobi(7, 5), TimeGrid(Real(1), 4096));
    REQUIRE(mc.methods.size() == 4);
    for (const auto& m : mc.methods) CHECK((m.recovered.has_value() || !m.error.empty()));
    CHECK(mc.methods[0].name == "krein");
    CHECK(mc.methods[0].max_rel_error <= Real(1e-3));
}

TEST_CASE("methods agree pairwise on the spectrum")
{
    TimeGrid g(Real(1), 2048);
    JacobiSystem sys = random_jacobi(12, 3);
    MethodComparison mc = compare_methods(sys, g);
    Vec ref = eigen_jacobi(sys).first.lambdas;
    for (const auto& m : mc.methods) {
        if (m.name == "moments_derivative") continue; // ill-conditioned by design
        REQUIRE(m.recovered);
        CHECK(max_relative_error(eigen_jacobi(*m.recovered).first.lambdas, ref) <= Real(1e-2));
    }
    Vec krein = eigen_jacobi(*mc.methods[0].recovered).first.lambdas;
    Vec moments = eigen_jacobi(*mc.methods[1].recovered).first.lambdas;
    CHECK(max_relative_error(krein, moments) <= Real(1e-6));
}

TEST_CASE("certify")
{
    TimeGrid g(Real(1), 2048);
    SampledSignal r = response_function(eigen_jacobi(random_jacobi(5, 2)).first, g.doubled());
    CharacterizationReport rep = certify(r, SystemKind::Jacobi, Real(1e-5));
    CHECK(rep.admissible);
    REQUIRE(rep.roundtrip_error);
    CHECK(*rep.roundtrip_error <= Real(1e-5));

    // idempotent on the re-synthesized signal
    JacobiKreinResult k = reconstruct_jacobi_krein(r);
    SampledSignal rt = response_function(eigen_jacobi(k.system).first, g.doubled());
    CHECK(certify(rt, SystemKind::Jacobi, Real(1e-5)).admissible);

    SampledSignal two = signal(g.doubled(), [](const Real& t) { return 2 * t; });
    CharacterizationReport bad = certify(two, SystemKind::Jacobi, Real(1e-5));
    CHECK_FALSE(bad.admissible);
    CHECK(bad.has(Failure::NormalizationViolated));
    CHECK_FALSE(bad.roundtrip_error.has_value());

    SampledSignal neg = signal(g.doubled(), [](const Real& t) {
        return Real(1.5) * kernel_S(t, Real(-1)) - Real(0.5) * kernel_S(t, Real(1));
    });
    CharacterizationReport nr = certify(neg, SystemKind::Jacobi, Real(1e-5));
    CHECK(nr.has(Failure::FormMismatch));
}

TEST_CASE("certify strings")
{
    TimeGrid g(Real(1), 2048);
    StieltjesString s = random_string(3, 3);
    auto sd = eigen_string(s).first;
    CertifyOptions opt;
    opt.characterize.scale = sd.scale;
    CharacterizationReport rep = certify(response_function(sd, g.doubled()), SystemKind::String, Real(1e-5), opt);
    CHECK(rep.admissible);
}

} // TEST_SUITE
